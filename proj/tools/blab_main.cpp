// Command-line front end: list experiments, calibrate the kernel constants,
// and run experiments to CSV.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "blab/cli_support.hpp"
#include "blab/parallel.hpp"

int main(int argc, char** argv) {
    blab::apply_thread_cap_from_env();

    CLI::App app{"blab: numerical laboratory for logarithmically weighted "
                 "Bergman spaces on the upper half-plane"};
    app.require_subcommand(1);

    auto* list_cmd = app.add_subcommand("list", "list experiments");

    std::string alphas_arg = "0,1";
    std::string cal_path = "calibration.txt";
    double cal_rel = 1e-6;
    auto* cal_cmd = app.add_subcommand("calibrate", "calibrate kernel constants");
    cal_cmd->add_option("--alphas", alphas_arg, "comma list of kernel orders");
    cal_cmd->add_option("--out", cal_path, "calibration file path");
    cal_cmd->add_option("--rel-tol", cal_rel, "quadrature relative tolerance");

    blab::cli::RunConfig rc;
    std::string config_path;
    long long seed_arg = -1;
    auto* run_cmd = app.add_subcommand("run", "run one experiment");
    run_cmd->add_option("experiment_id", rc.experiment_id, "experiment id")
        ->required();
    run_cmd->add_option("--config", config_path, "flat key=value config file");
    run_cmd->add_option("--out", rc.output_path, "output table path");
    run_cmd->add_option("--seed", seed_arg, "random seed");
    run_cmd->add_option("--format", rc.format, "csv or tsv")
        ->check(CLI::IsMember({"csv", "tsv"}));
    run_cmd->add_option("--calibration", rc.calibration_path, "calibration file");

    CLI11_PARSE(app, argc, argv);

    if (list_cmd->parsed()) {
        std::cout << blab::cli::list_text();
        return 0;
    }

    if (cal_cmd->parsed()) {
        std::vector<double> alphas;
        try {
            std::stringstream ss(alphas_arg);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) alphas.push_back(std::stod(item));
            if (alphas.empty()) throw std::invalid_argument("empty alpha list");
        } catch (...) {
            std::cerr << "bad --alphas list\n";
            return 2;
        }
        blab::QuadConfig cfg;
        cfg.rel_tol = cal_rel;
        cfg.abs_tol = 1e-12;
        try {
            cfg.validate();
        } catch (const std::exception& e) {
            std::cerr << "configuration error: " << e.what() << "\n";
            return 2;
        }
        return blab::cli::run_calibrate(alphas, cal_path, cfg, std::cout);
    }

    // run
    if (seed_arg >= 0) {
        rc.seed = (unsigned long long)seed_arg;
        rc.seed_set = true;
    }
    if (!config_path.empty()) {
        try {
            rc.overrides = blab::cli::parse_config_file(config_path);
        } catch (const std::exception& e) {
            std::cerr << "configuration error: " << e.what() << "\n";
            return 2;
        }
    }
    blab::cli::RunOutcome outcome = blab::cli::run_experiment(rc, std::cerr);
    if (outcome.exit_code == 2) return 2;

    const std::string path =
        rc.output_path.empty() ? rc.experiment_id + (rc.format == "tsv" ? ".tsv" : ".csv")
                               : rc.output_path;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write output file: " << path << "\n";
        return 2;
    }
    out << outcome.table;
    out.close();

    std::cout << outcome.summary << "\n";
    return outcome.exit_code;
}
