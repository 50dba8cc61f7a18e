#pragma once

// Everything the command-line front end does, in library form so the tests
// can drive it in-process: flat key=value configs, calibration persistence,
// and the run-to-CSV entry point with its exit-code policy.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "blab/harness.hpp"

namespace blab::cli {

struct RunConfig {
    std::string experiment_id;
    std::map<std::string, std::string> overrides;
    std::string output_path;  // empty: "<experiment_id>.csv"
    std::string format = "csv";
    std::string calibration_path = "calibration.txt";
    unsigned long long seed = 0;
    bool seed_set = false;
};

struct RunOutcome {
    int exit_code = 2;  // 0 pass, 1 fail, 2 configuration/setup error
    std::string table;
    std::string summary;
    EquivalenceReport report;
};

// Flat key=value text; '#' starts a comment. Unknown keys and malformed
// values throw std::invalid_argument.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> parse_config_file(const std::string& path);
void apply_overrides(const std::map<std::string, std::string>& kv, SweepSpec& sweep,
                     QuadConfig& quad, double& threshold,
                     unsigned long long& seed);

bool load_calibration(const std::string& path, Calibration& cal);
std::string calibration_text(const std::map<double, complexd>& entries);
int run_calibrate(const std::vector<double>& alphas, const std::string& path,
                  const QuadConfig& cfg, std::ostream& log);

std::string list_text();

// Executes the experiment without touching the filesystem (the caller writes
// outcome.table to the output path).
RunOutcome run_experiment(const RunConfig& rc, std::ostream& log);

}  // namespace blab::cli
