#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "blab/cli_support.hpp"

using namespace blab;
using namespace blab::cli;

namespace {

RunConfig theta_run() {
    RunConfig rc;
    rc.experiment_id = "theta";
    rc.overrides["sweep.samples"] = "2000";
    rc.calibration_path = "/nonexistent-calibration-file";
    return rc;
}

}  // namespace

TEST_CASE("list output enumerates every experiment with a description") {
    const std::string text = list_text();
    long lines = 0;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) ++lines;
    CHECK(lines == (long)experiment_registry().size());
    CHECK(text.find("kernel_equivalence — ") != std::string::npos);
    CHECK(text.find("hankel — ") != std::string::npos);
    CHECK(text.find("duality — ") != std::string::npos);
}

TEST_CASE("config parsing") {
    const auto kv = parse_config_text(
        "# comment\nquad.rel_tol = 1e-4\nsweep.lambda_grid=0.1,0.01 # trailing\n");
    CHECK(kv.at("quad.rel_tol") == "1e-4");
    CHECK(kv.at("sweep.lambda_grid") == "0.1,0.01");
    CHECK_THROWS_AS(parse_config_text("no_equals_sign\n"), std::invalid_argument);

    SweepSpec sweep;
    QuadConfig quad;
    double thr = 50.0;
    unsigned long long seed = 0;
    CHECK_THROWS_AS(apply_overrides({{"bogus.key", "1"}}, sweep, quad, thr, seed),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_overrides({{"quad.rel_tol", "abc"}}, sweep, quad, thr, seed),
                    std::invalid_argument);
    CHECK_NOTHROW(apply_overrides({{"sweep.w_grid", "0,1;2,0.5"}}, sweep, quad, thr,
                                  seed));
    CHECK(sweep.w_grid.size() == 2);
    CHECK(sweep.w_grid[1].x == 2.0);
}

TEST_CASE("unknown experiment id is rejected before any computation") {
    RunConfig rc;
    rc.experiment_id = "not_an_experiment";
    std::ostringstream log;
    const RunOutcome out = run_experiment(rc, log);
    CHECK(out.exit_code == 2);
    CHECK(log.str().find("unknown experiment id") != std::string::npos);
}

TEST_CASE("absurd tolerances exit with a configuration error") {
    RunConfig rc = theta_run();
    rc.overrides["quad.rel_tol"] = "1";
    std::ostringstream log;
    const RunOutcome out = run_experiment(rc, log);
    CHECK(out.exit_code == 2);
}

TEST_CASE("identical config and seed reproduce byte-identical tables") {
    std::ostringstream log;
    const RunOutcome a = run_experiment(theta_run(), log);
    const RunOutcome b = run_experiment(theta_run(), log);
    CHECK(a.exit_code == 0);
    CHECK(b.exit_code == 0);
    CHECK(a.table == b.table);
    CHECK(a.summary == b.summary);
    CHECK(a.table.rfind("claim_id,param_1", 0) == 0);
    CHECK(a.table.back() == '\n');
}

TEST_CASE("failing thresholds map to exit code one") {
    // kernel_equivalence's window groups use the report-level default, so a
    // near-unit threshold over a two-point sweep must fail
    RunConfig rc;
    rc.experiment_id = "kernel_equivalence";
    rc.calibration_path = "/nonexistent-calibration-file";
    rc.overrides["sweep.lambda_grid"] = "0.1,0.001";
    rc.overrides["sweep.abs_zeta_grid"] = "2";
    rc.overrides["report.threshold"] = "1.0000001";
    std::ostringstream log;
    const RunOutcome out = run_experiment(rc, log);
    CHECK(out.exit_code == 1);
    CHECK_FALSE(out.report.verdict);
}

TEST_CASE("tsv format swaps the delimiter") {
    RunConfig rc = theta_run();
    rc.format = "tsv";
    std::ostringstream log;
    const RunOutcome out = run_experiment(rc, log);
    CHECK(out.exit_code == 0);
    CHECK(out.table.rfind("claim_id\tparam_1", 0) == 0);
}

TEST_CASE("calibration file round trip") {
    const std::string path = "test_calibration_tmp.txt";
    std::remove(path.c_str());
    QuadConfig cfg = QuadConfig{}.with_tol(1e-5, 1e-11);

    std::ostringstream log1;
    CHECK(run_calibrate({0.0}, path, cfg, log1) == 0);
    std::ifstream in1(path);
    std::stringstream t1;
    t1 << in1.rdbuf();
    CHECK(t1.str().find("c_alpha.0.re=") != std::string::npos);

    // repeated run writes the identical file
    std::ostringstream log2;
    CHECK(run_calibrate({0.0}, path, cfg, log2) == 0);
    std::ifstream in2(path);
    std::stringstream t2;
    t2 << in2.rdbuf();
    CHECK(t1.str() == t2.str());

    // adding an order keeps the existing entry unchanged
    std::ostringstream log3;
    CHECK(run_calibrate({1.0}, path, cfg, log3) == 0);
    Calibration cal;
    CHECK(load_calibration(path, cal));
    CHECK(std::abs(cal.c0 * kPi) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(cal.c1 - default_c_alpha(1.0)) <= 1e-3 * std::abs(cal.c1));
    std::ifstream in3(path);
    std::stringstream t3;
    t3 << in3.rdbuf();
    CHECK(t3.str().find(t1.str().substr(0, t1.str().find('\n'))) !=
          std::string::npos);

    std::remove(path.c_str());
}

TEST_CASE("seed flag feeds the sweep") {
    RunConfig a = theta_run();
    a.seed = 7;
    a.seed_set = true;
    RunConfig b = theta_run();
    b.overrides["seed"] = "7";
    std::ostringstream log;
    const RunOutcome ra = run_experiment(a, log);
    const RunOutcome rb = run_experiment(b, log);
    CHECK(ra.exit_code == 0);
    CHECK(ra.table == rb.table);
}
