#pragma once

// One experiment per checkable claim. Every experiment produces an
// EquivalenceReport: a deterministic list of samples (measured vs predicted)
// plus a verdict that is a pure function of the samples and the thresholds.

#include <map>
#include <string>
#include <vector>

#include "blab/operators.hpp"

namespace blab {

struct SweepSpec {
    std::vector<double> lambda_grid = {1e-1, 1e-2, 1e-3, 1e-4};  // Im zeta
    std::vector<double> abs_zeta_grid = {2.0, 10.0, 100.0, 1000.0};
    std::vector<HalfPlanePoint> w_grid;
    std::vector<double> k_list, l_list, j_list;
    std::vector<double> radius_grid;  // truncation radii for growth fits
    unsigned long long seed = 0;
    long samples = 100000;  // sample count for the random-sampling experiments

    // Throws std::invalid_argument on empty grids, lambda outside (0,1],
    // |zeta| < 1, or (when required) sweep points with |zeta - i| <= 1.
    void validate(bool require_far_from_i) const;
};

// How a row participates in the verdict: two-sided ratio window over its
// claim group, a one-sided upper bound on its ratio, or a direct pass/fail.
enum class CheckKind { Window, Upper, Direct };

struct ReportSample {
    std::string claim;
    CheckKind check = CheckKind::Window;
    std::vector<double> params;
    double measured = 0.0;
    double predicted = 0.0;
    double ratio = 0.0;
    bool ratio_valid = false;
    double err_estimate = 0.0;
    bool ok = true;
};

struct EquivalenceReport {
    std::string claim_id;
    std::vector<std::string> param_names;
    double threshold = 50.0;
    std::map<std::string, double> group_thresholds;  // per-claim overrides
    std::vector<ReportSample> samples;

    // filled by finalize()
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double loglog_slope = 0.0;
    bool verdict = false;

    double threshold_for(const std::string& claim) const;
    void finalize();

    // claim_id,param_1..param_n,measured,predicted,ratio,err_estimate,verdict
    std::string to_csv(char delim = ',') const;
    std::string summary() const;
};

// Deterministic splitmix64 stream used by the sampling experiments.
struct Rng {
    unsigned long long state;
    explicit Rng(unsigned long long seed) : state(seed) {}
    unsigned long long next() {
        unsigned long long z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double log_uniform(double lo, double hi) {
        return lo * std::pow(hi / lo, uniform());
    }
    HalfPlanePoint point(double ymin, double ymax, double xmax) {
        const double y = log_uniform(ymin, ymax);
        const double mag = log_uniform(1e-6, xmax);
        const double x = (next() & 1) ? mag : -mag;
        return HalfPlanePoint(x, y);
    }
};

// The ten experiments.
EquivalenceReport exp_kernel_equivalence(const SweepSpec& sweep, const OpConfig& op);
EquivalenceReport exp_atom_norms(const SweepSpec& sweep, const OpConfig& op);
EquivalenceReport exp_mean_zero(const SweepSpec& sweep, const OpConfig& op);
EquivalenceReport exp_weighted_sufficiency(const SweepSpec& sweep, const OpConfig& op);
EquivalenceReport exp_pointwise_bloch(const SweepSpec& sweep, const OpConfig& op);
EquivalenceReport exp_theta(const SweepSpec& sweep, const OpConfig& op);
EquivalenceReport exp_forelli_rudin(const SweepSpec& sweep, const OpConfig& op);
EquivalenceReport exp_factorization(const SweepSpec& sweep, const OpConfig& op);
EquivalenceReport exp_hankel(const SweepSpec& sweep, const OpConfig& op);
EquivalenceReport exp_duality(const SweepSpec& sweep, const OpConfig& op);

struct Experiment {
    std::string id;
    std::string description;
    EquivalenceReport (*run)(const SweepSpec&, const OpConfig&);
    SweepSpec default_sweep;
    QuadConfig default_quad;
};

const std::vector<Experiment>& experiment_registry();
const Experiment* find_experiment(const std::string& id);

// Locale-independent shortest-round-trip formatting used by every writer.
std::string format_double(double v);

}  // namespace blab
