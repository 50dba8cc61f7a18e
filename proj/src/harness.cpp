#include "blab/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blab {

void SweepSpec::validate(bool require_far_from_i) const {
    if (lambda_grid.empty() || abs_zeta_grid.empty())
        throw std::invalid_argument("SweepSpec: grids must be nonempty");
    for (double l : lambda_grid)
        if (!(l > 0.0) || l > 1.0)
            throw std::invalid_argument("SweepSpec: lambda must lie in (0, 1]");
    for (double r : abs_zeta_grid)
        if (!(r >= 1.0))
            throw std::invalid_argument("SweepSpec: |zeta| must be >= 1");
    if (require_far_from_i) {
        for (double l : lambda_grid) {
            for (double r : abs_zeta_grid) {
                if (r < l) throw std::invalid_argument("SweepSpec: |zeta| < Im zeta");
                const double xi2 = r * r - l * l;
                const double d2 = xi2 + (l - 1.0) * (l - 1.0);
                if (!(d2 > 1.0))
                    throw std::invalid_argument(
                        "SweepSpec: sweep point violates |zeta - i| > 1");
            }
        }
    }
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

double EquivalenceReport::threshold_for(const std::string& claim) const {
    auto it = group_thresholds.find(claim);
    return it == group_thresholds.end() ? threshold : it->second;
}

void EquivalenceReport::finalize() {
    ratio_min = std::numeric_limits<double>::infinity();
    ratio_max = -std::numeric_limits<double>::infinity();
    bool any_ratio = false;
    for (const auto& s : samples) {
        if (!s.ratio_valid) continue;
        any_ratio = true;
        ratio_min = std::min(ratio_min, s.ratio);
        ratio_max = std::max(ratio_max, s.ratio);
    }
    if (!any_ratio) ratio_min = ratio_max = std::nan("");

    bool pass = true;
    for (const auto& s : samples) pass = pass && s.ok;

    // group-wise window / upper-bound checks
    std::map<std::string, std::pair<double, double>> window;  // claim -> (min,max)
    for (const auto& s : samples) {
        if (!s.ratio_valid) continue;
        if (s.check == CheckKind::Window) {
            auto& w = window.try_emplace(s.claim, s.ratio, s.ratio).first->second;
            w.first = std::min(w.first, s.ratio);
            w.second = std::max(w.second, s.ratio);
        } else if (s.check == CheckKind::Upper) {
            if (!(s.ratio <= threshold_for(s.claim))) pass = false;
        }
    }
    for (const auto& [claim, w] : window) {
        if (!(w.first > 0.0) || !(w.second / w.first <= threshold_for(claim)))
            pass = false;
    }
    verdict = pass;
}

std::string EquivalenceReport::to_csv(char delim) const {
    // row verdicts reuse the group logic: a row fails if its own ok flag is
    // false or its group check fails
    std::map<std::string, std::pair<double, double>> window;
    for (const auto& s : samples) {
        if (s.ratio_valid && s.check == CheckKind::Window) {
            auto& w = window.try_emplace(s.claim, s.ratio, s.ratio).first->second;
            w.first = std::min(w.first, s.ratio);
            w.second = std::max(w.second, s.ratio);
        }
    }
    auto group_pass = [&](const ReportSample& s) {
        if (!s.ok) return false;
        if (!s.ratio_valid) return true;
        if (s.check == CheckKind::Upper) return s.ratio <= threshold_for(s.claim);
        if (s.check == CheckKind::Window) {
            const auto& w = window.at(s.claim);
            return w.first > 0.0 && w.second / w.first <= threshold_for(s.claim);
        }
        return true;
    };

    std::ostringstream os;
    os << "claim_id";
    for (std::size_t i = 1; i <= param_names.size(); ++i) os << delim << "param_" << i;
    os << delim << "measured" << delim << "predicted" << delim << "ratio" << delim
       << "err_estimate" << delim << "verdict\n";
    for (const auto& s : samples) {
        os << claim_id << '.' << s.claim;
        for (std::size_t i = 0; i < param_names.size(); ++i)
            os << delim
               << format_double(i < s.params.size() ? s.params[i] : std::nan(""));
        os << delim << format_double(s.measured) << delim << format_double(s.predicted)
           << delim << format_double(s.ratio_valid ? s.ratio : std::nan(""))
           << delim << format_double(s.err_estimate) << delim
           << (group_pass(s) ? "pass" : "fail") << '\n';
    }
    return os.str();
}

std::string EquivalenceReport::summary() const {
    std::ostringstream os;
    os << claim_id << ": samples=" << samples.size()
       << " ratio_min=" << format_double(ratio_min)
       << " ratio_max=" << format_double(ratio_max)
       << " slope=" << format_double(loglog_slope)
       << " verdict=" << (verdict ? "pass" : "fail");
    return os.str();
}

namespace {

SweepSpec default_sweep_small() {
    SweepSpec s;
    s.lambda_grid = {1e-1, 1e-3};
    s.abs_zeta_grid = {2.0, 100.0};
    return s;
}

std::vector<HalfPlanePoint> default_w_grid() {
    return {
        HalfPlanePoint(0.0, 1.0),     HalfPlanePoint(0.0, 2.0),
        HalfPlanePoint(1.0, 1.0),     HalfPlanePoint(0.0, 1e-3),
        HalfPlanePoint(0.5, 1e-3),    HalfPlanePoint(10.0, 1e-2),
        HalfPlanePoint(0.0, 100.0),   HalfPlanePoint(0.0, 1000.0),
        HalfPlanePoint(1000.0, 1.0),  HalfPlanePoint(5.0, 5.0),
        HalfPlanePoint(0.0, 0.1),     HalfPlanePoint(-3.0, 0.01),
    };
}

std::vector<Experiment> make_registry() {
    QuadConfig q;  // defaults

    std::vector<Experiment> r;

    {
        Experiment e;
        e.id = "kernel_equivalence";
        e.description =
            "two-sided comparison of the kernel-difference mass against the "
            "logarithmic weight, plus the near-boundary lower bound";
        e.run = &exp_kernel_equivalence;
        e.default_quad = q.with_tol(1e-3, 1e-8);
        r.push_back(e);
    }
    {
        Experiment e;
        e.id = "atom_norms";
        e.description =
            "indicator-atom mass, projected L1 norms, and their ratios against "
            "the logarithmic weight";
        e.run = &exp_atom_norms;
        e.default_quad = q.with_tol(1e-3, 1e-8);
        r.push_back(e);
    }
    {
        Experiment e;
        e.id = "mean_zero";
        e.description =
            "mean-zero obstruction: truncated projection norms grow in ln R "
            "proportionally to the integral of the input";
        e.run = &exp_mean_zero;
        e.default_quad = q.with_tol(1e-4, 1e-10);
        e.default_sweep.radius_grid = {100.0, 316.227766016838, 1000.0,
                                       2154.43469003188, 4641.58883361278, 10000.0};
        r.push_back(e);
    }
    {
        Experiment e;
        e.id = "weighted_sufficiency";
        e.description =
            "weighted kernel masses: uniform for strongly negative powers, "
            "weight-comparable otherwise, log-log scale at the critical power";
        e.run = &exp_weighted_sufficiency;
        e.default_sweep = default_sweep_small();
        e.default_sweep.k_list = {-2.0, -1.0, 0.0, 1.0};
        e.default_quad = q.with_tol(1e-3, 1e-8);
        r.push_back(e);
    }
    {
        Experiment e;
        e.id = "pointwise_bloch";
        e.description =
            "pointwise growth of unit-norm Bloch functions against the "
            "per-power growth envelopes, via the critical examples";
        e.run = &exp_pointwise_bloch;
        e.default_sweep.k_list = {2.0, 1.0, 0.5, 0.0, -1.0};
        e.default_quad = q.with_tol(1e-3, 1e-8);
        r.push_back(e);
    }
    {
        Experiment e;
        e.id = "theta";
        e.description =
            "the logarithmic test function: positivity margin, size window, "
            "and uniformity of its Bloch-type norms across the parameter";
        e.run = &exp_theta;
        e.default_sweep.w_grid = default_w_grid();
        e.default_sweep.k_list = {0.0, 0.5};
        e.default_quad = q.with_tol(1e-3, 1e-8);
        r.push_back(e);
    }
    {
        Experiment e;
        e.id = "forelli_rudin";
        e.description =
            "weighted far-field estimates: generalized-weight integrals "
            "against the off-diagonal kernel stay comparable to the weight at "
            "the base point";
        e.run = &exp_forelli_rudin;
        e.default_quad = q.with_tol(2e-3, 1e-8);
        r.push_back(e);
    }
    {
        Experiment e;
        e.id = "factorization";
        e.description =
            "atom factorization: the product of the quotient's weighted L1 "
            "norm and the test function's Bloch norm stays in a fixed window";
        e.run = &exp_factorization;
        e.default_sweep.w_grid = {HalfPlanePoint(0.0, 1e-3), HalfPlanePoint(0.5, 1e-3),
                                  HalfPlanePoint(0.0, 1e-2), HalfPlanePoint(100.0, 1.0),
                                  HalfPlanePoint(1000.0, 1.0), HalfPlanePoint(0.0, 300.0)};
        e.default_sweep.k_list = {0.0, 0.5};
        e.default_sweep.l_list = {0.0, 1.0};
        e.default_quad = q.with_tol(2e-3, 1e-8);
        r.push_back(e);
    }
    {
        Experiment e;
        e.id = "hankel";
        e.description =
            "Hankel dichotomy: bounded on the orthogonal subspace, log-growth "
            "with slope set by the pairing otherwise, and the reverse "
            "derivative bound";
        e.run = &exp_hankel;
        e.default_quad = q.with_tol(1e-4, 1e-12);
        r.push_back(e);
    }
    {
        Experiment e;
        e.id = "duality";
        e.description =
            "duality pairing bounded by the product of the weighted L1 norm "
            "and the Bloch norm over a battery of pairs";
        e.run = &exp_duality;
        e.default_quad = q.with_tol(1e-3, 1e-9);
        e.default_quad.truncation_radius = 1e5;
        r.push_back(e);
    }
    return r;
}

}  // namespace

const std::vector<Experiment>& experiment_registry() {
    static const std::vector<Experiment> registry = make_registry();
    return registry;
}

const Experiment* find_experiment(const std::string& id) {
    for (const auto& e : experiment_registry())
        if (e.id == id) return &e;
    return nullptr;
}

}  // namespace blab
