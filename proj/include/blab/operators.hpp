#pragma once

// Projections, Hankel operators, pairings and weighted norms, all realized by
// quadrature over the half-plane (ball-supported inputs integrate over their
// supports instead of the global grid).

#include "blab/kernels.hpp"
#include "blab/model_functions.hpp"
#include "blab/quadrature.hpp"

namespace blab {

struct Calibration {
    complexd c0 = default_c_alpha(0.0);
    complexd c1 = default_c_alpha(1.0);

    complexd c_for(double alpha) const {
        if (alpha == 0.0) return c0;
        if (alpha == 1.0) return c1;
        return default_c_alpha(alpha);
    }
};

struct OpConfig {
    QuadConfig quad;
    Calibration cal;
};

struct ProjectionSpec {
    enum class Kind { P, PPlus, PMod, PPlusMod };
    Kind kind = Kind::P;
    double alpha = 0.0;  // PPlus/PMod/PPlusMod are fixed at alpha = 0

    static ProjectionSpec p(double alpha = 0.0) { return {Kind::P, alpha}; }
    static ProjectionSpec pplus() { return {Kind::PPlus, 0.0}; }
    static ProjectionSpec pmod() { return {Kind::PMod, 0.0}; }
    static ProjectionSpec pplusmod() { return {Kind::PPlusMod, 0.0}; }
};

struct NormSpec {
    enum class Kind { WeightedL1, BlochSemi, BlochFull, HInftyOmega, LInftyWeighted };
    Kind kind = Kind::BlochSemi;
    double k = 0.0;
    double alpha = 0.0;

    static NormSpec weighted_l1(double k, double alpha = 0.0) {
        return {Kind::WeightedL1, k, alpha};
    }
    static NormSpec bloch_semi(double k) { return {Kind::BlochSemi, k, 0.0}; }
    // |f(i)| + sup y omega^k |f'|
    static NormSpec bloch_full(double k) { return {Kind::BlochFull, k, 0.0}; }
    static NormSpec h_infty_omega(double k) { return {Kind::HInftyOmega, k, 0.0}; }
    static NormSpec l_infty_weighted(double k, double alpha) {
        return {Kind::LInftyWeighted, k, alpha};
    }
};

// Quadrature of the projection kernel against f at the point z.
complexd project(const ProjectionSpec& spec, const Field& f, const HalfPlanePoint& z,
                 const OpConfig& op, IntegrationResult* diag = nullptr);

// Integral of |f| omega^k dV_alpha over the half-plane.
double weighted_l1_norm(const Field& f, double k, double alpha, const OpConfig& op,
                        IntegrationResult* diag = nullptr);

struct NormResult {
    double value = 0.0;
    HalfPlanePoint witness{0.0, 1.0};
    bool on_hull = false;
};

NormResult norm(const NormSpec& spec, const Field& f, const OpConfig& op);

// Integral of f(z) conj(g'(z)) Im(z) dV(z).
complexd duality_pair(const Field& f, const Field& g, const OpConfig& op,
                      IntegrationResult* diag = nullptr);

struct PairResult {
    complexd value{0.0, 0.0};
    bool marginal = false;  // tail samples decay slower than |z|^{-2.5}
    IntegrationResult quad;
};

// The Hermitian bracket: integral of b(z) conj(f(z)) dV(z).
PairResult l2_pair(const Field& b, const Field& f, const OpConfig& op);

// Integral of K(z, zeta) b(zeta) conj(f(zeta)) dV(zeta); the modified variant
// uses K(z, zeta) - K(z, i).
complexd hankel_apply(const Field& b, const Field& f, const HalfPlanePoint& z,
                      const OpConfig& op, bool modified,
                      IntegrationResult* diag = nullptr);

// Exact ball masses of the alpha = 0 kernels: closed-form fast routes used by
// the norm experiments, cross-checked against project() in the tests.
//   integral over B(c, rho) of |z - conj(w)|^{-2} dV(w)
//     = -pi ln(1 - (rho/|z - conj(c)|)^2),
//   integral over B(c, rho) of (z - conj(w))^{-2} dV(w)
//     = pi rho^2 (z - conj(c))^{-2}    (mean value of an anti-holomorphic map).
double abs_kernel_ball_integral(const HalfPlanePoint& z, const HalfPlanePoint& c,
                                double rho);
complexd plain_kernel_ball_integral(const HalfPlanePoint& z, const HalfPlanePoint& c,
                                    double rho);

}  // namespace blab
