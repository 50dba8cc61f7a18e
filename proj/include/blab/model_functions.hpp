#pragma once

// The closed-form function vocabulary of the experiments: indicator atoms,
// weighted cubic atoms, the logarithmic test function theta_w with its powers
// and logarithm, the critical growth examples, cubic kernels, and rational
// symbols. All holomorphic kinds carry analytic derivatives.

#include <functional>
#include <stdexcept>
#include <vector>

#include "blab/halfplane.hpp"

namespace blab {

// A function on the half-plane together with the analytic structure the
// operators exploit: indicator decompositions for piecewise-constant atoms,
// far-field size hints for tail accounting, and peak locations for quadrature
// root grading.
struct Field {
    std::function<complexd(const HalfPlanePoint&)> eval;
    std::function<complexd(const HalfPlanePoint&)> deriv;  // empty if unavailable

    struct IndicatorPart {
        double cx, cy, radius;
        complexd height;
    };
    // Nonempty means f is exactly the sum of height * indicator(ball) terms
    // with pairwise disjoint balls.
    std::vector<IndicatorPart> indicator_parts;

    double tail_pow = 0.0;      // |f(z)| ~ |z|^{-tail_pow} (ln|z|)^{tail_logpow}
    double tail_logpow = 0.0;
    double deriv_tail_pow = 1.0;
    bool compact_support = false;
    std::vector<std::pair<double, double>> features;  // (x, scale) peaks

    complexd operator()(const HalfPlanePoint& z) const { return eval(z); }
    bool has_derivative() const { return static_cast<bool>(deriv); }
};

// theta_w(z) = 1 - log(z - conj(w)) + ln|i + w| + 2 log(i + z), principal logs.
complexd theta_value(const HalfPlanePoint& w, const HalfPlanePoint& z);
complexd theta_derivative(const HalfPlanePoint& w, const HalfPlanePoint& z);

struct ModelFunction {
    enum class Kind {
        AtomFZeta,        // (4/(pi l^2)) 1_{B(zeta,l/2)} - (4/pi) 1_{B(i,1/2)}
        WeightedAtom,     // Im(w) omega^{1-(l+k)}(w) / (z - conj(w))^3
        Theta,            // theta_w
        ThetaPower,       // theta_w^{1-k}
        LogTheta,         // log theta_w
        CriticalExample,  // 1 (k>1), loglog(4i+z) (k=1), log(4i+z)^{1-k} (k<1)
        CubicKernel,      // scale / (z - conj(zeta0))^3
        RationalSymbol,   // (z+i)^{-n}
        LogShifted        // log(z+i)
    };

    Kind kind = Kind::RationalSymbol;
    HalfPlanePoint w{0.0, 1.0};
    double l = 0.0, k = 0.0;
    int n = 1;
    complexd scale{1.0, 0.0};

    static ModelFunction atom_f_zeta(const HalfPlanePoint& zeta);
    static ModelFunction weighted_atom(const HalfPlanePoint& w, double l, double k);
    static ModelFunction theta(const HalfPlanePoint& w);
    static ModelFunction theta_power(const HalfPlanePoint& w, double k);
    static ModelFunction log_theta(const HalfPlanePoint& w);
    static ModelFunction critical_example(double k);
    static ModelFunction cubic_kernel(const HalfPlanePoint& zeta0, complexd scale);
    static ModelFunction rational_symbol(int n);
    static ModelFunction log_shifted();

    complexd eval(const HalfPlanePoint& z) const;
    // Analytic derivative; throws for the indicator atom.
    complexd derivative(const HalfPlanePoint& z) const;
    Field field() const;
};

// (1/pi) [ (z - conj(zeta))^{-2} - (z + i)^{-2} ]: the projection of the atom
// f_zeta under the kernel normalized as 1/(pi (z-conj(zeta))^2). With the
// calibrated kernel, P(f_zeta) = pi * c0 * this value.
complexd atom_projection_closed_form(const HalfPlanePoint& zeta,
                                     const HalfPlanePoint& z);

// Field combinators used to assemble experiment inputs.
Field field_from(std::function<complexd(const HalfPlanePoint&)> eval, double tail_pow,
                 double tail_logpow = 0.0);
Field field_scale(const Field& f, complexd a);
Field field_sub(const Field& f, const Field& g);                 // f - g
Field field_sub_const(const Field& f, complexd c);               // f - c
Field field_product(const Field& f, const Field& g);             // pointwise product
Field field_quotient(const Field& f, const Field& g);            // f / g
Field constant_field(complexd c);

}  // namespace blab
