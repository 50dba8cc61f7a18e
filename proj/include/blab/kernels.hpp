#pragma once

// Bergman kernels on the upper half-plane, their modified variants, and the
// far-field bound used by the necessity arguments.

#include <stdexcept>

#include "blab/halfplane.hpp"
#include "blab/quadrature.hpp"

namespace blab {

// The closed-form normalization c_alpha = -(alpha+1) 2^alpha e^{i pi alpha/2} / pi,
// for which K_alpha(z,w) = c_alpha (z - conj(w))^{-(2+alpha)} reproduces A^2_alpha.
// calibrate_c_alpha recovers the same constant from a quadrature probe.
complexd default_c_alpha(double alpha);

struct KernelSpec {
    enum class Kind { Plain, Modified, AbsModified };

    Kind kind = Kind::Plain;
    double alpha = 0.0;
    complexd c_alpha = default_c_alpha(0.0);

    static KernelSpec plain(double a, complexd c) {
        if (!(a >= 0.0)) throw std::domain_error("KernelSpec: alpha must be >= 0");
        KernelSpec k;
        k.kind = Kind::Plain;
        k.alpha = a;
        k.c_alpha = c;
        return k;
    }
    static KernelSpec plain(double a) { return plain(a, default_c_alpha(a)); }
    // Modified variants are defined only for alpha = 0.
    static KernelSpec modified(complexd c0) {
        KernelSpec k;
        k.kind = Kind::Modified;
        k.c_alpha = c0;
        return k;
    }
    static KernelSpec abs_modified(complexd c0) {
        KernelSpec k;
        k.kind = Kind::AbsModified;
        k.c_alpha = c0;
        return k;
    }
};

// Plain: c_alpha / (z - conj(zeta))^{2+alpha} (principal power; the base has
// positive imaginary part). Modified subtracts the value at zeta = i;
// AbsModified subtracts moduli and is real-valued.
complexd eval_kernel(const KernelSpec& spec, const HalfPlanePoint& z,
                     const HalfPlanePoint& zeta);

// |zeta - i| / |z + i|^3 on the domain |z + i| > 4 |zeta - i|; the modified
// kernel is bounded by 8 times this value there (fixed artifact constant,
// validated by sampling).
double kernel_tail_bound(const HalfPlanePoint& z, const HalfPlanePoint& zeta);

struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Recovers c_alpha from the reproducing identity with probe f(w) = (w+i)^{-4}
// averaged over the probe points {i, 1+i, 3i}. Throws CalibrationError when
// the per-probe constants disagree beyond 10x the quadrature tolerance.
complexd calibrate_c_alpha(double alpha, const QuadConfig& cfg);

}  // namespace blab
