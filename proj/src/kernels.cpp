#include "blab/kernels.hpp"

#include <cmath>
#include <string>

namespace blab {

complexd default_c_alpha(double alpha) {
    if (!(alpha >= 0.0)) throw std::domain_error("default_c_alpha: alpha must be >= 0");
    const double mag = (alpha + 1.0) * std::pow(2.0, alpha) / kPi;
    const double phase = 0.5 * kPi * alpha;
    return -mag * complexd(std::cos(phase), std::sin(phase));
}

namespace {

inline complexd plain_kernel(const complexd& c, double alpha, const complexd& z,
                             const complexd& zeta) {
    const complexd d = z - std::conj(zeta);  // Im d = Im z + Im zeta > 0
    if (alpha == 0.0) return c / (d * d);
    if (alpha == 1.0) return c / (d * d * d);
    return c * std::pow(d, complexd(-(2.0 + alpha), 0.0));
}

}  // namespace

complexd eval_kernel(const KernelSpec& spec, const HalfPlanePoint& z,
                     const HalfPlanePoint& zeta) {
    const complexd zc = to_complex(z), wc = to_complex(zeta);
    switch (spec.kind) {
        case KernelSpec::Kind::Plain:
            return plain_kernel(spec.c_alpha, spec.alpha, zc, wc);
        case KernelSpec::Kind::Modified:
            return plain_kernel(spec.c_alpha, 0.0, zc, wc) -
                   plain_kernel(spec.c_alpha, 0.0, zc, complexd(0.0, 1.0));
        case KernelSpec::Kind::AbsModified: {
            const double m = std::abs(spec.c_alpha);
            const double d1 = std::norm(zc - std::conj(wc));
            const double d2 = std::norm(zc + complexd(0.0, 1.0));
            return complexd(m / d1 - m / d2, 0.0);
        }
    }
    throw std::logic_error("eval_kernel: unknown kind");
}

double kernel_tail_bound(const HalfPlanePoint& z, const HalfPlanePoint& zeta) {
    const double a = std::abs(to_complex(z) + complexd(0.0, 1.0));
    const double b = std::abs(to_complex(zeta) - complexd(0.0, 1.0));
    if (!(a > 4.0 * b))
        throw std::domain_error("kernel_tail_bound: need |z+i| > 4|zeta-i|");
    return b / (a * a * a);
}

complexd calibrate_c_alpha(double alpha, const QuadConfig& cfg) {
    if (!(alpha >= 0.0)) throw std::domain_error("calibrate_c_alpha: alpha must be >= 0");
    cfg.validate();
    const HalfPlanePoint probes[3] = {{0.0, 1.0}, {1.0, 1.0}, {0.0, 3.0}};
    auto probe_fn = [](const complexd& w) {
        const complexd s = w + complexd(0.0, 1.0);
        return 1.0 / (s * s * s * s);
    };

    complexd c[3];
    for (int k = 0; k < 3; ++k) {
        const complexd z0 = to_complex(probes[k]);
        QuadConfig qc = cfg.with_tail(6.0).with_feature(probes[k].x, probes[k].y);
        Integrand g = [&](double x, double y) {
            const complexd w(x, y);
            const complexd d = z0 - std::conj(w);
            const complexd kern = std::pow(d, complexd(-(2.0 + alpha), 0.0));
            const double va = alpha == 0.0 ? 1.0 : std::pow(y, alpha);
            return kern * probe_fn(w) * va;
        };
        const IntegrationResult ir = integrate_halfplane(g, qc);
        if (!ir.converged)
            throw CalibrationError("calibrate_c_alpha: quadrature did not converge for alpha=" +
                                   std::to_string(alpha));
        c[k] = probe_fn(z0) / ir.value;
    }

    const complexd mean = (c[0] + c[1] + c[2]) / 3.0;
    const double tol = 10.0 * (cfg.rel_tol * std::abs(mean) + cfg.abs_tol);
    for (int k = 0; k < 3; ++k) {
        if (std::abs(c[k] - mean) > tol)
            throw CalibrationError(
                "calibrate_c_alpha: probe constants disagree beyond tolerance "
                "(quadrature misconfiguration) for alpha=" +
                std::to_string(alpha));
    }
    return mean;
}

}  // namespace blab
