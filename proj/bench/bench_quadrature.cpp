// Wall-clock comparison of the OpenMP cell engine against the serial
// reference integrator on the workhorse integrands.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "blab/parallel.hpp"
#include "blab/quad_reference.hpp"
#include "blab/quadrature.hpp"

using namespace blab;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Case {
    const char* name;
    Integrand f;
    double exact;  // 0 when no closed form is pinned
};

}  // namespace

int main() {
    apply_thread_cap_from_env();
    std::printf("workers: %d\n", worker_count());

    const complexd zeta(10.0, 0.1);
    Case cases[] = {
        {"recip4 (pi/4)",
         real_integrand([](double x, double y) {
             const double d = x * x + (y + 1.0) * (y + 1.0);
             return 1.0 / (d * d);
         }),
         kPi / 4.0},
        {"kernel diff mass",
         real_integrand([zeta](double x, double y) {
             const complexd z(x, y);
             const complexd d = z - std::conj(zeta);
             const complexd e = z + complexd(0, 1);
             return std::abs(1.0 / (d * d) - 1.0 / (e * e)) / kPi;
         }),
         0.0},
        {"weighted kernel column",
         real_integrand([zeta](double x, double y) {
             const complexd z(x, y);
             return omega_pow(x, y, -2.0) / std::norm(z - std::conj(zeta)) / kPi;
         }),
         0.0},
    };

    std::printf("%-24s %12s %12s %10s %12s %12s\n", "integrand", "engine", "serial",
                "speedup", "engine_val", "serial_val");
    for (const Case& c : cases) {
        QuadConfig cfg = QuadConfig{}.with_tol(1e-4, 1e-9).with_tail(3.0);
        cfg.features = {{zeta.real(), std::max(zeta.imag(), 1e-6)}, {0.0, 1.0}};

        double t0 = now_s();
        const IntegrationResult eng = integrate_halfplane(c.f, cfg);
        const double te = now_s() - t0;

        t0 = now_s();
        const refquad::Result ser = refquad::integrate_halfplane_serial(c.f, cfg);
        const double ts = now_s() - t0;

        std::printf("%-24s %10.1fms %10.1fms %9.2fx %12.6g %12.6g\n", c.name,
                    1e3 * te, 1e3 * ts, ts / te, eng.value.real(),
                    ser.value.real());
        if (c.exact > 0.0) {
            std::printf("%-24s engine err %.2e, serial err %.2e\n", "",
                        std::fabs(eng.value.real() - c.exact),
                        std::fabs(ser.value.real() - c.exact));
        }
    }
    return 0;
}
