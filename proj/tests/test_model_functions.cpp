#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blab/harness.hpp"
#include "blab/model_functions.hpp"

using namespace blab;

namespace {
const HalfPlanePoint kI(0.0, 1.0);
}

TEST_CASE("theta at the base point") {
    const complexd v = theta_value(kI, kI);
    CHECK(v.real() == doctest::Approx(2.38629436111989).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(1.57079632679490).epsilon(1e-12));
}

TEST_CASE("indicator atom values and constructor guards") {
    const ModelFunction atom = ModelFunction::atom_f_zeta(HalfPlanePoint(0, 10));
    CHECK(atom.eval(kI).real() == doctest::Approx(-4.0 / kPi).epsilon(1e-14));
    CHECK(atom.eval(HalfPlanePoint(0, 10)).real() ==
          doctest::Approx(4.0 / (kPi * 100.0)).epsilon(1e-14));
    CHECK(atom.eval(HalfPlanePoint(50, 50)).real() == 0.0);
    CHECK_THROWS_AS(atom.derivative(kI), std::domain_error);

    CHECK_THROWS_AS(ModelFunction::atom_f_zeta(HalfPlanePoint(0, 1.5)),
                    std::domain_error);  // |zeta - i| <= 1
    CHECK_THROWS_AS(ModelFunction::atom_f_zeta(HalfPlanePoint(0, 2.2)),
                    std::domain_error);  // support balls would overlap
    CHECK_NOTHROW(ModelFunction::atom_f_zeta(HalfPlanePoint(2, 0.5)));
}

TEST_CASE("critical examples") {
    const ModelFunction c2 = ModelFunction::critical_example(2.0);
    const ModelFunction c1 = ModelFunction::critical_example(1.0);
    const ModelFunction c0 = ModelFunction::critical_example(0.0);
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const HalfPlanePoint z = rng.point(1e-6, 1e6, 1e6);
        CHECK(c2.eval(z) == complexd(1.0, 0.0));
        CHECK(c2.derivative(z) == complexd(0.0, 0.0));
        const complexd l = std::log(to_complex(z) + complexd(0, 4));
        CHECK(std::abs(c1.eval(z) - std::log(l)) <= 1e-13 * std::abs(std::log(l)));
        CHECK(std::abs(c0.eval(z) - l) <= 1e-13 * std::abs(l));
    }
}

TEST_CASE("closed-form derivatives at hand points") {
    CHECK(ModelFunction::rational_symbol(1).derivative(kI) ==
          complexd(0.25, 0.0));
    const complexd td = ModelFunction::theta(kI).derivative(kI);
    CHECK(td.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(td.imag() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(ModelFunction::log_shifted().derivative(kI) -
                   complexd(0.0, -0.5)) <= 1e-14);
}

TEST_CASE("atom projection closed form") {
    const complexd v =
        atom_projection_closed_form(HalfPlanePoint(0, 10), kI);
    // (1/pi)(1/4 - 1/121), high-precision substitution of the stated formula
    CHECK(v.real() == doctest::Approx(0.0769468113295527).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(atom_projection_closed_form(HalfPlanePoint(0, 1.5), kI),
                    std::domain_error);
}

TEST_CASE("analytic derivatives match central finite differences") {
    const std::vector<ModelFunction> battery = {
        ModelFunction::rational_symbol(1),
        ModelFunction::rational_symbol(3),
        ModelFunction::weighted_atom(HalfPlanePoint(1, 2), 0.0, 0.5),
        ModelFunction::theta(HalfPlanePoint(0.5, 1.5)),
        ModelFunction::theta_power(HalfPlanePoint(0, 1), 0.5),
        ModelFunction::log_theta(HalfPlanePoint(2, 0.5)),
        ModelFunction::critical_example(1.0),
        ModelFunction::critical_example(0.5),
        ModelFunction::cubic_kernel(HalfPlanePoint(0, 1.3), complexd(2.0, 1.0)),
        ModelFunction::log_shifted(),
    };
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        const HalfPlanePoint z(rng.log_uniform(1e-2, 1e2) * ((rng.next() & 1) ? 1 : -1),
                               rng.log_uniform(1e-2, 1e2));
        const ModelFunction& f = battery[i % battery.size()];
        const double h = 1e-5 * z.y;
        const complexd fd = (f.eval(HalfPlanePoint(z.x + h, z.y)) -
                             f.eval(HalfPlanePoint(z.x - h, z.y))) /
                            (2.0 * h);
        const complexd an = f.derivative(z);
        CHECK(std::abs(fd - an) <= 1e-6 * (std::abs(an) + 1e-12));
    }
}

TEST_CASE("theta positivity margin is strictly positive") {
    Rng rng(0);
    double margin_min = 1e300;
    for (int i = 0; i < 100000; ++i) {
        const HalfPlanePoint w = rng.point(1e-6, 1e6, 1e6);
        const HalfPlanePoint z = rng.point(1e-6, 1e6, 1e6);
        const double floor_line =
            1.0 - std::log(2.0) + std::log(std::abs(to_complex(z) + complexd(0, 1)));
        const double margin = theta_value(w, z).real() - floor_line;
        margin_min = std::min(margin_min, margin);
    }
    CHECK(margin_min > 0.0);

    // hand value at (w, z) = (i, i): margin is 2 ln 2
    const double m =
        theta_value(kI, kI).real() - (1.0 - std::log(2.0) + std::log(2.0));
    CHECK(m == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("theta modulus tracks its logarithmic envelope within factor 100") {
    Rng rng(1);
    double rmin = 1e300, rmax = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const HalfPlanePoint w = rng.point(1e-6, 1e6, 1e6);
        const HalfPlanePoint z = rng.point(1e-6, 1e6, 1e6);
        const double denom =
            1.0 + detail::ln_plus0(z.modulus()) +
            detail::ln_plus0(
                1.0 / std::abs(to_complex(z) - std::conj(to_complex(w))));
        const double r = std::abs(theta_value(w, z)) / denom;
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    CHECK(rmax / rmin <= 100.0);
    // at z = w the envelope uses the 1/(2y) branch
    const HalfPlanePoint w(0.3, 1e-3);
    const double denom = 1.0 + detail::ln_plus0(w.modulus()) +
                         detail::ln_plus0(1.0 / (2.0 * w.y));
    CHECK(std::abs(theta_value(w, w)) / denom > 0.0);
}

TEST_CASE("field metadata carries supports and derivative availability") {
    const Field atom = ModelFunction::atom_f_zeta(HalfPlanePoint(0, 10)).field();
    CHECK(atom.indicator_parts.size() == 2);
    CHECK(atom.compact_support);
    CHECK_FALSE(atom.has_derivative());

    const Field rs = ModelFunction::rational_symbol(3).field();
    CHECK(rs.has_derivative());
    CHECK(rs.tail_pow == 3.0);

    const Field diff = field_sub(rs, field_scale(rs, complexd(0.5, 0.0)));
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const HalfPlanePoint z = rng.point(1e-3, 1e3, 1e3);
        CHECK(std::abs(diff.eval(z) - 0.5 * rs.eval(z)) <= 1e-14);
        CHECK(std::abs(diff.deriv(z) - 0.5 * rs.deriv(z)) <= 1e-14);
    }
}
