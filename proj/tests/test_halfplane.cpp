#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blab/halfplane.hpp"
#include "blab/harness.hpp"

using namespace blab;

TEST_CASE("half-plane points enforce y > 0") {
    CHECK_THROWS_AS(HalfPlanePoint(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(HalfPlanePoint(1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(HalfPlanePoint(std::nan(""), 1.0), std::domain_error);
    const HalfPlanePoint z(3.0, 4.0);
    CHECK(z.modulus() == doctest::Approx(5.0));
    CHECK(z.modulus() >= z.y);
}

TEST_CASE("ln_plus clamps below one and rejects nonpositive input") {
    CHECK(ln_plus(1.0) == 0.0);
    CHECK(ln_plus(std::exp(1.0)) == doctest::Approx(1.0));
    CHECK(ln_plus(0.5) == 0.0);
    CHECK_THROWS_AS(ln_plus(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_plus(-3.0), std::domain_error);
}

TEST_CASE("weight evaluation matches hand values") {
    CHECK(eval_weight(WeightSpec::omega_pow(1.0), HalfPlanePoint(0, 1)) == 1.0);
    CHECK(eval_weight(WeightSpec::omega_pow(1.0), HalfPlanePoint(0, 0.01)) ==
          doctest::Approx(5.60517018598809).epsilon(1e-12));
    // (1 + ln sqrt(10001))^2, high-precision substitution
    CHECK(eval_weight(WeightSpec::omega_pow(2.0), HalfPlanePoint(100, 1)) ==
          doctest::Approx(31.4184933053841).epsilon(1e-12));
    CHECK(eval_weight(WeightSpec::omega_pow(0.0), HalfPlanePoint(77, 0.001)) == 1.0);

    // rho and the log-log weight
    const HalfPlanePoint p(0.0, 0.001);
    const double e = std::exp(1.0);
    CHECK(eval_weight(WeightSpec::rho(2.0), p) ==
          doctest::Approx(std::pow(1.0 + std::log(e + 1000.0), -2.0)));
    CHECK(eval_weight(WeightSpec::loglog(), HalfPlanePoint(0, 1)) == 1.0);
    CHECK(eval_weight(WeightSpec::loglog(), p) ==
          doctest::Approx(1.0 + std::log(std::log(1000.0))));

    // the four-switch family: a zero switch contributes ln^0 = 1, so an
    // all-off base is the constant 2 and single-switch bases carry a +1
    CHECK(eval_weight(WeightSpec::general(false, false, false, false, 0.0, 0.0), p) ==
          1.0);
    CHECK(eval_weight(WeightSpec::general(false, false, false, false, 1.0, 0.0), p) ==
          2.0);
    CHECK(eval_weight(WeightSpec::general(false, true, false, false, 1.0, 0.0), p) ==
          doctest::Approx(1.0 + std::log(e + 1000.0)));
    CHECK(eval_weight(WeightSpec::general(true, false, false, false, 1.0, 0.0),
                      HalfPlanePoint(10.0, 1.0)) ==
          doctest::Approx(1.0 + std::log(e + std::sqrt(101.0))));
}

TEST_CASE("weights are positive, above one for the base weight, and x-even") {
    Rng rng(11);
    for (int i = 0; i < 20000; ++i) {
        const HalfPlanePoint z = rng.point(1e-8, 1e8, 1e8);
        const double w = eval_weight(WeightSpec::omega_pow(1.0), z);
        CHECK(w >= 1.0);
        CHECK(eval_weight(WeightSpec::omega_pow(1.0), HalfPlanePoint(-z.x, z.y)) == w);
        CHECK(eval_weight(WeightSpec::rho(1.5), z) > 0.0);
        CHECK(eval_weight(WeightSpec::loglog(), z) >= 1.0);
    }
}

TEST_CASE("omega powers are exact powers of the base weight") {
    Rng rng(3);
    for (int i = 0; i < 5000; ++i) {
        const HalfPlanePoint z = rng.point(1e-8, 1e8, 1e8);
        for (double k : {-2.0, -1.0, 0.5, 1.0, 3.0}) {
            CHECK(eval_weight(WeightSpec::omega_pow(k), z) ==
                  std::pow(eval_weight(WeightSpec::omega_pow(1.0), z), k));
        }
    }
}

TEST_CASE("log-power integral closed form") {
    CHECK(log_power_integral(0.0, std::exp(2.0)) ==
          doctest::Approx(1.30685281944005).epsilon(1e-12));
    CHECK(log_power_integral(-1.0, std::exp(std::exp(1.0))) ==
          doctest::Approx(1.36651292058166).epsilon(1e-12));
    CHECK(log_power_integral(-2.0, 1e12) < 1.44269504088896);
    CHECK_THROWS_AS(log_power_integral(0.0, 1.5), std::domain_error);
}

TEST_CASE("log-power integral is monotone in t and bounded for k < -1") {
    for (double k : {-3.0, -2.0, -1.5, -1.0, 0.0, 1.0, 2.5}) {
        double prev = -1e300;
        for (double t : {2.0, 3.0, 10.0, 1e3, 1e6, 1e12}) {
            const double v = log_power_integral(k, t);
            CHECK(v >= prev);
            prev = v;
        }
    }
    for (double k : {-3.0, -2.0, -1.2}) {
        const double lim = log_power_integral_limit(k);
        const double tolerance = std::pow(std::log(2.0), k + 1.0) / std::fabs(k + 1.0);
        for (double t : {1e3, 1e6, 1e12}) {
            CHECK(std::fabs(log_power_integral(k, t) - lim) <= tolerance);
        }
    }
}

TEST_CASE("the log of the base weight matches the log-log weight within factor 4") {
    Rng rng(0);
    for (int i = 0; i < 100000; ++i) {
        const HalfPlanePoint z = rng.point(1e-8, 1e8, 1e8);
        const double a = 1.0 + std::log(eval_weight(WeightSpec::omega_pow(1.0), z));
        const double b = eval_weight(WeightSpec::loglog(), z);
        CHECK(a <= 4.0 * b);
        CHECK(b <= 4.0 * a);
    }
}

TEST_CASE("region membership") {
    CHECK(region_contains(Region::cone(), HalfPlanePoint(0, 2)));
    CHECK_FALSE(region_contains(Region::cone(), HalfPlanePoint(3, 2)));
    CHECK_FALSE(region_contains(Region::cone(), HalfPlanePoint(0.5, 0.9)));

    const Region ball = Region::ball(HalfPlanePoint(0, 1), 0.5);
    CHECK(region_contains(ball, HalfPlanePoint(0.4, 1.0)));
    CHECK_FALSE(region_contains(ball, HalfPlanePoint(0.6, 1.0)));
    CHECK_THROWS_AS(Region::ball(HalfPlanePoint(0, 1), 1.5), std::domain_error);

    // Q_{u+iv} = (u-v, u+v) x (0, 2v)
    const Region q = Region::carleson_square(HalfPlanePoint(2, 1));
    CHECK(region_contains(q, HalfPlanePoint(1.5, 1.9)));
    CHECK_FALSE(region_contains(q, HalfPlanePoint(3.5, 0.5)));
    CHECK_FALSE(region_contains(q, HalfPlanePoint(2.0, 2.1)));

    // Shell(w, 0) = Q_w; Shell(w, 1) = Q_{w_1} \ Q_w
    const Region s0 = Region::shell(HalfPlanePoint(0, 1), 0);
    const Region s1 = Region::shell(HalfPlanePoint(0, 1), 1);
    CHECK(region_contains(s0, HalfPlanePoint(0.0, 0.5)));
    CHECK_FALSE(region_contains(s1, HalfPlanePoint(0.0, 0.5)));
    CHECK(region_contains(s1, HalfPlanePoint(0.0, 3.0)));
    CHECK(region_contains(s1, HalfPlanePoint(1.5, 0.5)));
    CHECK_FALSE(region_contains(s1, HalfPlanePoint(0.0, 4.5)));

    CHECK(region_contains(Region::half_disc(2.0), HalfPlanePoint(1.0, 1.0)));
    CHECK_FALSE(region_contains(Region::half_disc(2.0), HalfPlanePoint(2.0, 1.0)));
}
