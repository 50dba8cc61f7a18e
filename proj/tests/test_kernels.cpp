#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blab/harness.hpp"
#include "blab/kernels.hpp"

using namespace blab;

TEST_CASE("kernel values against hand substitution") {
    // with the plain normalization 1/pi the diagonal value is -1/(4 pi)
    const KernelSpec paper = KernelSpec::plain(0.0, complexd(1.0 / kPi, 0.0));
    const complexd v = eval_kernel(paper, HalfPlanePoint(0, 1), HalfPlanePoint(0, 1));
    CHECK(v.real() == doctest::Approx(-0.0795774715459477).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-15));

    // modified kernel vanishes identically at zeta = i
    const KernelSpec mod = KernelSpec::modified(default_c_alpha(0.0));
    for (double x : {-3.0, 0.0, 7.5}) {
        const complexd m = eval_kernel(mod, HalfPlanePoint(x, 0.2), HalfPlanePoint(0, 1));
        CHECK(std::abs(m) == 0.0);
    }

    // |K(i, 2i)| - |K(i, i)| = (1/pi)(1/9 - 1/4)
    const KernelSpec am = KernelSpec::abs_modified(complexd(-1.0 / kPi, 0.0));
    const complexd a = eval_kernel(am, HalfPlanePoint(0, 1), HalfPlanePoint(0, 2));
    CHECK(a.real() == doctest::Approx(-0.0442097064144154).epsilon(1e-12));
}

TEST_CASE("conjugate symmetry and modulus of the plain kernel") {
    const KernelSpec k0 = KernelSpec::plain(0.0);  // calibrated-form default -1/pi
    Rng rng(5);
    for (int i = 0; i < 10000; ++i) {
        const HalfPlanePoint z = rng.point(1e-6, 1e6, 1e6);
        const HalfPlanePoint w = rng.point(1e-6, 1e6, 1e6);
        const complexd kzw = eval_kernel(k0, z, w);
        const complexd kwz = eval_kernel(k0, w, z);
        CHECK(std::abs(kzw - std::conj(kwz)) <= 1e-13 * std::abs(kzw));
        const double expect =
            1.0 / (kPi * std::norm(to_complex(z) - std::conj(to_complex(w))));
        CHECK(std::abs(kzw) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("far-field bound for the modified kernel") {
    CHECK(kernel_tail_bound(HalfPlanePoint(3, 4), HalfPlanePoint(0, 1)) == 0.0);
    CHECK(kernel_tail_bound(HalfPlanePoint(0, 100), HalfPlanePoint(0, 2)) ==
          doctest::Approx(9.70590147927644e-7).epsilon(1e-12));
    CHECK(kernel_tail_bound(HalfPlanePoint(10, 10), HalfPlanePoint(1, 1)) ==
          doctest::Approx(3.04376829862585e-4).epsilon(1e-12));
    CHECK_THROWS_AS(kernel_tail_bound(HalfPlanePoint(0, 1), HalfPlanePoint(0, 2)),
                    std::domain_error);

    const KernelSpec mod = KernelSpec::modified(default_c_alpha(0.0));
    Rng rng(23);
    long admissible = 0;
    for (int i = 0; i < 300000 && admissible < 100000; ++i) {
        const HalfPlanePoint z = rng.point(1e-4, 1e6, 1e6);
        const HalfPlanePoint w = rng.point(1e-4, 1e3, 1e3);
        const double a = std::abs(to_complex(z) + complexd(0, 1));
        const double b = std::abs(to_complex(w) - complexd(0, 1));
        if (!(a > 4.0 * b)) continue;
        ++admissible;
        const double bound = kernel_tail_bound(z, w);
        CHECK(std::abs(eval_kernel(mod, z, w)) <= 8.0 * bound + 1e-300);
    }
    CHECK(admissible == 100000);
}

TEST_CASE("calibration recovers the closed-form constants") {
    const QuadConfig cfg = QuadConfig{}.with_tol(1e-6, 1e-12);

    const complexd c0 = calibrate_c_alpha(0.0, cfg);
    CHECK(std::abs(c0) * kPi == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(c0 - default_c_alpha(0.0)) <= 1e-3 * std::abs(c0));

    const complexd c1 = calibrate_c_alpha(1.0, cfg);
    CHECK(std::abs(c1 - default_c_alpha(1.0)) <= 1e-3 * std::abs(c1));

    // halving the truncation radius does not move the constant
    QuadConfig half = cfg;
    half.truncation_radius = cfg.truncation_radius / 2.0;
    const complexd c0h = calibrate_c_alpha(0.0, half);
    CHECK(std::abs(c0h - c0) <= 1e-3 * std::abs(c0));
}

TEST_CASE("kernel spec preconditions") {
    CHECK_THROWS_AS(KernelSpec::plain(-0.5), std::domain_error);
    CHECK_THROWS_AS(default_c_alpha(-1.0), std::domain_error);
}
