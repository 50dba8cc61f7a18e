#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blab/harness.hpp"
#include "blab/operators.hpp"

using namespace blab;

namespace {

const HalfPlanePoint kI(0.0, 1.0);

OpConfig op_default() {
    OpConfig op;  // closed-form constants; cross-checked against calibration
    op.quad = QuadConfig{}.with_tol(1e-5, 1e-11);
    return op;
}

}  // namespace

TEST_CASE("projections reproduce rational symbols for both kernel orders") {
    const OpConfig op = op_default();
    const HalfPlanePoint zs[5] = {
        {0.0, 1.0}, {1.0, 1.0}, {0.0, 3.0}, {-2.0, 0.5}, {4.0, 2.0}};
    for (int n : {3, 4}) {
        const ModelFunction f = ModelFunction::rational_symbol(n);
        const Field ff = f.field();
        for (double alpha : {0.0, 1.0}) {
            for (const auto& z : zs) {
                const complexd got = project(ProjectionSpec::p(alpha), ff, z, op);
                const complexd want = f.eval(z);
                CHECK(std::abs(got - want) <= 1e-4 * std::abs(want));
            }
        }
    }
    // the stated point value: P (z+i)^{-3} at i is (2i)^{-3} = i/8
    const complexd v = project(ProjectionSpec::p(0.0),
                               ModelFunction::rational_symbol(3).field(), kI, op);
    CHECK(std::abs(v - complexd(0.0, 0.125)) <= 2e-5);
}

TEST_CASE("projection of the indicator atom matches the closed form") {
    const OpConfig op = op_default();
    const HalfPlanePoint zeta(0.0, 10.0);
    const Field atom = ModelFunction::atom_f_zeta(zeta).field();
    const HalfPlanePoint z(0.0, 2.0);

    const complexd got = project(ProjectionSpec::p(0.0), atom, z, op);
    const complexd want = kPi * op.cal.c0 * atom_projection_closed_form(zeta, z);
    CHECK(std::abs(got - want) <= 1e-6 * std::abs(want));

    // modified projections agree with the plain ones on mean-zero input
    const complexd got_mod = project(ProjectionSpec::pmod(), atom, z, op);
    CHECK(std::abs(got_mod - got) <= 1e-8);

    const complexd plus = project(ProjectionSpec::pplus(), atom, z, op);
    const complexd plus_mod = project(ProjectionSpec::pplusmod(), atom, z, op);
    CHECK(std::abs(plus_mod - plus) <= 1e-8 + 1e-8 * std::abs(plus));
}

TEST_CASE("the subtracted modulus kernel takes both signs") {
    const KernelSpec am = KernelSpec::abs_modified(default_c_alpha(0.0));
    CHECK(eval_kernel(am, HalfPlanePoint(0, 1), HalfPlanePoint(0, 2)).real() < 0.0);
    CHECK(eval_kernel(am, HalfPlanePoint(0, 0.5), HalfPlanePoint(0, 0.5)).real() >
          0.0);
}

TEST_CASE("exact ball masses agree with the quadrature projections") {
    const OpConfig op = op_default();
    const HalfPlanePoint zeta(1.0, 2.0);
    const double rho = 0.7;
    const HalfPlanePoint zs[3] = {{0.0, 0.3}, {1.0, 5.0}, {-4.0, 1.0}};
    for (const auto& z : zs) {
        // |K| mass over the ball: -pi |c0| log(1 - u)
        const IntegrationResult r = integrate_ball(
            [&](double x, double y) {
                return complexd(
                    1.0 / std::norm(to_complex(z) - std::conj(complexd(x, y))), 0.0);
            },
            zeta, rho, op.quad);
        CHECK(r.real() ==
              doctest::Approx(abs_kernel_ball_integral(z, zeta, rho)).epsilon(1e-8));

        const IntegrationResult p = integrate_ball(
            [&](double x, double y) {
                const complexd d = to_complex(z) - std::conj(complexd(x, y));
                return 1.0 / (d * d);
            },
            zeta, rho, op.quad);
        CHECK(std::abs(p.value - plain_kernel_ball_integral(z, zeta, rho)) <=
              1e-8 * std::abs(p.value));
    }
}

TEST_CASE("weighted L1 norms: atom mass, divergence rate, and weighted atoms") {
    const OpConfig op = op_default();

    const Field atom = ModelFunction::atom_f_zeta(HalfPlanePoint(0, 10)).field();
    CHECK(weighted_l1_norm(atom, 0.0, 0.0, op) ==
          doctest::Approx(2.0).epsilon(1e-9));

    // (z+i)^{-2}: finite against omega^{-1-eps} (the certified bound
    // value + tail is finite, though the log-marginal tail dominates any
    // truncation), log-divergent unweighted (infinite tail bound)
    const Field rs2 = ModelFunction::rational_symbol(2).field();
    IntegrationResult diag;
    const double n_weighted = weighted_l1_norm(rs2, -1.1, 0.0, op, &diag);
    CHECK(n_weighted > 0.0);
    CHECK(std::isfinite(n_weighted));
    CHECK(std::isfinite(diag.tail_bound));
    IntegrationResult diag0;
    weighted_l1_norm(rs2, 0.0, 0.0, op, &diag0);
    CHECK(std::isinf(diag0.tail_bound));
    CHECK_FALSE(diag0.converged);

    QuadConfig c2 = op.quad;
    c2.truncation_radius = 1e2;
    QuadConfig c3 = op.quad;
    c3.truncation_radius = 1e3;
    auto abs_rs2 = [](double x, double y) {
        return complexd(1.0 / (x * x + (y + 1.0) * (y + 1.0)), 0.0);
    };
    const double t2 = integrate_region(abs_rs2, Region::half_disc(1e2), c2).real();
    const double t3 = integrate_region(abs_rs2, Region::half_disc(1e3), c3).real();
    CHECK((t3 - t2) / std::log(10.0) == doctest::Approx(kPi).epsilon(0.1));

    // weighted atoms have weighted norm comparable to one across the sweep
    double lo = 1e300, hi = 0.0;
    for (const auto& w : {HalfPlanePoint(0, 1), HalfPlanePoint(0, 1e-3),
                          HalfPlanePoint(100, 1), HalfPlanePoint(5, 5)}) {
        for (auto [l, k] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.5}}) {
            const Field f = ModelFunction::weighted_atom(w, l, k).field();
            OpConfig opw = op;
            opw.quad = op.quad.with_tol(1e-4, 1e-9);
            opw.quad.truncation_radius = std::max(1e4, 100.0 * w.modulus());
            const double n = weighted_l1_norm(f, l + k - 1.0, 0.0, opw);
            lo = std::min(lo, n);
            hi = std::max(hi, n);
        }
    }
    CHECK(hi / lo <= 20.0);
}

TEST_CASE("sup-type norms") {
    const OpConfig op = op_default();
    const NormResult c =
        norm(NormSpec::bloch_semi(0.0), constant_field(complexd(3, 1)), op);
    CHECK(c.value == 0.0);

    const NormResult lg =
        norm(NormSpec::bloch_semi(0.0), ModelFunction::log_shifted().field(), op);
    CHECK(lg.value == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(lg.on_hull);

    const NormResult full =
        norm(NormSpec::bloch_full(0.0), ModelFunction::log_shifted().field(), op);
    const double fi = std::abs(ModelFunction::log_shifted().eval(kI));
    CHECK(full.value == doctest::Approx(lg.value + fi).epsilon(1e-6));

    // theta powers have uniformly comparable Bloch norms across the parameter
    double lo = 1e300, hi = 0.0;
    for (const auto& w : {HalfPlanePoint(0, 1), HalfPlanePoint(0, 1e-3),
                          HalfPlanePoint(100, 1), HalfPlanePoint(0, 300)}) {
        const NormResult n = norm(NormSpec::bloch_full(0.5),
                                  ModelFunction::theta_power(w, 0.5).field(), op);
        lo = std::min(lo, n.value);
        hi = std::max(hi, n.value);
    }
    CHECK(hi / lo <= 20.0);

    CHECK_THROWS_AS(norm(NormSpec::bloch_semi(0.0),
                         ModelFunction::atom_f_zeta(HalfPlanePoint(0, 10)).field(),
                         op),
                    std::domain_error);

    const NormResult hi_norm =
        norm(NormSpec::h_infty_omega(-1.0), ModelFunction::log_shifted().field(), op);
    CHECK(std::isfinite(hi_norm.value));
    CHECK(hi_norm.value > 0.0);
}

TEST_CASE("duality pairing: zero against constants, closed-form oracle") {
    const OpConfig op = op_default();
    const Field f3 = ModelFunction::rational_symbol(3).field();

    const complexd zero = duality_pair(f3, constant_field(complexd(2, -5)), op);
    CHECK(std::abs(zero) <= 1e-10);

    // <f, g>_* for f = (z+i)^{-3}, g = (z+i)^{-1} equals i pi / 16 exactly
    const Field g1 = ModelFunction::rational_symbol(1).field();
    const complexd pair = duality_pair(f3, g1, op);
    const complexd want(0.0, kPi / 16.0);
    CHECK(std::abs(pair - want) <= 1e-4 * std::abs(want));

    // tighter quadrature reproduces the same value (self-oracle)
    OpConfig hi = op;
    hi.quad = op.quad.with_tol(1e-6, 1e-12);
    const complexd pair_hi = duality_pair(f3, g1, hi);
    CHECK(std::abs(pair - pair_hi) <= 1e-4 * std::abs(pair_hi));
}

TEST_CASE("duality pairing is bounded by the product of norms on a battery") {
    const OpConfig op = op_default();
    const std::vector<std::pair<double, std::pair<ModelFunction, ModelFunction>>>
        rows = {
            {0.0, {ModelFunction::rational_symbol(3), ModelFunction::log_shifted()}},
            {0.0, {ModelFunction::rational_symbol(4), ModelFunction::theta(kI)}},
            {1.0, {ModelFunction::rational_symbol(3), ModelFunction::log_theta(kI)}},
        };
    for (const auto& [k, fg] : rows) {
        const Field f = fg.first.field(), g = fg.second.field();
        const complexd pair = duality_pair(f, g, op);
        const double nf = weighted_l1_norm(f, -k, 0.0, op);
        const NormResult ng = norm(NormSpec::bloch_full(k), g, op);
        CHECK(std::abs(pair) <= 10.0 * nf * ng.value);
    }
}

TEST_CASE("Hermitian pairing: oracle value, marginal flag, atom dispatch") {
    const OpConfig op = op_default();
    const Field b = ModelFunction::rational_symbol(1).field();
    const Field f3 = ModelFunction::rational_symbol(3).field();

    // <(z+i)^{-1}, (z+i)^{-3}> = -pi/8 (independent transform-side derivation)
    const PairResult p = l2_pair(b, f3, op);
    CHECK(p.value.real() == doctest::Approx(-kPi / 8.0).epsilon(1e-4));
    CHECK(std::abs(p.value.imag()) <= 1e-5);
    CHECK_FALSE(p.marginal);

    // |z+i|^{-2} decay is flagged as marginally convergent
    const PairResult slow = l2_pair(b, ModelFunction::rational_symbol(1).field(), op);
    CHECK(slow.marginal);

    // constant symbol against a rational: the plane integral vanishes up to
    // the reported truncation tail, and a tighter rule reproduces the value
    const PairResult c = l2_pair(constant_field(complexd(1, 0)), f3, op);
    CHECK(std::abs(c.value) <=
          3.0 * (c.quad.err_estimate + c.quad.tail_bound) + 1e-6);
    OpConfig hi = op;
    hi.quad = op.quad.with_tol(1e-6, 1e-12);
    const PairResult c_hi = l2_pair(constant_field(complexd(1, 0)), f3, hi);
    CHECK(std::abs(c.value - c_hi.value) <= 1e-5);

    // cubic-atom pairing identity: the prefactor is real, so
    // <b, weighted_atom(w)> = -(pi/2) Im(w) omega(w) b'(w)
    for (const auto& w : {HalfPlanePoint(0, 2), HalfPlanePoint(1, 2)}) {
        const ModelFunction bm = ModelFunction::rational_symbol(1);
        const Field atom = ModelFunction::weighted_atom(w, 0.0, 0.0).field();
        const complexd got = l2_pair(b, atom, op).value;
        const complexd expect = -0.5 * kPi * w.y * omega(w) * bm.derivative(w);
        CHECK(std::abs(got - expect) <= 2e-3 * std::abs(expect));
    }
}

TEST_CASE("Hankel: modified minus plain is the kernel-at-i correction") {
    const OpConfig op = op_default();
    OpConfig opi = op;
    opi.quad = op.quad.with_tol(1e-4, 1e-12);
    opi.quad.truncation_radius = 300.0;
    opi.quad.boundary_floor = 1e-6;
    const Field b = ModelFunction::rational_symbol(1).field();
    const Field f = ModelFunction::rational_symbol(3).field();
    const complexd q = l2_pair(b, f, op).value;

    for (const auto& z : {HalfPlanePoint(0, 1), HalfPlanePoint(1, 0.5)}) {
        const complexd h = hankel_apply(b, f, z, opi, false);
        const complexd hm = hankel_apply(b, f, z, opi, true);
        const complexd d0 = to_complex(z) + complexd(0, 1);
        const complexd pred = -op.cal.c0 / (d0 * d0) * q;
        CHECK(std::abs((hm - h) - pred) <= 2e-3 * std::abs(pred));
    }
}

TEST_CASE("Hankel with a constant symbol reduces to the modified projection") {
    OpConfig op = op_default();
    op.quad = op.quad.with_tol(1e-4, 1e-11);
    op.quad.truncation_radius = 300.0;
    op.quad.boundary_floor = 1e-6;
    const complexd c(1.5, -0.5);
    const ModelFunction fm = ModelFunction::rational_symbol(3);
    Field conj_f = fm.field();
    conj_f.eval = [fm](const HalfPlanePoint& z) { return std::conj(fm.eval(z)); };
    conj_f.deriv = nullptr;

    const HalfPlanePoint z(1.0, 0.7);
    const complexd hm = hankel_apply(constant_field(c), fm.field(), z, op, true);
    const complexd pm = project(ProjectionSpec::pmod(), conj_f, z, op);
    CHECK(std::abs(hm - c * pm) <= 1e-3 * std::abs(hm));

    // the bracket against (g - g(i)) f vanishes for constant g
    const Field g = constant_field(complexd(3.0, 1.0));
    const Field shifted =
        field_product(field_sub_const(g, g.eval(HalfPlanePoint(0, 1))), fm.field());
    const complexd pair = l2_pair(constant_field(c), shifted, op).value;
    CHECK(std::abs(pair) <= 1e-12);
}

TEST_CASE("mean-zero necessity: truncated projection norms grow with ln R") {
    const OpConfig op = op_default();
    // positive bump of unit mass: P f = c0 (z + 2i)^{-2}, so the truncated
    // norms grow like pi |c0| ln R and the slope recovers the mass
    const complexd c0 = op.cal.c0;
    auto pf = [c0](double x, double y) {
        const complexd d = complexd(x, y) + complexd(0, 2);
        return complexd(std::abs(c0 / (d * d)), 0.0);
    };
    QuadConfig cfg = op.quad;
    const double n3 =
        integrate_region(pf, Region::half_disc(1e3), cfg).real();
    const double n4 =
        integrate_region(pf, Region::half_disc(1e4), cfg).real();
    const double slope = (n4 - n3) / std::log(10.0);
    CHECK(slope / (kPi * std::abs(c0)) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("pointwise product estimate over a battery") {
    const OpConfig op = op_default();
    const double k = 0.5, l = 0.0;
    const std::vector<ModelFunction> fs = {ModelFunction::rational_symbol(3),
                                           ModelFunction::rational_symbol(4),
                                           ModelFunction::weighted_atom(kI, 0, 0)};
    const std::vector<Field> gs = {ModelFunction::theta_power(kI, k).field(),
                                   ModelFunction::theta_power(HalfPlanePoint(0, 2), k).field(),
                                   constant_field(complexd(2, 0))};
    double cmax = 0.0;
    for (const auto& fm : fs) {
        const Field f = fm.field();
        const double nf = weighted_l1_norm(f, l, 0.0, op);
        for (const auto& g : gs) {
            const NormResult ng = norm(NormSpec::bloch_full(k), g, op);
            const double nfg =
                weighted_l1_norm(field_product(f, g), l + k - 1.0, 0.0, op);
            const double ratio = nfg / (nf * ng.value);
            CHECK(std::isfinite(ratio));
            cmax = std::max(cmax, ratio);
        }
    }
    CHECK(cmax <= 50.0);
}

TEST_CASE("multiplier necessity probe") {
    const OpConfig op = op_default();
    const ModelFunction bm = ModelFunction::rational_symbol(1);
    Rng rng(31);

    // k <= 1 rows: the theta test functions stay comparable to the pointwise
    // growth envelope (that is what turns the product bound into the weighted
    // sup bound on b), and the resulting sup of omega^{j-k} |b| is finite
    for (auto [j, k] : {std::pair{0.0, 0.0}, std::pair{0.0, 1.0}}) {
        double lo = 1e300, hi = 0.0;
        double direct_sup = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const HalfPlanePoint z = rng.point(1e-6, 1e6, 1e6);
            const bool near_boundary =
                std::log(1.0 / z.y) > std::log(1.0 + z.modulus());
            const HalfPlanePoint w = near_boundary ? z : HalfPlanePoint(0.0, 1.0);
            const complexd fz = (k == 1.0)
                                    ? ModelFunction::log_theta(w).eval(z)
                                    : ModelFunction::theta_power(w, k).eval(z);
            const double envelope =
                (k == 1.0) ? 1.0 + std::log(omega(z)) : omega_pow(z.x, z.y, 1.0 - k);
            const double ratio = std::abs(fz) / envelope;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            direct_sup = std::max(
                direct_sup, omega_pow(z.x, z.y, j - k) * std::abs(bm.eval(z)));
        }
        CHECK(hi / lo <= 100.0);
        CHECK(direct_sup <= 2.0);  // (z+i)^{-1} is a genuine multiplier witness
    }

    // k > 1 rows: the multiplier class collapses to the Bloch class of the
    // target, so the probe is the finiteness of that norm
    for (double j : {1.0, 0.0}) {
        const NormResult n = norm(NormSpec::bloch_full(j), bm.field(), op);
        CHECK(std::isfinite(n.value));
        CHECK(n.value > 0.0);
    }
}
