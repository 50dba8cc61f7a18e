#include "blab/operators.hpp"

#include <algorithm>
#include <cmath>

namespace blab {

namespace {

const complexd kI{0.0, 1.0};

using KernelFn = std::function<complexd(double x, double y)>;  // zeta integrand factor

KernelFn kernel_factor(const ProjectionSpec& spec, const Calibration& cal,
                       const complexd& z) {
    switch (spec.kind) {
        case ProjectionSpec::Kind::P: {
            const double a = spec.alpha;
            const complexd c = cal.c_for(a);
            if (a == 0.0) {
                return [c, z](double x, double y) {
                    const complexd d = z - complexd(x, -y);
                    return c / (d * d);
                };
            }
            return [c, z, a](double x, double y) {
                const complexd d = z - complexd(x, -y);
                return c * std::pow(d, complexd(-(2.0 + a), 0.0)) * std::pow(y, a);
            };
        }
        case ProjectionSpec::Kind::PPlus: {
            const double m = std::abs(cal.c0);
            return [m, z](double x, double y) {
                return complexd(m / std::norm(z - complexd(x, -y)), 0.0);
            };
        }
        case ProjectionSpec::Kind::PMod: {
            const complexd c = cal.c0;
            const complexd d0 = z + kI;
            const complexd k0 = c / (d0 * d0);
            return [c, z, k0](double x, double y) {
                const complexd d = z - complexd(x, -y);
                return c / (d * d) - k0;
            };
        }
        case ProjectionSpec::Kind::PPlusMod: {
            const double m = std::abs(cal.c0);
            const double k0 = m / std::norm(z + kI);
            return [m, z, k0](double x, double y) {
                return complexd(m / std::norm(z - complexd(x, -y)) - k0, 0.0);
            };
        }
    }
    throw std::logic_error("kernel_factor: unknown projection kind");
}

void merge_diag(IntegrationResult* diag, const IntegrationResult& r) {
    if (!diag) return;
    diag->value += r.value;
    diag->err_estimate += r.err_estimate;
    diag->cells += r.cells;
    diag->tail_bound += r.tail_bound;
    diag->converged = diag->converged && r.converged;
}

QuadConfig with_features_of(QuadConfig cfg, const Field& f) {
    for (const auto& ft : f.features) cfg.features.push_back(ft);
    return cfg;
}

}  // namespace

double abs_kernel_ball_integral(const HalfPlanePoint& z, const HalfPlanePoint& c,
                                double rho) {
    const double d2 = std::norm(to_complex(z) - std::conj(to_complex(c)));
    const double u = rho * rho / d2;
    return -kPi * std::log1p(-u);
}

complexd plain_kernel_ball_integral(const HalfPlanePoint& z, const HalfPlanePoint& c,
                                    double rho) {
    const complexd d = to_complex(z) - std::conj(to_complex(c));
    return kPi * rho * rho / (d * d);
}

complexd project(const ProjectionSpec& spec, const Field& f, const HalfPlanePoint& z,
                 const OpConfig& op, IntegrationResult* diag) {
    const complexd zc = to_complex(z);
    const KernelFn kern = kernel_factor(spec, op.cal, zc);
    if (diag) {
        *diag = IntegrationResult{};
        diag->converged = true;
    }

    if (!f.indicator_parts.empty()) {
        complexd acc{0.0, 0.0};
        for (const auto& part : f.indicator_parts) {
            const IntegrationResult r = integrate_ball(
                [&kern](double x, double y) { return kern(x, y); },
                HalfPlanePoint(part.cx, part.cy), part.radius, op.quad);
            acc += part.height * r.value;
            merge_diag(diag, r);
        }
        return acc;
    }

    auto fe = f.eval;
    Integrand g = [kern, fe](double x, double y) {
        return kern(x, y) * fe(HalfPlanePoint(x, y));
    };
    QuadConfig cfg = with_features_of(op.quad, f);
    cfg.features.emplace_back(z.x, std::max(z.y, 1e-6));
    if (!f.compact_support) {
        const bool mod = spec.kind == ProjectionSpec::Kind::PMod ||
                         spec.kind == ProjectionSpec::Kind::PPlusMod;
        cfg = cfg.with_tail(mod ? f.tail_pow : 2.0 + f.tail_pow, f.tail_logpow);
    }
    const IntegrationResult r = integrate_halfplane(g, cfg);
    merge_diag(diag, r);
    return r.value;
}

double weighted_l1_norm(const Field& f, double k, double alpha, const OpConfig& op,
                        IntegrationResult* diag) {
    if (diag) {
        *diag = IntegrationResult{};
        diag->converged = true;
    }
    if (!f.indicator_parts.empty()) {
        double acc = 0.0;
        for (const auto& part : f.indicator_parts) {
            const IntegrationResult r = integrate_ball(
                [k, alpha](double x, double y) {
                    double v = omega_pow(x, y, k);
                    if (alpha != 0.0) v *= std::pow(y, alpha);
                    return complexd(v, 0.0);
                },
                HalfPlanePoint(part.cx, part.cy), part.radius, op.quad);
            acc += std::abs(part.height) * r.value.real();
            merge_diag(diag, r);
        }
        return acc;
    }

    auto fe = f.eval;
    Integrand g = [fe, k, alpha](double x, double y) {
        double v = std::abs(fe(HalfPlanePoint(x, y)));
        if (k != 0.0) v *= omega_pow(x, y, k);
        if (alpha != 0.0) v *= std::pow(y, alpha);
        return complexd(v, 0.0);
    };
    QuadConfig cfg = with_features_of(op.quad, f);
    if (!f.compact_support)
        cfg = cfg.with_tail(f.tail_pow - alpha, f.tail_logpow + k);
    const IntegrationResult r = integrate_halfplane(g, cfg);
    merge_diag(diag, r);
    return r.value.real();
}

NormResult norm(const NormSpec& spec, const Field& f, const OpConfig& op) {
    NormResult out;
    switch (spec.kind) {
        case NormSpec::Kind::WeightedL1:
            out.value = weighted_l1_norm(f, spec.k, spec.alpha, op);
            return out;
        case NormSpec::Kind::BlochSemi:
        case NormSpec::Kind::BlochFull: {
            if (!f.deriv)
                throw std::domain_error("norm: Bloch norms need an analytic derivative");
            auto fd = f.deriv;
            const double k = spec.k;
            Objective obj = [fd, k](double x, double y) {
                return y * omega_pow(x, y, k) * std::abs(fd(HalfPlanePoint(x, y)));
            };
            const SupResult s = sup_search(obj, with_features_of(op.quad, f));
            out.value = s.sup;
            out.witness = s.witness;
            out.on_hull = s.on_hull;
            if (spec.kind == NormSpec::Kind::BlochFull)
                out.value += std::abs(f.eval(HalfPlanePoint(0.0, 1.0)));
            return out;
        }
        case NormSpec::Kind::HInftyOmega:
        case NormSpec::Kind::LInftyWeighted: {
            auto fe = f.eval;
            const double k = spec.k;
            const double a = spec.kind == NormSpec::Kind::LInftyWeighted ? spec.alpha : 0.0;
            Objective obj = [fe, k, a](double x, double y) {
                double v = omega_pow(x, y, k) * std::abs(fe(HalfPlanePoint(x, y)));
                if (a != 0.0) v *= std::pow(y, a);
                return v;
            };
            const SupResult s = sup_search(obj, with_features_of(op.quad, f));
            out.value = s.sup;
            out.witness = s.witness;
            out.on_hull = s.on_hull;
            return out;
        }
    }
    throw std::logic_error("norm: unknown kind");
}

complexd duality_pair(const Field& f, const Field& g, const OpConfig& op,
                      IntegrationResult* diag) {
    if (!g.deriv)
        throw std::domain_error("duality_pair: g needs an analytic derivative");
    if (diag) {
        *diag = IntegrationResult{};
        diag->converged = true;
    }
    auto gd = g.deriv;
    if (!f.indicator_parts.empty()) {
        complexd acc{0.0, 0.0};
        for (const auto& part : f.indicator_parts) {
            const IntegrationResult r = integrate_ball(
                [gd](double x, double y) {
                    return std::conj(gd(HalfPlanePoint(x, y))) * y;
                },
                HalfPlanePoint(part.cx, part.cy), part.radius, op.quad);
            acc += part.height * r.value;
            merge_diag(diag, r);
        }
        return acc;
    }
    auto fe = f.eval;
    Integrand h = [fe, gd](double x, double y) {
        const HalfPlanePoint z(x, y);
        return fe(z) * std::conj(gd(z)) * y;
    };
    QuadConfig cfg = with_features_of(with_features_of(op.quad, f), g);
    if (!f.compact_support)
        cfg = cfg.with_tail(f.tail_pow + g.deriv_tail_pow - 1.0,
                            f.tail_logpow + g.tail_logpow);
    const IntegrationResult r = integrate_halfplane(h, cfg);
    merge_diag(diag, r);
    return r.value;
}

PairResult l2_pair(const Field& b, const Field& f, const OpConfig& op) {
    PairResult out;
    auto be = b.eval, fe = f.eval;

    // Tail-sample the product and flag marginal convergence.
    {
        const double R = op.quad.truncation_radius;
        double lr[3], lm[3];
        int m_count = 0;
        for (int j = 0; j < 3; ++j) {
            const double r = R / (1 << (2 - j));
            double m = 0.0;
            for (int a = 1; a <= 24; ++a) {
                const double th = kPi * a / 25.0;
                const HalfPlanePoint z(r * std::cos(th), r * std::sin(th));
                m = std::max(m, std::abs(be(z) * std::conj(fe(z))));
            }
            if (m > 0.0) {
                lr[m_count] = std::log(r);
                lm[m_count] = std::log(m);
                ++m_count;
            }
        }
        if (m_count == 3) {
            const double mlr = (lr[0] + lr[1] + lr[2]) / 3.0;
            const double mlm = (lm[0] + lm[1] + lm[2]) / 3.0;
            double num = 0.0, den = 0.0;
            for (int j = 0; j < 3; ++j) {
                num += (lr[j] - mlr) * (lm[j] - mlm);
                den += (lr[j] - mlr) * (lr[j] - mlr);
            }
            const double decay = -num / den;
            out.marginal = decay < 2.5;
        }
    }

    if (!f.indicator_parts.empty()) {
        complexd acc{0.0, 0.0};
        IntegrationResult diag;
        diag.converged = true;
        for (const auto& part : f.indicator_parts) {
            const IntegrationResult r = integrate_ball(
                [be](double x, double y) { return be(HalfPlanePoint(x, y)); },
                HalfPlanePoint(part.cx, part.cy), part.radius, op.quad);
            acc += std::conj(part.height) * r.value;
            merge_diag(&diag, r);
        }
        out.value = acc;
        out.quad = diag;
        return out;
    }

    Integrand h = [be, fe](double x, double y) {
        const HalfPlanePoint z(x, y);
        return be(z) * std::conj(fe(z));
    };
    QuadConfig cfg = with_features_of(with_features_of(op.quad, b), f);
    if (!(b.compact_support || f.compact_support))
        cfg = cfg.with_tail(b.tail_pow + f.tail_pow, b.tail_logpow + f.tail_logpow);
    out.quad = integrate_halfplane(h, cfg);
    out.value = out.quad.value;
    return out;
}

complexd hankel_apply(const Field& b, const Field& f, const HalfPlanePoint& z,
                      const OpConfig& op, bool modified, IntegrationResult* diag) {
    const complexd zc = to_complex(z);
    const complexd c = op.cal.c0;
    const complexd d0 = zc + kI;
    const complexd k0 = c / (d0 * d0);
    auto be = b.eval, fe = f.eval;
    Integrand h = [be, fe, c, k0, zc, modified](double x, double y) {
        const HalfPlanePoint zt(x, y);
        const complexd d = zc - complexd(x, -y);
        complexd kern = c / (d * d);
        if (modified) kern -= k0;
        return kern * be(zt) * std::conj(fe(zt));
    };
    QuadConfig cfg = with_features_of(with_features_of(op.quad, b), f);
    cfg.features.emplace_back(z.x, std::max(z.y, 1e-6));
    const double pow_bf = b.tail_pow + f.tail_pow;
    cfg = cfg.with_tail(modified ? pow_bf : 2.0 + pow_bf,
                        b.tail_logpow + f.tail_logpow);
    const IntegrationResult r = integrate_halfplane(h, cfg);
    if (diag) *diag = r;
    return r.value;
}

}  // namespace blab
