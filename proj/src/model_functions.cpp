#include "blab/model_functions.hpp"

#include <cassert>
#include <cmath>

namespace blab {

namespace {

const complexd kI{0.0, 1.0};

complexd ipow_inv(const complexd& base, int n) {
    // base^{-n} for small positive integer n
    complexd p{1.0, 0.0};
    for (int j = 0; j < n; ++j) p *= base;
    return 1.0 / p;
}

inline complexd log4iz(const complexd& z) {
    return std::log(complexd(4.0, 0.0) * kI + z);  // Re >= ln 4 > 1
}

double atom_lambda(const HalfPlanePoint& zeta) { return zeta.y; }

}  // namespace

complexd theta_value(const HalfPlanePoint& w, const HalfPlanePoint& z) {
    const complexd zc = to_complex(z), wc = to_complex(w);
    const complexd a = zc - std::conj(wc);
    const complexd b = kI + zc;
    assert(a.imag() > 0.0 && b.imag() > 0.0);
    return 1.0 - std::log(a) + std::log(std::abs(kI + wc)) + 2.0 * std::log(b);
}

complexd theta_derivative(const HalfPlanePoint& w, const HalfPlanePoint& z) {
    const complexd zc = to_complex(z), wc = to_complex(w);
    return -1.0 / (zc - std::conj(wc)) + 2.0 / (kI + zc);
}

ModelFunction ModelFunction::atom_f_zeta(const HalfPlanePoint& zeta) {
    const double lam = atom_lambda(zeta);
    const double d = std::abs(to_complex(zeta) - kI);
    if (!(d > 1.0))
        throw std::domain_error("atom_f_zeta: need |zeta - i| > 1");
    if (!(d > 0.5 * (lam + 1.0)))
        throw std::domain_error("atom_f_zeta: support balls must be disjoint");
    ModelFunction m;
    m.kind = Kind::AtomFZeta;
    m.w = zeta;
    return m;
}

ModelFunction ModelFunction::weighted_atom(const HalfPlanePoint& w, double l, double k) {
    ModelFunction m;
    m.kind = Kind::WeightedAtom;
    m.w = w;
    m.l = l;
    m.k = k;
    return m;
}

ModelFunction ModelFunction::theta(const HalfPlanePoint& w) {
    ModelFunction m;
    m.kind = Kind::Theta;
    m.w = w;
    return m;
}

ModelFunction ModelFunction::theta_power(const HalfPlanePoint& w, double k) {
    ModelFunction m;
    m.kind = Kind::ThetaPower;
    m.w = w;
    m.k = k;
    return m;
}

ModelFunction ModelFunction::log_theta(const HalfPlanePoint& w) {
    ModelFunction m;
    m.kind = Kind::LogTheta;
    m.w = w;
    return m;
}

ModelFunction ModelFunction::critical_example(double k) {
    ModelFunction m;
    m.kind = Kind::CriticalExample;
    m.k = k;
    return m;
}

ModelFunction ModelFunction::cubic_kernel(const HalfPlanePoint& zeta0, complexd scale) {
    ModelFunction m;
    m.kind = Kind::CubicKernel;
    m.w = zeta0;
    m.scale = scale;
    return m;
}

ModelFunction ModelFunction::rational_symbol(int n) {
    if (n < 1) throw std::domain_error("rational_symbol: need n >= 1");
    ModelFunction m;
    m.kind = Kind::RationalSymbol;
    m.n = n;
    return m;
}

ModelFunction ModelFunction::log_shifted() {
    ModelFunction m;
    m.kind = Kind::LogShifted;
    return m;
}

complexd ModelFunction::eval(const HalfPlanePoint& z) const {
    const complexd zc = to_complex(z);
    switch (kind) {
        case Kind::AtomFZeta: {
            const double lam = atom_lambda(w);
            complexd v{0.0, 0.0};
            const double dxa = z.x - w.x, dya = z.y - w.y;
            if (dxa * dxa + dya * dya <= 0.25 * lam * lam)
                v += 4.0 / (kPi * lam * lam);
            const double dxb = z.x, dyb = z.y - 1.0;
            if (dxb * dxb + dyb * dyb <= 0.25)
                v -= 4.0 / kPi;
            return v;
        }
        case Kind::WeightedAtom: {
            const double pref = w.y * omega_pow(w.x, w.y, 1.0 - (l + k));
            return pref * ipow_inv(zc - std::conj(to_complex(w)), 3);
        }
        case Kind::Theta:
            return theta_value(w, z);
        case Kind::ThetaPower:
            // Re(theta) > 0, so the principal log is legitimate.
            return std::exp((1.0 - k) * std::log(theta_value(w, z)));
        case Kind::LogTheta:
            return std::log(theta_value(w, z));
        case Kind::CriticalExample: {
            if (k > 1.0) return {1.0, 0.0};
            const complexd L = log4iz(zc);
            if (k == 1.0) return std::log(L);  // Re L >= ln 4 > 1
            return std::exp((1.0 - k) * std::log(L));
        }
        case Kind::CubicKernel:
            return scale * ipow_inv(zc - std::conj(to_complex(w)), 3);
        case Kind::RationalSymbol:
            return ipow_inv(zc + kI, n);
        case Kind::LogShifted:
            return std::log(zc + kI);
    }
    throw std::logic_error("ModelFunction::eval: unknown kind");
}

complexd ModelFunction::derivative(const HalfPlanePoint& z) const {
    const complexd zc = to_complex(z);
    switch (kind) {
        case Kind::AtomFZeta:
            throw std::domain_error("derivative: indicator atom is not holomorphic");
        case Kind::WeightedAtom: {
            const double pref = w.y * omega_pow(w.x, w.y, 1.0 - (l + k));
            return -3.0 * pref * ipow_inv(zc - std::conj(to_complex(w)), 4);
        }
        case Kind::Theta:
            return theta_derivative(w, z);
        case Kind::ThetaPower: {
            const complexd th = theta_value(w, z);
            return (1.0 - k) * std::exp(-k * std::log(th)) * theta_derivative(w, z);
        }
        case Kind::LogTheta:
            return theta_derivative(w, z) / theta_value(w, z);
        case Kind::CriticalExample: {
            if (k > 1.0) return {0.0, 0.0};
            const complexd s = complexd(4.0, 0.0) * kI + zc;
            const complexd L = std::log(s);
            if (k == 1.0) return 1.0 / (s * L);
            return (1.0 - k) * std::exp(-k * std::log(L)) / s;
        }
        case Kind::CubicKernel:
            return -3.0 * scale * ipow_inv(zc - std::conj(to_complex(w)), 4);
        case Kind::RationalSymbol:
            return -double(n) * ipow_inv(zc + kI, n + 1);
        case Kind::LogShifted:
            return 1.0 / (zc + kI);
    }
    throw std::logic_error("ModelFunction::derivative: unknown kind");
}

Field ModelFunction::field() const {
    Field f;
    const ModelFunction self = *this;
    f.eval = [self](const HalfPlanePoint& z) { return self.eval(z); };
    if (kind != Kind::AtomFZeta)
        f.deriv = [self](const HalfPlanePoint& z) { return self.derivative(z); };

    switch (kind) {
        case Kind::AtomFZeta: {
            const double lam = atom_lambda(w);
            f.indicator_parts.push_back({w.x, w.y, 0.5 * lam, 4.0 / (kPi * lam * lam)});
            f.indicator_parts.push_back({0.0, 1.0, 0.5, -4.0 / kPi});
            f.compact_support = true;
            f.tail_pow = 1e9;
            f.features = {{w.x, 0.5 * lam}, {0.0, 0.5}};
            break;
        }
        case Kind::WeightedAtom:
            f.tail_pow = 3.0;
            f.deriv_tail_pow = 4.0;
            f.features = {{w.x, w.y}};
            break;
        case Kind::Theta:
            f.tail_pow = 0.0;
            f.tail_logpow = 1.0;
            f.deriv_tail_pow = 1.0;
            f.features = {{w.x, w.y}};
            break;
        case Kind::ThetaPower:
            f.tail_pow = 0.0;
            f.tail_logpow = std::max(1.0 - k, 0.0);
            f.deriv_tail_pow = 1.0;
            f.features = {{w.x, w.y}};
            break;
        case Kind::LogTheta:
            f.tail_pow = 0.0;
            f.tail_logpow = 0.5;  // ln ln growth, dominated by a half log
            f.deriv_tail_pow = 1.0;
            f.features = {{w.x, w.y}};
            break;
        case Kind::CriticalExample:
            f.tail_pow = 0.0;
            f.tail_logpow = k > 1.0 ? 0.0 : std::max(1.0 - k, 0.5);
            f.deriv_tail_pow = k > 1.0 ? 1e9 : 1.0;
            break;
        case Kind::CubicKernel:
            f.tail_pow = 3.0;
            f.deriv_tail_pow = 4.0;
            f.features = {{w.x, w.y}};
            break;
        case Kind::RationalSymbol:
            f.tail_pow = double(n);
            f.deriv_tail_pow = double(n + 1);
            f.features = {{0.0, 1.0}};
            break;
        case Kind::LogShifted:
            f.tail_pow = 0.0;
            f.tail_logpow = 1.0;
            f.deriv_tail_pow = 1.0;
            f.features = {{0.0, 1.0}};
            break;
    }
    return f;
}

complexd atom_projection_closed_form(const HalfPlanePoint& zeta,
                                     const HalfPlanePoint& z) {
    if (!(std::abs(to_complex(zeta) - kI) > 1.0))
        throw std::domain_error("atom_projection_closed_form: need |zeta - i| > 1");
    const complexd zc = to_complex(z);
    const complexd a = zc - std::conj(to_complex(zeta));
    const complexd b = zc + kI;
    return (1.0 / (a * a) - 1.0 / (b * b)) / kPi;
}

Field field_from(std::function<complexd(const HalfPlanePoint&)> eval, double tail_pow,
                 double tail_logpow) {
    Field f;
    f.eval = std::move(eval);
    f.tail_pow = tail_pow;
    f.tail_logpow = tail_logpow;
    return f;
}

Field field_scale(const Field& f, complexd a) {
    Field out = f;
    auto e = f.eval;
    out.eval = [e, a](const HalfPlanePoint& z) { return a * e(z); };
    if (f.deriv) {
        auto d = f.deriv;
        out.deriv = [d, a](const HalfPlanePoint& z) { return a * d(z); };
    }
    for (auto& p : out.indicator_parts) p.height *= a;
    return out;
}

Field field_sub(const Field& f, const Field& g) {
    Field out;
    auto ef = f.eval, eg = g.eval;
    out.eval = [ef, eg](const HalfPlanePoint& z) { return ef(z) - eg(z); };
    if (f.deriv && g.deriv) {
        auto df = f.deriv, dg = g.deriv;
        out.deriv = [df, dg](const HalfPlanePoint& z) { return df(z) - dg(z); };
    }
    out.tail_pow = std::min(f.tail_pow, g.tail_pow);
    out.tail_logpow = std::max(f.tail_logpow, g.tail_logpow);
    out.deriv_tail_pow = std::min(f.deriv_tail_pow, g.deriv_tail_pow);
    out.compact_support = f.compact_support && g.compact_support;
    out.features = f.features;
    out.features.insert(out.features.end(), g.features.begin(), g.features.end());
    return out;
}

Field field_sub_const(const Field& f, complexd c) {
    Field out = f;
    auto e = f.eval;
    out.eval = [e, c](const HalfPlanePoint& z) { return e(z) - c; };
    out.indicator_parts.clear();
    out.compact_support = false;
    out.tail_pow = std::min(f.tail_pow, 0.0);
    return out;
}

Field field_product(const Field& f, const Field& g) {
    Field out;
    auto ef = f.eval, eg = g.eval;
    out.eval = [ef, eg](const HalfPlanePoint& z) { return ef(z) * eg(z); };
    if (f.deriv && g.deriv) {
        auto df = f.deriv, dg = g.deriv;
        out.deriv = [ef, eg, df, dg](const HalfPlanePoint& z) {
            return df(z) * eg(z) + ef(z) * dg(z);
        };
    }
    out.tail_pow = f.tail_pow + g.tail_pow;
    out.tail_logpow = f.tail_logpow + g.tail_logpow;
    out.deriv_tail_pow = std::min(f.deriv_tail_pow + g.tail_pow,
                                  f.tail_pow + g.deriv_tail_pow);
    out.compact_support = f.compact_support || g.compact_support;
    out.features = f.features;
    out.features.insert(out.features.end(), g.features.begin(), g.features.end());
    return out;
}

Field field_quotient(const Field& f, const Field& g) {
    Field out;
    auto ef = f.eval, eg = g.eval;
    out.eval = [ef, eg](const HalfPlanePoint& z) { return ef(z) / eg(z); };
    if (f.deriv && g.deriv) {
        auto df = f.deriv, dg = g.deriv;
        out.deriv = [ef, eg, df, dg](const HalfPlanePoint& z) {
            const complexd gv = eg(z);
            return (df(z) * gv - ef(z) * dg(z)) / (gv * gv);
        };
    }
    out.tail_pow = f.tail_pow - g.tail_pow;
    out.tail_logpow = f.tail_logpow - g.tail_logpow;
    out.deriv_tail_pow = out.tail_pow + 1.0;
    out.features = f.features;
    out.features.insert(out.features.end(), g.features.begin(), g.features.end());
    return out;
}

Field constant_field(complexd c) {
    Field f;
    f.eval = [c](const HalfPlanePoint&) { return c; };
    f.deriv = [](const HalfPlanePoint&) { return complexd{0.0, 0.0}; };
    f.tail_pow = 0.0;
    f.deriv_tail_pow = 1e9;
    return f;
}

}  // namespace blab
