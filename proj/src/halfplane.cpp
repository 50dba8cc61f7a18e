#include "blab/halfplane.hpp"

#include <cmath>

namespace blab {

double ln_plus(double t) {
    if (!(t > 0.0)) throw std::domain_error("ln_plus: need t > 0");
    return t > 1.0 ? std::log(t) : 0.0;
}

double eval_weight(const WeightSpec& w, double x, double y) {
    using detail::ln_plus0;
    const double e = 2.71828182845904523536;
    switch (w.kind) {
        case WeightSpec::Kind::OmegaPow:
            return omega_pow(x, y, w.k);
        case WeightSpec::Kind::General: {
            const double r = std::sqrt(x * x + y * y);
            const double la = std::log(e + r);
            const double lb = std::log(e + 1.0 / y);
            const double base = (w.eps[0] ? la : 1.0) + (w.eps[1] ? lb : 1.0);
            const double outer = std::log(e + (w.eps[2] ? la : 1.0) + (w.eps[3] ? lb : 1.0));
            double v = 1.0;
            if (w.k != 0.0) v *= std::pow(base, w.k);
            if (w.s != 0.0) v *= std::pow(outer, w.s);
            return v;
        }
        case WeightSpec::Kind::Rho:
            return std::pow(1.0 + std::log(e + 1.0 / y), -w.k);
        case WeightSpec::Kind::LogLog: {
            const double r = std::sqrt(x * x + y * y);
            return 1.0 + ln_plus0(ln_plus0(1.0 / y)) + ln_plus0(ln_plus0(r));
        }
    }
    return 1.0;
}

double eval_weight(const WeightSpec& w, const HalfPlanePoint& z) {
    return eval_weight(w, z.x, z.y);
}

double log_power_integral(double k, double t) {
    if (!(t >= 2.0)) throw std::domain_error("log_power_integral: need t >= 2");
    const double ln2 = 0.69314718055994530942;
    if (k == -1.0) return std::log(std::log(t)) - std::log(ln2);
    const double kp1 = k + 1.0;
    return (std::pow(std::log(t), kp1) - std::pow(ln2, kp1)) / kp1;
}

double log_power_integral_limit(double k) {
    if (!(k < -1.0))
        throw std::domain_error("log_power_integral_limit: finite only for k < -1");
    const double ln2 = 0.69314718055994530942;
    return std::pow(ln2, k + 1.0) / (-(k + 1.0));
}

namespace {

// Q_{u+iv} = (u-v, u+v) x (0, 2v)
bool in_carleson_square(double u, double v, double x, double y) {
    return x > u - v && x < u + v && y > 0.0 && y < 2.0 * v;
}

}  // namespace

bool region_contains(const Region& r, double x, double y) {
    if (!(y > 0.0)) return false;
    switch (r.kind) {
        case Region::Kind::Ball: {
            const double dx = x - r.cx, dy = y - r.cy;
            return dx * dx + dy * dy <= r.radius * r.radius;  // closed ball
        }
        case Region::Kind::CarlesonSquare:
            return in_carleson_square(r.cx, r.cy, x, y);
        case Region::Kind::Shell: {
            const double vj = std::ldexp(r.cy, r.shell_j);
            if (r.shell_j == 0) return in_carleson_square(r.cx, vj, x, y);
            const double vjm = std::ldexp(r.cy, r.shell_j - 1);
            return in_carleson_square(r.cx, vj, x, y) && !in_carleson_square(r.cx, vjm, x, y);
        }
        case Region::Kind::Cone:
            return std::fabs(x) <= y && y > 1.0;
        case Region::Kind::HalfDisc:
            return x * x + y * y < r.radius * r.radius;
    }
    return false;
}

bool region_contains(const Region& r, const HalfPlanePoint& z) {
    return region_contains(r, z.x, z.y);
}

}  // namespace blab
