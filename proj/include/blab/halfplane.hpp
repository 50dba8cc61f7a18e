#pragma once

// Points, logarithmic weights, and regions of the upper half-plane.
// Everything here is an immutable value; all functions are pure.

#include <cmath>
#include <complex>
#include <stdexcept>

namespace blab {

using complexd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// A point z = x + iy with y > 0. Construction rejects y <= 0: every
// downstream formula divides by y or by distances bounded below by y.
struct HalfPlanePoint {
    double x;
    double y;

    HalfPlanePoint(double x_, double y_) : x(x_), y(y_) {
        if (!std::isfinite(x_) || !std::isfinite(y_) || !(y_ > 0.0))
            throw std::domain_error("HalfPlanePoint: need finite x and y > 0");
    }

    complexd z() const { return {x, y}; }
    double modulus() const { return std::hypot(x, y); }
};

inline complexd to_complex(const HalfPlanePoint& p) { return {p.x, p.y}; }

// max(ln t, 0) for t > 0.
double ln_plus(double t);

namespace detail {
// ln_plus extended by ln_plus(0) = 0; used where an inner ln_plus may vanish.
inline double ln_plus0(double t) {
    return t > 1.0 ? std::log(t) : 0.0;
}
}  // namespace detail

// The base weight 1 + ln+(1/y) + ln+|z|.
inline double omega(double x, double y) {
    double w = 1.0;
    if (y < 1.0) w += std::log(1.0 / y);
    const double r2 = x * x + y * y;
    if (r2 > 1.0) w += 0.5 * std::log(r2);
    return w;
}
inline double omega(const HalfPlanePoint& p) { return omega(p.x, p.y); }

inline double omega_pow(double x, double y, double k) {
    if (k == 0.0) return 1.0;
    const double w = omega(x, y);
    return k == 1.0 ? w : std::pow(w, k);
}

struct WeightSpec {
    enum class Kind { OmegaPow, General, Rho, LogLog };

    Kind kind = Kind::OmegaPow;
    double k = 1.0;             // exponent (OmegaPow, General, Rho)
    double s = 0.0;             // outer-log exponent (General)
    bool eps[4] = {false, false, false, false};

    static WeightSpec omega_pow(double k) {
        WeightSpec w;
        w.kind = Kind::OmegaPow;
        w.k = k;
        return w;
    }
    // (ln^{e1}(e+|z|) + ln^{e2}(e+1/y))^k * [ln(e + ln^{e3}(e+|z|) + ln^{e4}(e+1/y))]^s
    // where ln^0(t) = 1 and ln^1(t) = ln t.
    static WeightSpec general(bool e1, bool e2, bool e3, bool e4, double k, double s) {
        WeightSpec w;
        w.kind = Kind::General;
        w.k = k;
        w.s = s;
        w.eps[0] = e1;
        w.eps[1] = e2;
        w.eps[2] = e3;
        w.eps[3] = e4;
        return w;
    }
    static WeightSpec rho(double k) {
        WeightSpec w;
        w.kind = Kind::Rho;
        w.k = k;
        return w;
    }
    static WeightSpec loglog() {
        WeightSpec w;
        w.kind = Kind::LogLog;
        return w;
    }
};

double eval_weight(const WeightSpec& w, const HalfPlanePoint& z);
double eval_weight(const WeightSpec& w, double x, double y);

// Closed form of the integral of (ln s)^k / s over [2, t], t >= 2.
double log_power_integral(double k, double t);

// Limit of log_power_integral(k, t) as t -> infinity; finite only for k < -1.
double log_power_integral_limit(double k);

struct Region {
    enum class Kind { Ball, CarlesonSquare, Shell, Cone, HalfDisc };

    Kind kind = Kind::HalfDisc;
    double cx = 0.0, cy = 1.0;  // ball center or square/shell base point w = u + iv
    double radius = 1.0;        // ball radius or half-disc radius
    int shell_j = 0;

    // Balls are used as atom supports and quadrature domains; they must sit
    // inside the open half-plane.
    static Region ball(const HalfPlanePoint& center, double r) {
        if (!(r > 0.0) || !(r <= center.y))
            throw std::domain_error("Region::ball: need 0 < radius <= center.y");
        Region g;
        g.kind = Kind::Ball;
        g.cx = center.x;
        g.cy = center.y;
        g.radius = r;
        return g;
    }
    // Q_{u+iv} = (u-v, u+v) x (0, 2v).
    static Region carleson_square(const HalfPlanePoint& w) {
        Region g;
        g.kind = Kind::CarlesonSquare;
        g.cx = w.x;
        g.cy = w.y;
        return g;
    }
    // Shell(w, j) = Q_{w_j} \ Q_{w_{j-1}} with w_j = u + i 2^j v; Shell(w, 0) = Q_w.
    static Region shell(const HalfPlanePoint& w, int j) {
        if (j < 0) throw std::domain_error("Region::shell: need j >= 0");
        Region g;
        g.kind = Kind::Shell;
        g.cx = w.x;
        g.cy = w.y;
        g.shell_j = j;
        return g;
    }
    // The set {|x| <= y, y > 1}.
    static Region cone() {
        Region g;
        g.kind = Kind::Cone;
        return g;
    }
    static Region half_disc(double R) {
        if (!(R > 0.0)) throw std::domain_error("Region::half_disc: need R > 0");
        Region g;
        g.kind = Kind::HalfDisc;
        g.radius = R;
        return g;
    }
};

bool region_contains(const Region& r, const HalfPlanePoint& z);
bool region_contains(const Region& r, double x, double y);

}  // namespace blab
