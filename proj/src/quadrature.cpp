#include "blab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace blab {

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0) || !(rel_tol < 0.5))
        throw std::invalid_argument("QuadConfig: rel_tol must lie in (0, 0.5)");
    if (!(abs_tol > 0.0))
        throw std::invalid_argument("QuadConfig: abs_tol must be positive");
    if (max_depth < 4 || max_depth > 60)
        throw std::invalid_argument("QuadConfig: max_depth must lie in [4, 60]");
    if (!(truncation_radius >= 10.0))
        throw std::invalid_argument("QuadConfig: truncation_radius must be >= 10");
    if (!(boundary_floor > 0.0) || boundary_floor > 1e-6 * truncation_radius)
        throw std::invalid_argument(
            "QuadConfig: boundary_floor must be in (0, 1e-6 * truncation_radius]");
    if (max_cells < 1024)
        throw std::invalid_argument("QuadConfig: max_cells too small");
    if (tail_decay && !(*tail_decay > 0.0))
        throw std::invalid_argument("QuadConfig: tail_decay must be positive");
    for (const auto& [x, s] : features) {
        if (!std::isfinite(x) || !(s > 0.0))
            throw std::invalid_argument("QuadConfig: bad feature hint");
    }
}

namespace detail {

complexd pairwise_sum(const std::vector<complexd>& v) {
    if (v.empty()) return {0.0, 0.0};
    std::vector<complexd> a = v;
    std::size_t n = a.size();
    while (n > 1) {
        const std::size_t m = (n + 1) / 2;
        for (std::size_t i = 0; i < n / 2; ++i) a[i] = a[2 * i] + a[2 * i + 1];
        if (n & 1) a[n / 2] = a[n - 1];
        n = m;
    }
    return a[0];
}

double pairwise_sum(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    std::vector<double> a = v;
    std::size_t n = a.size();
    while (n > 1) {
        const std::size_t m = (n + 1) / 2;
        for (std::size_t i = 0; i < n / 2; ++i) a[i] = a[2 * i] + a[2 * i + 1];
        if (n & 1) a[n / 2] = a[n - 1];
        n = m;
    }
    return a[0];
}

}  // namespace detail

namespace {

// Gauss(7)/Kronrod(15) on [-1, 1]; the Gauss nodes sit at the odd indices.
constexpr int kN = 15;
constexpr double kNode[kN] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double kWK[kN] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double kWG[kN] = {
    0.0, 0.129484966168870, 0.0, 0.279705391489277, 0.0, 0.381830050505119, 0.0,
    0.417959183673469,
    0.0, 0.381830050505119, 0.0, 0.279705391489277, 0.0, 0.129484966168870, 0.0};

constexpr int kSub = 16;  // straddling cells: 16x16 stratified subsamples

struct Chart {
    enum class Kind { Cartesian, Polar, Trapezoid };
    Kind kind = Kind::Cartesian;
    double cx = 0.0, cy = 0.0;  // polar center

    inline void map(double s, double t, double& x, double& y, double& J) const {
        switch (kind) {
            case Kind::Cartesian:
                x = s;
                y = t;
                J = 1.0;
                return;
            case Kind::Polar:
                x = cx + s * std::cos(t);
                y = cy + s * std::sin(t);
                J = s;
                return;
            case Kind::Trapezoid:  // cone chart: x = s t, y = t
                x = s * t;
                y = t;
                J = t;
                return;
        }
        x = s;
        y = t;
        J = 1.0;
    }

    // Physical extents of a cell, used to pick the split axis.
    inline void extents(double s0, double s1, double t0, double t1, double& es,
                        double& et) const {
        const double ds = s1 - s0, dt = t1 - t0;
        switch (kind) {
            case Kind::Cartesian:
                es = ds;
                et = dt;
                return;
            case Kind::Polar:
                es = ds;
                et = dt * std::max(0.5 * (s0 + s1), ds);
                return;
            case Kind::Trapezoid:
                es = ds * 0.5 * (t0 + t1);
                et = dt;
                return;
        }
        es = ds;
        et = dt;
    }
};

struct Cell {
    double s0, s1, t0, t1;
    complexd val{0.0, 0.0};
    double err = 0.0;
    int root = 0;
    int depth = 0;
};

struct GeomLess {
    bool operator()(const Cell& a, const Cell& b) const {
        if (a.root != b.root) return a.root < b.root;
        if (a.t0 != b.t0) return a.t0 < b.t0;
        if (a.s0 != b.s0) return a.s0 < b.s0;
        if (a.t1 != b.t1) return a.t1 < b.t1;
        return a.s1 < b.s1;
    }
};

inline complexd safe_eval(const Integrand& f, double x, double y) {
    const complexd v = f(x, y);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return {0.0, 0.0};
    return v;
}

void eval_cell(Cell& c, const Integrand& f, const MaskFn& mask, const Chart& chart) {
    const double sm = 0.5 * (c.s0 + c.s1), sh = 0.5 * (c.s1 - c.s0);
    const double tm = 0.5 * (c.t0 + c.t1), th = 0.5 * (c.t1 - c.t0);

    bool straddle = false;
    if (mask) {
        int inside = 0, total = 0;
        auto probe = [&](double s, double t) {
            double x, y, J;
            chart.map(s, t, x, y, J);
            if (y > 0.0 && mask(x, y)) ++inside;
            ++total;
        };
        for (int j = 0; j < kN; j += 2)
            for (int i = 0; i < kN; i += 2) probe(sm + sh * kNode[i], tm + th * kNode[j]);
        probe(c.s0, c.t0);
        probe(c.s1, c.t0);
        probe(c.s0, c.t1);
        probe(c.s1, c.t1);
        if (inside == 0) {
            c.val = {0.0, 0.0};
            c.err = 0.0;
            return;
        }
        straddle = (inside != total);
    }

    if (straddle) {
        // Stratified midpoint subsampling with an embedded coarse estimate.
        complexd a16{0.0, 0.0}, a8{0.0, 0.0};
        double fmax = 0.0;
        int mixed_blocks = 0;
        const double ds = (c.s1 - c.s0) / kSub, dt = (c.t1 - c.t0) / kSub;
        for (int jb = 0; jb < kSub / 2; ++jb) {
            for (int ib = 0; ib < kSub / 2; ++ib) {
                int block_in = 0;
                complexd acc{0.0, 0.0};
                for (int dj = 0; dj < 2; ++dj) {
                    for (int di = 0; di < 2; ++di) {
                        const int i = 2 * ib + di, j = 2 * jb + dj;
                        const double s = c.s0 + (i + 0.5) * ds;
                        const double t = c.t0 + (j + 0.5) * dt;
                        double x, y, J;
                        chart.map(s, t, x, y, J);
                        if (y > 0.0 && mask(x, y)) {
                            const complexd v = safe_eval(f, x, y) * J;
                            acc += v;
                            fmax = std::max(fmax, std::abs(v));
                            ++block_in;
                            if (di == 1 && dj == 1) a8 += v;
                        }
                    }
                }
                a16 += acc;
                if (block_in != 0 && block_in != 4) ++mixed_blocks;
            }
        }
        const double area = (c.s1 - c.s0) * (c.t1 - c.t0);
        c.val = area * a16 / double(kSub * kSub);
        const double disagreement =
            std::abs(area * (a16 / double(kSub * kSub) - a8 / double(kSub * kSub / 4)));
        // mixed blocks carry an unresolved boundary sliver each
        const double geom =
            area * fmax * double(mixed_blocks) / double(kSub * kSub / 2);
        c.err = disagreement + geom;
        return;
    }

    complexd accK{0.0, 0.0}, accG{0.0, 0.0};
    for (int j = 0; j < kN; ++j) {
        const double t = tm + th * kNode[j];
        complexd rowK{0.0, 0.0}, rowG{0.0, 0.0};
        for (int i = 0; i < kN; ++i) {
            const double s = sm + sh * kNode[i];
            double x, y, J;
            chart.map(s, t, x, y, J);
            if (!(y > 0.0)) continue;
            if (mask && !mask(x, y)) continue;  // fully-inside cells skip this
            const complexd v = safe_eval(f, x, y) * J;
            rowK += kWK[i] * v;
            rowG += kWG[i] * v;
        }
        accK += kWK[j] * rowK;
        accG += kWG[j] * rowG;
    }
    c.val = sh * th * accK;
    c.err = std::abs(sh * th * (accK - accG));
}

struct EngineResult {
    complexd value{0.0, 0.0};
    double err = 0.0;
    long cells = 0;
    bool refinable_left = true;
};

EngineResult run_adaptive(const Integrand& f, const MaskFn& mask, const Chart& chart,
                          std::vector<Cell> cells, const QuadConfig& cfg,
                          double external_err) {
    const long n0 = static_cast<long>(cells.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (long i = 0; i < n0; ++i) eval_cell(cells[i], f, mask, chart);

    auto totals = [&](complexd& value, double& err) {
        std::vector<std::size_t> order(cells.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return GeomLess{}(cells[a], cells[b]);
        });
        std::vector<complexd> vs(cells.size());
        std::vector<double> es(cells.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            vs[k] = cells[order[k]].val;
            es[k] = cells[order[k]].err;
        }
        value = detail::pairwise_sum(vs);
        err = detail::pairwise_sum(es);
    };

    complexd value;
    double err;
    bool refinable = true;
    for (int round = 0; round < 4000; ++round) {
        totals(value, err);
        const double budget = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
        const double excess = err + external_err - budget;
        if (excess <= 0.0) break;
        if (external_err > 0.9 * budget) {  // refinement cannot fix the tail
            refinable = false;
            break;
        }
        if (static_cast<long>(cells.size()) >= cfg.max_cells) {
            refinable = false;
            break;
        }

        std::vector<std::size_t> cand;
        double splittable = 0.0;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].depth < cfg.max_depth && cells[i].err > 0.0) {
                cand.push_back(i);
                splittable += cells[i].err;
            }
        }
        if (cand.empty() || splittable <= 0.0) {
            refinable = false;
            break;
        }
        std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
            if (cells[a].err != cells[b].err) return cells[a].err > cells[b].err;
            return GeomLess{}(cells[a], cells[b]);
        });
        const double goal = std::min(splittable, std::max(1.25 * excess, 0.05 * splittable));
        std::vector<std::size_t> selected;
        double got = 0.0;
        const long room = cfg.max_cells - static_cast<long>(cells.size());
        for (std::size_t i : cand) {
            if (static_cast<long>(selected.size()) >= room) break;
            selected.push_back(i);
            got += cells[i].err;
            if (got >= goal && !selected.empty()) break;
        }
        if (selected.empty()) {
            refinable = false;
            break;
        }

        std::vector<Cell> children(2 * selected.size());
        for (std::size_t k = 0; k < selected.size(); ++k) {
            const Cell& p = cells[selected[k]];
            double es, et;
            chart.extents(p.s0, p.s1, p.t0, p.t1, es, et);
            Cell a = p, b = p;
            a.depth = b.depth = p.depth + 1;
            if (es >= et) {
                const double m = 0.5 * (p.s0 + p.s1);
                a.s1 = m;
                b.s0 = m;
            } else {
                const double m = 0.5 * (p.t0 + p.t1);
                a.t1 = m;
                b.t0 = m;
            }
            children[2 * k] = a;
            children[2 * k + 1] = b;
        }
        const long nc = static_cast<long>(children.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
        for (long i = 0; i < nc; ++i) eval_cell(children[i], f, mask, chart);

        // replace parents with children
        std::vector<char> dead(cells.size(), 0);
        for (std::size_t i : selected) dead[i] = 1;
        std::vector<Cell> next;
        next.reserve(cells.size() - selected.size() + children.size());
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!dead[i]) next.push_back(cells[i]);
        for (auto& ch : children) next.push_back(ch);
        cells.swap(next);
    }

    totals(value, err);
    EngineResult r;
    r.value = value;
    r.err = err;
    r.cells = static_cast<long>(cells.size());
    r.refinable_left = refinable;
    return r;
}

// ---- root builders ----------------------------------------------------------

std::vector<double> merge_boundaries(std::vector<double> b, double lo, double hi) {
    b.push_back(lo);
    b.push_back(hi);
    for (auto& v : b) v = std::min(hi, std::max(lo, v));
    std::sort(b.begin(), b.end());
    std::vector<double> out;
    for (double v : b) {
        if (out.empty() ||
            v - out.back() > 1e-12 * (std::fabs(v) + std::fabs(out.back())) + 1e-300)
            out.push_back(v);
    }
    if (out.size() < 2) out = {lo, hi};
    out.front() = lo;
    out.back() = hi;
    return out;
}

// Dyadic boundaries around 0 and around each feature point.
std::vector<double> x_boundaries(double lo, double hi,
                                 const std::vector<std::pair<double, double>>& features) {
    std::vector<double> b;
    const double span = hi - lo;
    for (double v = 1.0; v < std::max(std::fabs(lo), std::fabs(hi)); v *= 2.0) {
        if (v > lo && v < hi) b.push_back(v);
        if (-v > lo && -v < hi) b.push_back(-v);
    }
    if (lo < 0.0 && hi > 0.0) b.push_back(0.0);
    for (const auto& [xf, sc0] : features) {
        if (xf < lo || xf > hi) continue;
        const double sc = std::max(sc0, 1e-14 * (std::fabs(xf) + 1.0));
        b.push_back(xf);
        for (double v = sc; v < span; v *= 2.0) {
            if (xf + v < hi) b.push_back(xf + v);
            if (xf - v > lo) b.push_back(xf - v);
        }
    }
    return merge_boundaries(std::move(b), lo, hi);
}

std::vector<double> dyadic_up(double lo, double hi) {
    std::vector<double> b;
    for (double v = 2.0 * lo; v < hi; v *= 2.0) b.push_back(v);
    return merge_boundaries(std::move(b), lo, hi);
}

std::vector<Cell> roots_from_bins(const std::vector<double>& xs,
                                  const std::vector<double>& ys) {
    std::vector<Cell> roots;
    roots.reserve((xs.size() - 1) * (ys.size() - 1));
    int id = 0;
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            Cell c;
            c.s0 = xs[i];
            c.s1 = xs[i + 1];
            c.t0 = ys[j];
            c.t1 = ys[j + 1];
            c.root = id++;
            roots.push_back(c);
        }
    }
    return roots;
}

// ---- tail accounting --------------------------------------------------------

// Heuristic integral of r^{1-p} (ln r)^q over (R, infinity).
double tail_integral(double p, double q, double R) {
    const double lR = std::log(R);
    if (p > 2.0) {
        double mult = 1.0 + q / ((p - 2.0) * lR);
        mult = std::min(std::max(mult, 0.3), 3.0);
        if (q > 0.0) mult = std::max(mult, 1.0);
        return std::pow(R, 2.0 - p) * std::pow(lR, q) / (p - 2.0) * mult;
    }
    if (p == 2.0 && q < -1.0) return std::pow(lR, q + 1.0) / (-(q + 1.0));
    return std::numeric_limits<double>::infinity();
}

struct TailInfo {
    double bound = 0.0;
    bool from_decay = false;
};

TailInfo estimate_tail(const Integrand& f, const QuadConfig& cfg) {
    const double R = cfg.truncation_radius;
    auto ring_max = [&](double r) {
        double m = 0.0;
        for (int a = 1; a <= 24; ++a) {
            const double th = kPi * a / 25.0;
            m = std::max(m, std::abs(safe_eval(f, r * std::cos(th), r * std::sin(th))));
        }
        return m;
    };
    const double m1 = ring_max(R), m2 = ring_max(2.0 * R), m3 = ring_max(4.0 * R);
    if (cfg.tail_decay) {
        const double p = *cfg.tail_decay, q = cfg.tail_log_power;
        auto pref = [&](double r, double m) {
            return m * std::pow(r, p) / std::pow(std::log(r), q);
        };
        const double C =
            std::max(pref(R, m1), std::max(pref(2.0 * R, m2), pref(4.0 * R, m3)));
        if (C == 0.0) return {0.0, true};
        return {kPi * C * tail_integral(p, q, R), true};
    }
    // No declared model: sample the decay and report a non-rigorous bound.
    if (m1 <= 0.0 && m2 <= 0.0) return {0.0, false};
    if (kPi * m1 * R * R < 0.01 * cfg.abs_tol) return {kPi * m1 * R * R, false};
    if (!(m1 > 0.0) || !(m2 > 0.0))
        return {std::numeric_limits<double>::infinity(), false};
    const double phat = std::log(m1 / m2) / std::log(2.0);
    if (!(phat > 2.2)) return {std::numeric_limits<double>::infinity(), false};
    const double C = m1 * std::pow(R, phat);
    return {kPi * C * std::pow(R, 2.0 - phat) / (phat - 2.0), false};
}

IntegrationResult finish(const EngineResult& er, const QuadConfig& cfg, double tail,
                         bool tail_from_decay) {
    IntegrationResult r;
    r.value = er.value;
    r.err_estimate = er.err;
    r.cells = er.cells;
    r.tail_bound = tail;
    r.tail_from_decay = tail_from_decay;
    const double budget = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value));
    r.converged = std::isfinite(tail) && (er.err + tail <= budget);
    return r;
}

}  // namespace

IntegrationResult integrate_halfplane(const Integrand& f, const QuadConfig& cfg) {
    cfg.validate();
    const double R = cfg.truncation_radius, fl = cfg.boundary_floor;
    const TailInfo tail = estimate_tail(f, cfg);
    Chart chart;  // Cartesian
    auto roots = roots_from_bins(x_boundaries(-R, R, cfg.features), dyadic_up(fl, R));
    const EngineResult er = run_adaptive(f, MaskFn(), chart, std::move(roots), cfg,
                                         std::isfinite(tail.bound) ? tail.bound : 0.0);
    return finish(er, cfg, tail.bound, tail.from_decay);
}

IntegrationResult integrate_box(const Integrand& f, double x0, double x1, double y0,
                                double y1, const QuadConfig& cfg, const MaskFn& mask) {
    cfg.validate();
    if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("integrate_box: empty box");
    const double ylo = std::max(y0, cfg.boundary_floor);
    if (!(y1 > ylo)) return IntegrationResult{{0.0, 0.0}, 0.0, 0, 0.0, false, true};
    std::vector<double> ys =
        (y1 / ylo > 64.0) ? dyadic_up(ylo, y1)
                          : merge_boundaries({ylo, 0.5 * (ylo + y1)}, ylo, y1);
    std::vector<double> xs = x_boundaries(x0, x1, cfg.features);
    Chart chart;
    const EngineResult er =
        run_adaptive(f, mask, chart, roots_from_bins(xs, ys), cfg, 0.0);
    return finish(er, cfg, 0.0, false);
}

IntegrationResult integrate_ball(const Integrand& f, const HalfPlanePoint& center,
                                 double radius, const QuadConfig& cfg) {
    cfg.validate();
    if (!(radius > 0.0) || !(radius <= center.y))
        throw std::domain_error("integrate_ball: ball must sit inside the half-plane");
    Chart chart;
    chart.kind = Chart::Kind::Polar;
    chart.cx = center.x;
    chart.cy = center.y;
    std::vector<double> ss, ts;
    for (int i = 0; i <= 4; ++i) ss.push_back(radius * i / 4.0);
    for (int j = 0; j <= 8; ++j) ts.push_back(2.0 * kPi * j / 8.0);
    const EngineResult er =
        run_adaptive(f, MaskFn(), chart, roots_from_bins(ss, ts), cfg, 0.0);
    return finish(er, cfg, 0.0, false);
}

IntegrationResult integrate_region(const Integrand& f, const Region& r,
                                   const QuadConfig& cfg, const MaskFn& mask) {
    cfg.validate();
    switch (r.kind) {
        case Region::Kind::Ball:
            return integrate_ball(f, HalfPlanePoint(r.cx, r.cy), r.radius, cfg);
        case Region::Kind::CarlesonSquare:
            return integrate_box(f, r.cx - r.cy, r.cx + r.cy, 0.0, 2.0 * r.cy, cfg, mask);
        case Region::Kind::Shell: {
            if (r.shell_j == 0)
                return integrate_box(f, r.cx - r.cy, r.cx + r.cy, 0.0, 2.0 * r.cy, cfg, mask);
            // Q_{w_j} \ Q_{w_{j-1}} splits into two flanks and a top slab.
            const double vj = std::ldexp(r.cy, r.shell_j);
            const double vm = std::ldexp(r.cy, r.shell_j - 1);
            const IntegrationResult left =
                integrate_box(f, r.cx - vj, r.cx - vm, 0.0, 2.0 * vm, cfg, mask);
            const IntegrationResult right =
                integrate_box(f, r.cx + vm, r.cx + vj, 0.0, 2.0 * vm, cfg, mask);
            const IntegrationResult top =
                integrate_box(f, r.cx - vj, r.cx + vj, 2.0 * vm, 2.0 * vj, cfg, mask);
            IntegrationResult out;
            out.value = left.value + right.value + top.value;
            out.err_estimate = left.err_estimate + right.err_estimate + top.err_estimate;
            out.cells = left.cells + right.cells + top.cells;
            out.converged = left.converged && right.converged && top.converged;
            return out;
        }
        case Region::Kind::Cone: {
            Chart chart;
            chart.kind = Chart::Kind::Trapezoid;
            std::vector<double> ss = {-1.0, -0.5, 0.0, 0.5, 1.0};
            std::vector<double> ts = dyadic_up(1.0, cfg.truncation_radius);
            const EngineResult er =
                run_adaptive(f, mask, chart, roots_from_bins(ss, ts), cfg, 0.0);
            return finish(er, cfg, 0.0, false);
        }
        case Region::Kind::HalfDisc: {
            Chart chart;
            chart.kind = Chart::Kind::Polar;
            std::vector<double> ss;
            double v = r.radius;
            ss.push_back(v);
            for (int i = 0; i < 46 && v > 1e-12 * r.radius; ++i) {
                v *= 0.5;
                ss.push_back(v);
            }
            ss.push_back(0.0);
            std::sort(ss.begin(), ss.end());
            std::vector<double> ts;
            for (int j = 0; j <= 8; ++j) ts.push_back(kPi * j / 8.0);
            const EngineResult er =
                run_adaptive(f, mask, chart, roots_from_bins(ss, ts), cfg, 0.0);
            return finish(er, cfg, 0.0, false);
        }
    }
    throw std::invalid_argument("integrate_region: unknown region kind");
}

SupResult sup_search(const Objective& g, const QuadConfig& cfg, int grid_density) {
    cfg.validate();
    const double R = cfg.truncation_radius, fl = cfg.boundary_floor;
    const int ny = std::max(12, grid_density);
    const int nx = std::max(12, grid_density);

    std::vector<double> ys(ny), xmag(nx);
    for (int j = 0; j < ny; ++j)
        ys[j] = fl * std::pow(R / fl, double(j) / double(ny - 1));
    const double x0 = 1e-6;
    for (int i = 0; i < nx; ++i)
        xmag[i] = x0 * std::pow(R / x0, double(i) / double(nx - 1));
    std::vector<double> xs;
    xs.reserve(2 * nx + 1 + cfg.features.size());
    for (int i = nx - 1; i >= 0; --i) xs.push_back(-xmag[i]);
    xs.push_back(0.0);
    for (int i = 0; i < nx; ++i) xs.push_back(xmag[i]);
    for (const auto& [xf, sc] : cfg.features) {
        (void)sc;
        if (std::fabs(xf) <= R) xs.push_back(xf);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    struct Pt {
        double v, x, y;
    };
    const long total = static_cast<long>(xs.size()) * ny;
    std::vector<Pt> grid(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long idx = 0; idx < total; ++idx) {
        const double x = xs[idx % xs.size()];
        const double y = ys[idx / xs.size()];
        double v = g(x, y);
        if (!std::isfinite(v)) v = -std::numeric_limits<double>::infinity();
        grid[idx] = {v, x, y};
    }

    std::vector<long> order(total);
    std::iota(order.begin(), order.end(), 0L);
    std::sort(order.begin(), order.end(), [&](long a, long b) {
        if (grid[a].v != grid[b].v) return grid[a].v > grid[b].v;
        if (grid[a].y != grid[b].y) return grid[a].y < grid[b].y;
        return grid[a].x < grid[b].x;
    });

    auto separated = [&](const Pt& a, const Pt& b) {
        const double dy = std::fabs(std::log(a.y / b.y));
        const double sc = 0.5 * (a.y + b.y) + std::fabs(a.x) + std::fabs(b.x) + 1e-12;
        const double dx = std::fabs(a.x - b.x) / sc;
        return dy + dx > 0.7;
    };
    std::vector<Pt> starts;
    for (long idx : order) {
        if (!std::isfinite(grid[idx].v)) break;
        bool ok = true;
        for (const Pt& s : starts)
            if (!separated(grid[idx], s)) {
                ok = false;
                break;
            }
        if (ok) starts.push_back(grid[idx]);
        if (starts.size() >= 12) break;
    }

    Pt best = starts.empty() ? Pt{g(0.0, 1.0), 0.0, 1.0} : starts.front();
    for (const Pt& s0 : starts) {
        double x = s0.x, y = s0.y, v = s0.v;
        double dx = 0.5 * std::max(std::fabs(x), y);
        double du = 0.45;
        for (int it = 0; it < 200 && du > 1e-8; ++it) {
            bool moved = false;
            const double cx[4] = {x + dx, x - dx, x, x};
            const double cy[4] = {y, y, std::min(R, y * std::exp(du)),
                                  std::max(fl, y * std::exp(-du))};
            for (int k = 0; k < 4; ++k) {
                const double xx = std::min(R, std::max(-R, cx[k]));
                const double vv = g(xx, cy[k]);
                if (std::isfinite(vv) && vv > v) {
                    v = vv;
                    x = xx;
                    y = cy[k];
                    moved = true;
                }
            }
            if (!moved) {
                dx *= 0.5;
                du *= 0.5;
            } else {
                dx = std::max(dx, 0.25 * std::max(std::fabs(x), y) * du);
            }
        }
        if (v > best.v || (v == best.v && (y < best.y || (y == best.y && x < best.x)))) {
            best = {v, x, y};
        }
    }

    SupResult out;
    out.sup = std::max(best.v, 0.0);
    out.witness = HalfPlanePoint(best.x, std::max(best.y, fl));
    out.on_hull =
        best.y <= 1.5 * fl || best.y >= R / 1.5 || std::fabs(best.x) >= R / 1.5;
    return out;
}

}  // namespace blab
