#include "blab/quad_reference.hpp"

#include <cmath>

namespace blab::refquad {

namespace {

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

complexd rule(const Integrand& f, double x0, double x1, double y0, double y1,
              double& err) {
    const double xm = 0.5 * (x0 + x1), xh = 0.5 * (x1 - x0);
    const double ym = 0.5 * (y0 + y1), yh = 0.5 * (y1 - y0);
    complexd accK{0.0, 0.0}, accG{0.0, 0.0};
    for (int j = 0; j < kN; ++j) {
        complexd rowK{0.0, 0.0}, rowG{0.0, 0.0};
        const double y = ym + yh * kNode[j];
        for (int i = 0; i < kN; ++i) {
            const complexd v = f(xm + xh * kNode[i], y);
            rowK += kWK[i] * v;
            rowG += kWG[i] * v;
        }
        accK += kWK[j] * rowK;
        accG += kWG[j] * rowG;
    }
    err = std::abs(xh * yh * (accK - accG));
    return xh * yh * accK;
}

void recurse(const Integrand& f, double x0, double x1, double y0, double y1,
             double tol_abs, double rel_tol, int depth, int max_depth, Result& out) {
    double err = 0.0;
    const complexd v = rule(f, x0, x1, y0, y1, err);
    ++out.cells;
    if (err <= std::max(tol_abs, rel_tol * std::abs(v)) || depth >= max_depth) {
        out.value += v;
        out.err += err;
        if (depth >= max_depth && err > std::max(tol_abs, rel_tol * std::abs(v)))
            out.converged = false;
        return;
    }
    const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    // Bisect strongly anisotropic boxes along their long side only.
    if (x1 - x0 > 4.0 * (y1 - y0)) {
        recurse(f, x0, xm, y0, y1, 0.5 * tol_abs, rel_tol, depth + 1, max_depth, out);
        recurse(f, xm, x1, y0, y1, 0.5 * tol_abs, rel_tol, depth + 1, max_depth, out);
        return;
    }
    if (y1 - y0 > 4.0 * (x1 - x0)) {
        recurse(f, x0, x1, y0, ym, 0.5 * tol_abs, rel_tol, depth + 1, max_depth, out);
        recurse(f, x0, x1, ym, y1, 0.5 * tol_abs, rel_tol, depth + 1, max_depth, out);
        return;
    }
    recurse(f, x0, xm, y0, ym, 0.25 * tol_abs, rel_tol, depth + 1, max_depth, out);
    recurse(f, xm, x1, y0, ym, 0.25 * tol_abs, rel_tol, depth + 1, max_depth, out);
    recurse(f, x0, xm, ym, y1, 0.25 * tol_abs, rel_tol, depth + 1, max_depth, out);
    recurse(f, xm, x1, ym, y1, 0.25 * tol_abs, rel_tol, depth + 1, max_depth, out);
}

}  // namespace

Result integrate_box_serial(const Integrand& f, double x0, double x1, double y0,
                            double y1, double rel_tol, double abs_tol, int max_depth) {
    Result out;
    recurse(f, x0, x1, y0, y1, abs_tol, rel_tol, 0, max_depth, out);
    return out;
}

Result integrate_halfplane_serial(const Integrand& f, const QuadConfig& cfg) {
    cfg.validate();
    const double R = cfg.truncation_radius, fl = cfg.boundary_floor;
    Result out;
    // Dyadic y strips mirror the parallel engine's near-boundary grading.
    for (double y = fl; y < R;) {
        const double y1 = std::min(2.0 * y, R);
        Result strip = integrate_box_serial(f, -R, R, y, y1, cfg.rel_tol,
                                            cfg.abs_tol / 64.0, 18);
        out.value += strip.value;
        out.err += strip.err;
        out.cells += strip.cells;
        out.converged = out.converged && strip.converged;
        y = y1;
    }
    return out;
}

}  // namespace blab::refquad
