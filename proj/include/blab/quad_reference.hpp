#pragma once

// Serial reference integrator: plain depth-first recursion with the same
// embedded Gauss/Kronrod tensor rule but local tolerance splitting and no
// shared state. Kept independent of the parallel engine so the two can be
// cross-checked in tests and compared in the benchmark.

#include "blab/quadrature.hpp"

namespace blab::refquad {

struct Result {
    complexd value{0.0, 0.0};
    double err = 0.0;
    long cells = 0;
    bool converged = true;
};

Result integrate_box_serial(const Integrand& f, double x0, double x1, double y0,
                            double y1, double rel_tol, double abs_tol,
                            int max_depth = 24);

// Truncation box [-R, R] x [floor, R], matching integrate_halfplane's domain
// (without tail accounting).
Result integrate_halfplane_serial(const Integrand& f, const QuadConfig& cfg);

}  // namespace blab::refquad
