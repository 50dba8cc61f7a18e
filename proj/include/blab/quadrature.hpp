#pragma once

// Adaptive 2-D integration over the (truncated) upper half-plane and friends.
//
// The engine subdivides dyadic rectangles in a chart parameter space, applies
// an embedded Gauss(7)/Kronrod(15) tensor rule per cell, and refines the cells
// with the largest disagreement until the global budget
//     err_estimate + tail_bound <= max(abs_tol, rel_tol * |value|)
// is met. Cell batches are processed with OpenMP; the final value is a
// pairwise sum over cells in a canonical order, so results do not depend on
// the thread count or scheduling.

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "blab/halfplane.hpp"

namespace blab {

struct QuadConfig {
    double rel_tol = 1e-5;
    double abs_tol = 1e-10;
    int max_depth = 40;
    double truncation_radius = 1e4;
    double boundary_floor = 1e-8;
    // Declared far-field model |f(z)| ~ C |z|^{-tail_decay} (ln|z|)^{tail_log_power}
    // for |z| beyond the truncation radius. When absent the tail is sampled and
    // reported as non-rigorous.
    std::optional<double> tail_decay;
    double tail_log_power = 0.0;
    long max_cells = 400000;
    // (x position, length scale) hints; root cells are graded dyadically
    // around each feature so narrow peaks are never missed by coarse roots.
    std::vector<std::pair<double, double>> features;

    void validate() const;  // throws std::invalid_argument

    QuadConfig with_tol(double rel, double abs) const {
        QuadConfig c = *this;
        c.rel_tol = rel;
        c.abs_tol = abs;
        return c;
    }
    QuadConfig with_tail(double p, double q = 0.0) const {
        QuadConfig c = *this;
        c.tail_decay = p;
        c.tail_log_power = q;
        return c;
    }
    QuadConfig with_feature(double x, double scale) const {
        QuadConfig c = *this;
        c.features.emplace_back(x, scale);
        return c;
    }
};

struct IntegrationResult {
    complexd value{0.0, 0.0};
    double err_estimate = 0.0;
    long cells = 0;
    double tail_bound = 0.0;
    bool tail_from_decay = false;  // tail came from the declared decay model
    bool converged = false;

    double real() const { return value.real(); }
    double abs() const { return std::abs(value); }
};

using Integrand = std::function<complexd(double x, double y)>;
using MaskFn = std::function<bool(double x, double y)>;

// Wraps a real-valued integrand.
template <class F>
Integrand real_integrand(F fn) {
    return Integrand([fn = std::move(fn)](double x, double y) {
        return complexd(fn(x, y), 0.0);
    });
}

// Integral over the truncation box [-R, R] x [floor, R] plus tail accounting
// for the exterior (the box covers the half-disc {|z|<R, y>floor}).
IntegrationResult integrate_halfplane(const Integrand& f, const QuadConfig& cfg);

// Integral over an explicit box, optionally masked by a membership predicate.
// Cells straddling the mask boundary are subdivided and finally subsampled.
IntegrationResult integrate_box(const Integrand& f, double x0, double x1, double y0,
                                double y1, const QuadConfig& cfg,
                                const MaskFn& mask = MaskFn());

// Integral over a ball contained in the half-plane (polar chart, no mask).
IntegrationResult integrate_ball(const Integrand& f, const HalfPlanePoint& center,
                                 double radius, const QuadConfig& cfg);

// Integral clipped to a region. Balls, Carleson squares, shells, the cone and
// half-discs all get exact chart parametrizations; no tail is added (the
// region itself is the domain, truncated at the configured radius for the
// unbounded cone). An extra mask further clips the domain when given.
IntegrationResult integrate_region(const Integrand& f, const Region& r,
                                   const QuadConfig& cfg, const MaskFn& mask = MaskFn());

struct SupResult {
    double sup = 0.0;
    HalfPlanePoint witness{0.0, 1.0};
    bool on_hull = false;  // maximizer sits on the search boundary
};

using Objective = std::function<double(double x, double y)>;

// Multi-start coarse log-polar grid followed by compass refinement. Always
// returns the best value found (a lower bound on the true sup).
SupResult sup_search(const Objective& g, const QuadConfig& cfg, int grid_density = 48);

namespace detail {
// Deterministic pairwise (tree) reduction; order of `v` must be canonical.
complexd pairwise_sum(const std::vector<complexd>& v);
double pairwise_sum(const std::vector<double>& v);
}  // namespace detail

}  // namespace blab
