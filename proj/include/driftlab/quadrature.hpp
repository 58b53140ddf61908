#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "driftlab/types.hpp"

namespace driftlab {

enum class QuadStatus { ok, max_depth_exceeded };

struct QuadResult {
    double value = 0;
    double error_estimate = 0;
    long evaluations = 0;
    QuadStatus status = QuadStatus::ok;
    // Integral of |f|; sets the roundoff floor of the tolerance.
    double abs_value = 0;

    bool ok() const { return status == QuadStatus::ok; }
};

struct QuadConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-300;
    // Maximum bisection level of any panel below its initial width.
    int max_depth = 40;
    // Cap on the number of live panels in one adaptive run.
    int max_panels = 4000;
    bool laplace_split = true;
    // Samples per shift for the quasi-random fallback (n > 4).
    int qmc_points = 20000;
    std::uint64_t seed = 1;

    void validate() const;
    // Config for a nested integral: tighter so that inner errors stay below
    // the outer tolerance.
    QuadConfig inner(double factor = 0.05) const {
        QuadConfig c = *this;
        c.rel_tol = rel_tol * factor;
        return c;
    }
};

using Fn1 = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7/15) on [a, b] split at the given breakpoints.
// Intervals are refined globally in order of largest error.
QuadResult integrate(const Fn1& f, double a, double b, const QuadConfig& cfg,
                     const std::vector<double>& breakpoints = {});

// Integral over (0, inf) after the substitution t = e^u. When laplace_point
// L is given and cfg.laplace_split is set, panel edges are placed at
// L +- (2L)^{3/4} and at geometric offsets around L.
QuadResult integrate_halfline(const Fn1& f, std::optional<double> laplace_point,
                              const QuadConfig& cfg);

// Same, restricted to t in (lo, hi); lo may be 0.
QuadResult integrate_log_interval(const Fn1& f, double lo, double hi, const QuadConfig& cfg,
                                  std::optional<double> laplace_point = std::nullopt);

using FnN = std::function<double(const Point&)>;

// Iterated adaptive integration over an axis-aligned box.
QuadResult integrate_box(const FnN& f, const Point& lo, const Point& hi, const QuadConfig& cfg);

// Integral over the Euclidean ball B(c, r): polar reduction with nested
// adaptive rules for n <= 4, randomized Halton sampling for n > 4.
QuadResult integrate_ball(const FnN& f, const Point& center, double radius, const QuadConfig& cfg);

// Halton sequence value for index i in the given prime base.
double halton(std::uint64_t i, int base);

}  // namespace driftlab
