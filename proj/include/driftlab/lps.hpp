#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "driftlab/diffop.hpp"
#include "driftlab/kernels.hpp"
#include "driftlab/space.hpp"

namespace driftlab {

// f = amplitude * indicator of a Euclidean ball, or a finite sum of point
// masses. With normalize set, f is divided by its L^1(mu) mass. Point masses
// pair with a kernel directly: int K f d mu = sum_i w_i K(x, y_i).
class SourceFunction {
public:
    enum class Kind { IndicatorBall, PointMasses };

    static SourceFunction indicator_ball(const Point& center, double radius, bool normalize = false);
    static SourceFunction point_masses(const std::vector<std::pair<Point, double>>& masses, bool normalize = false);

    Kind kind() const { return kind_; }
    int dim() const { return center_.dim(); }
    const Point& center() const { return center_; }
    double radius() const { return radius_; }
    const std::vector<std::pair<Point, double>>& masses() const { return masses_; }
    bool normalized() const { return normalize_; }

    // L^1(mu) mass of the unnormalized source (sum of weights for masses).
    double raw_mass() const;
    // Overall multiplier: scale / raw_mass() when normalized, else scale.
    double amplitude() const;
    SourceFunction scaled(double s) const;
    // Distance from x to the closed support.
    double distance_to_support(const Point& x) const;

private:
    Kind kind_ = Kind::IndicatorBall;
    Point center_;
    double radius_ = 1;
    std::vector<std::pair<Point, double>> masses_;
    bool normalize_ = false;
    double scale_ = 1;
};

struct OpConfig {
    QuadConfig outer{};  // time integrals
    QuadConfig inner{};  // spatial integral per time value
    int points_per_decade = 64;
    double t_min = 1e-3, t_max = 1e4;

    static OpConfig defaults();
};

// Kernel given at natural scale: K(x, y) e^{x_1 + y_1 + |x - y|}.
using NatKernel = std::function<double(const Point& y)>;

// Returns (int K f d mu) e^{S} where S = source_shift(f, x).
QuadResult apply_nat(const SourceFunction& f, const Point& x, const NatKernel& knat, const QuadConfig& cfg);
double source_shift(const SourceFunction& f, const Point& x);

Estimate heat_semigroup_apply(double t, const SourceFunction& f, const Point& x, const OpConfig& cfg = OpConfig::defaults());
Estimate riesz_apply(const DriftOperator& D, const SourceFunction& f, const Point& x,
                     const OpConfig& cfg = OpConfig::defaults());

enum class SemigroupKind { heat, poisson };

// (int_0^inf |t^{k/2} D e^{t Delta} f(x)|^2 dt/t)^{1/2}, or with t^k D P_t for the Poisson kind.
Estimate vertical_sq(SemigroupKind kind, const DriftOperator& D, const SourceFunction& f, const Point& x,
                     const OpConfig& cfg = OpConfig::defaults());
// (int_0^inf |t^k d_t^k S_t f(x)|^2 dt/t)^{1/2}, S_t heat or Poisson.
Estimate horizontal_sq(SemigroupKind kind, int k, const SourceFunction& f, const Point& x,
                       const OpConfig& cfg = OpConfig::defaults());
// sup_t |t^k d_t^k S_t f(x)|
Estimate horizontal_max(SemigroupKind kind, int k, const SourceFunction& f, const Point& x,
                        const OpConfig& cfg = OpConfig::defaults());

Estimate v_kappa_apply(double kappa, const SourceFunction& f, const Point& x, const OpConfig& cfg = OpConfig::defaults());
// T g(x) = e^{-2x_1} int_{y_1 < x_1 - 1, |x'-y'| < sqrt(x_1 - y_1)} (x_1 - y_1)^{(1-n)/2} g(y) dy.
// Indicator sources are integrated against dy here, not d mu.
Estimate t_op_apply(const SourceFunction& g, const Point& x, const OpConfig& cfg = OpConfig::defaults());

// Level-set measures log mu{x in R : |F(x)| > lambda}: corner values on a
// tensor grid over the bounding box, cells straddling the level refined
// once into 2^n subcells. Cells count when their center lies in R.
struct LevelSetOptions {
    int grid = 24;
    int threads = 1;
};
using LogField = std::function<LogValue(const Point&)>;
std::vector<double> level_set_log_measures(const LogField& F, const Region& R, const std::vector<double>& log_lambdas,
                                           const LevelSetOptions& opt = {});

// T applied to a unit point mass at y0: the level set {T delta > lambda} is
// {1 < x_1 - y0_1 < S, |x' - y0'| < sqrt(x_1 - y0_1)} in closed form.
double t_op_point_level_log_measure(const Point& y0, double log_lambda);
struct WeakSup {
    double sup = 0;         // sup_lambda lambda mu{T delta > lambda}
    double log_lambda = 0;  // where it is attained
};
WeakSup t_op_point_weak_sup(const Point& y0);

}  // namespace driftlab
