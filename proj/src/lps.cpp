#include "driftlab/lps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "driftlab/parallel.hpp"

namespace driftlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

Estimate estimate_from(const QuadResult& r, double shift) {
    Estimate e;
    e.value = LogValue::scaled(r.value, shift);
    e.log_error = r.error_estimate > 0 ? std::log(r.error_estimate) - shift : kNegInf;
    return e;
}

void require_separated(const SourceFunction& f, const Point& x) {
    require_same_dim(f.center(), x);
    if (!(f.distance_to_support(x) > 0)) throw DomainError("x must lie outside the support of the source");
}

}  // namespace

SourceFunction SourceFunction::indicator_ball(const Point& center, double radius, bool normalize) {
    if (!(radius > 0) || !std::isfinite(radius)) throw InvalidArgument("source radius must be positive");
    if (!center.finite()) throw InvalidArgument("source center must be finite");
    SourceFunction f;
    f.kind_ = Kind::IndicatorBall;
    f.center_ = center;
    f.radius_ = radius;
    f.normalize_ = normalize;
    return f;
}

SourceFunction SourceFunction::point_masses(const std::vector<std::pair<Point, double>>& masses, bool normalize) {
    if (masses.empty()) throw InvalidArgument("point-mass source needs at least one mass");
    for (const auto& [p, w] : masses) {
        if (p.dim() != masses[0].first.dim()) throw InvalidArgument("point masses have mixed dimensions");
        if (!(w > 0) || !std::isfinite(w)) throw InvalidArgument("point-mass weights must be positive");
        if (!p.finite()) throw InvalidArgument("point-mass locations must be finite");
    }
    SourceFunction f;
    f.kind_ = Kind::PointMasses;
    f.center_ = masses[0].first;
    f.masses_ = masses;
    f.radius_ = 0;
    f.normalize_ = normalize;
    return f;
}

double SourceFunction::raw_mass() const {
    if (kind_ == Kind::IndicatorBall) return mu_ball(center_, radius_);
    double s = 0;
    for (const auto& m : masses_) s += m.second;
    return s;
}

double SourceFunction::amplitude() const { return normalize_ ? scale_ / raw_mass() : scale_; }

SourceFunction SourceFunction::scaled(double s) const {
    if (!(s > 0) || !std::isfinite(s)) throw InvalidArgument("scale must be positive");
    SourceFunction f = *this;
    f.scale_ *= s;
    return f;
}

double SourceFunction::distance_to_support(const Point& x) const {
    if (kind_ == Kind::IndicatorBall) return distance(x, center_) - radius_;
    double d = std::numeric_limits<double>::infinity();
    for (const auto& m : masses_) d = std::min(d, distance(x, m.first));
    return d;
}

OpConfig OpConfig::defaults() {
    OpConfig c;
    c.outer.rel_tol = 1e-7;
    c.inner.rel_tol = 1e-9;
    return c;
}

double source_shift(const SourceFunction& f, const Point& x) {
    const Point& c = f.center();
    if (f.kind() == SourceFunction::Kind::IndicatorBall) return x.x1() - c.x1() + distance(x, c);
    return x.x1() + c.x1() + distance(x, c);
}

QuadResult apply_nat(const SourceFunction& f, const Point& x, const NatKernel& knat, const QuadConfig& cfg) {
    require_same_dim(f.center(), x);
    const Point& c = f.center();
    const double amp = f.amplitude();
    const double dxc = distance(x, c);
    if (f.kind() == SourceFunction::Kind::IndicatorBall) {
        QuadResult r = integrate_ball(
            [&](const Point& y) {
                const double k = knat(y);
                if (k == 0) return 0.0;
                return k * std::exp((y.x1() - c.x1()) + (dxc - distance(x, y)));
            },
            c, f.radius(), cfg);
        r.value *= amp;
        r.error_estimate *= amp;
        r.abs_value *= amp;
        return r;
    }
    const double S = source_shift(f, x);
    QuadResult r;
    for (const auto& [y, w] : f.masses()) {
        const double v = amp * w * knat(y) * std::exp(S - x.x1() - y.x1() - distance(x, y));
        r.value += v;
        r.abs_value += std::fabs(v);
    }
    r.error_estimate = 4 * std::numeric_limits<double>::epsilon() * r.abs_value;
    r.evaluations = static_cast<long>(f.masses().size());
    return r;
}

Estimate heat_semigroup_apply(double t, const SourceFunction& f, const Point& x, const OpConfig& cfg) {
    if (!(t > 0)) throw InvalidArgument("t must be positive");
    const QuadResult r = apply_nat(f, x, [&](const Point& y) { return heat_kernel_nat(t, x, y); }, cfg.inner);
    return estimate_from(r, source_shift(f, x));
}

Estimate riesz_apply(const DriftOperator& D, const SourceFunction& f, const Point& x, const OpConfig& cfg) {
    require_separated(f, x);
    const QuadConfig kcfg = cfg.inner.inner(0.1);
    bool kernel_ok = true;
    QuadResult r = apply_nat(
        f, x,
        [&](const Point& y) {
            const QuadResult k = riesz_kernel_nat(D, x, y, RieszPath::quadrature, kcfg);
            if (!k.ok()) kernel_ok = false;
            return k.value;
        },
        cfg.inner);
    if (!kernel_ok || !r.ok()) throw QuadratureError("Riesz transform quadrature did not converge", r.value, r.error_estimate);
    return estimate_from(r, source_shift(f, x));
}

namespace {

// Value of t^p (S_t-type operator) f(x) times e^{shift}, for one t.
using TimeSlice = std::function<QuadResult(double t)>;

Estimate time_l2(const TimeSlice& J, double power, std::optional<double> laplace, double shift, const OpConfig& cfg) {
    bool inner_ok = true;
    QuadResult r = integrate_halfline(
        [&](double t) {
            const QuadResult s = J(t);
            if (!s.ok()) inner_ok = false;
            const double v = std::pow(t, power) * s.value;
            return v * v / t;
        },
        laplace, cfg.outer);
    if (!inner_ok || !r.ok())
        throw QuadratureError("square-function quadrature did not converge", r.value, r.error_estimate);
    const double v = std::sqrt(std::max(r.value, 0.0));
    QuadResult s;
    s.value = v;
    s.error_estimate = v > 0 ? r.error_estimate / (2 * v) : std::sqrt(r.error_estimate);
    return estimate_from(s, shift);
}

Estimate time_max(const TimeSlice& J, double power, double dist_hint, double shift, const OpConfig& cfg) {
    const double hi = std::max(cfg.t_max, 10 * dist_hint);
    const MaxResult m = maximize_log_t(
        [&](double t) { return std::fabs(std::pow(t, power) * J(t).value); }, cfg.t_min, hi, cfg.points_per_decade);
    QuadResult s;
    s.value = m.value;
    s.error_estimate = m.value * cfg.inner.rel_tol;
    return estimate_from(s, shift);
}

TimeSlice vertical_slice(SemigroupKind kind, const DriftOperator& D, const SourceFunction& f, const Point& x,
                         const OpConfig& cfg) {
    if (kind == SemigroupKind::heat)
        return [&D, &f, x, &cfg](double t) {
            return apply_nat(f, x, [&](const Point& y) { return heat_D_nat(D, t, x, y); }, cfg.inner);
        };
    return [&D, &f, x, &cfg](double t) {
        const QuadConfig ucfg = cfg.inner.inner(0.1);
        return apply_nat(f, x, [&](const Point& y) { return poisson_nat(0, &D, t, x, y, ucfg).value; }, cfg.inner);
    };
}

TimeSlice horizontal_slice(SemigroupKind kind, int k, const SourceFunction& f, const Point& x, const OpConfig& cfg) {
    if (kind == SemigroupKind::heat)
        return [k, &f, x, &cfg](double t) {
            return apply_nat(f, x, [&](const Point& y) { return heat_dt_nat(k, t, x, y); }, cfg.inner);
        };
    return [k, &f, x, &cfg](double t) {
        const QuadConfig ucfg = cfg.inner.inner(0.1);
        return apply_nat(f, x, [&](const Point& y) { return poisson_nat(k, nullptr, t, x, y, ucfg).value; },
                         cfg.inner);
    };
}

}  // namespace

Estimate vertical_sq(SemigroupKind kind, const DriftOperator& D, const SourceFunction& f, const Point& x,
                     const OpConfig& cfg) {
    require_separated(f, x);
    if (D.dim() != x.dim()) throw InvalidArgument("operator dimension does not match the point");
    const double dxc = distance(x, f.center());
    const TimeSlice J = vertical_slice(kind, D, f, x, cfg);
    if (kind == SemigroupKind::heat) return time_l2(J, D.order() / 2.0, dxc / 2, source_shift(f, x), cfg);
    return time_l2(J, D.order(), std::sqrt(dxc), source_shift(f, x), cfg);
}

Estimate horizontal_sq(SemigroupKind kind, int k, const SourceFunction& f, const Point& x, const OpConfig& cfg) {
    require_separated(f, x);
    if (k < 1) throw InvalidArgument("horizontal square functions need k >= 1");
    const double dxc = distance(x, f.center());
    const TimeSlice J = horizontal_slice(kind, k, f, x, cfg);
    const double hint = kind == SemigroupKind::heat ? dxc / 2 : std::sqrt(dxc);
    return time_l2(J, k, hint, source_shift(f, x), cfg);
}

Estimate horizontal_max(SemigroupKind kind, int k, const SourceFunction& f, const Point& x, const OpConfig& cfg) {
    require_separated(f, x);
    if (k < 0) throw InvalidArgument("k must be nonnegative");
    const double dxc = distance(x, f.center());
    const TimeSlice J = horizontal_slice(kind, k, f, x, cfg);
    return time_max(J, k, dxc, source_shift(f, x), cfg);
}

Estimate v_kappa_apply(double kappa, const SourceFunction& f, const Point& x, const OpConfig& cfg) {
    require_same_dim(f.center(), x);
    const int n = x.dim();
    const double amp = f.amplitude();
    if (f.kind() == SourceFunction::Kind::PointMasses) {
        double l = kNegInf;
        for (const auto& [y, w] : f.masses()) {
            const LogValue v = v_kappa_log(kappa, x, y);
            if (v.sign != 0) l = log_add(l, v.log_abs + std::log(amp * w));
        }
        Estimate e;
        e.value = l == kNegInf ? LogValue{} : LogValue{l, 1};
        return e;
    }
    const Point& c = f.center();
    // V e^{2 y_1} e^{2 x_1 - 2 c_1}, bounded on the ball.
    auto g = [&](const Point& y) {
        if (!(x.x1() - y.x1() > 1)) return 0.0;
        const double d = distance(x, y);
        double orth = 0;
        for (int i = 1; i < n; ++i) orth += (x[i] - y[i]) * (x[i] - y[i]);
        return std::exp(0.5 * (kappa - n - 1) * std::log(d) - orth / (4 * d) + 2 * (y.x1() - c.x1()));
    };
    QuadResult r = n == 1 ? integrate([&](double s) { return g(Point{s}); }, c[0] - f.radius(), c[0] + f.radius(),
                                      cfg.inner, {x.x1() - 1})
                          : integrate_ball(g, c, f.radius(), cfg.inner);
    r.value *= amp;
    r.error_estimate *= amp;
    return estimate_from(r, 2 * x.x1() - 2 * c.x1());
}

Estimate t_op_apply(const SourceFunction& g, const Point& x, const OpConfig& cfg) {
    require_same_dim(g.center(), x);
    const int n = x.dim();
    const double amp = g.amplitude();
    auto kern = [&](const Point& y) {
        const double s = x.x1() - y.x1();
        if (!(s > 1)) return 0.0;
        double orth = 0;
        for (int i = 1; i < n; ++i) orth += (x[i] - y[i]) * (x[i] - y[i]);
        if (!(orth < s)) return 0.0;
        return std::pow(s, 0.5 * (1 - n));
    };
    QuadResult r;
    if (g.kind() == SourceFunction::Kind::PointMasses) {
        for (const auto& [y, w] : g.masses()) r.value += amp * w * kern(y);
    } else {
        const Point& c = g.center();
        r = n == 1 ? integrate([&](double s) { return kern(Point{s}); }, c[0] - g.radius(), c[0] + g.radius(),
                               cfg.inner, {x.x1() - 1})
                   : integrate_ball(kern, c, g.radius(), cfg.inner);
        r.value *= amp;
        r.error_estimate *= amp;
    }
    return estimate_from(r, 2 * x.x1());
}

namespace {

double log_cell_measure(const Point& lo, const Point& hi) {
    double l = 2 * hi[0] + std::log(-std::expm1(-2 * (hi[0] - lo[0])) / 2);
    for (int i = 1; i < lo.dim(); ++i) l += std::log(hi[i] - lo[i]);
    return l;
}

}  // namespace

std::vector<double> level_set_log_measures(const LogField& F, const Region& R, const std::vector<double>& log_lambdas,
                                           const LevelSetOptions& opt) {
    if (opt.grid < 1) throw InvalidArgument("level-set grid needs at least one cell per axis");
    const int n = R.dim();
    const int g = opt.grid;
    const Point lo = R.lower(), hi = R.upper();
    Point h(n);
    for (int i = 0; i < n; ++i) h[i] = (hi[i] - lo[i]) / g;

    // Corner values, flattened with axis 0 fastest.
    long ncorner = 1, ncell = 1;
    for (int i = 0; i < n; ++i) {
        ncorner *= g + 1;
        ncell *= g;
    }
    std::vector<long> ids(ncorner);
    for (long i = 0; i < ncorner; ++i) ids[i] = i;
    auto corner_point = [&](long id) {
        Point p(n);
        for (int i = 0; i < n; ++i) {
            p[i] = lo[i] + h[i] * static_cast<double>(id % (g + 1));
            id /= g + 1;
        }
        return p;
    };
    const std::vector<LogValue> corner = parallel_map(ids, [&](long id) { return F(corner_point(id)); }, opt.threads);

    struct Cell {
        Point lo, hi;
        double log_mu;
        std::vector<long> corners;
    };
    std::vector<Cell> cells;
    for (long c = 0; c < ncell; ++c) {
        Cell cell{Point(n), Point(n), 0, {}};
        long rem = c;
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) {
            idx[i] = static_cast<int>(rem % g);
            rem /= g;
            cell.lo[i] = lo[i] + h[i] * idx[i];
            cell.hi[i] = cell.lo[i] + h[i];
        }
        if (!R.contains((cell.lo + cell.hi) * 0.5)) continue;
        cell.log_mu = log_cell_measure(cell.lo, cell.hi);
        for (int mask = 0; mask < (1 << n); ++mask) {
            long id = 0, stride = 1;
            for (int i = 0; i < n; ++i) {
                id += (idx[i] + ((mask >> i) & 1)) * stride;
                stride *= g + 1;
            }
            cell.corners.push_back(id);
        }
        cells.push_back(std::move(cell));
    }

    std::map<std::size_t, std::vector<std::pair<double, LogValue>>> refined;  // cell -> (log mu, value) per subcell
    auto subcells = [&](std::size_t ci) -> const std::vector<std::pair<double, LogValue>>& {
        auto it = refined.find(ci);
        if (it != refined.end()) return it->second;
        std::vector<std::pair<double, LogValue>> out;
        const Cell& cell = cells[ci];
        for (int mask = 0; mask < (1 << n); ++mask) {
            Point a(n), b(n);
            for (int i = 0; i < n; ++i) {
                const double mid = 0.5 * (cell.lo[i] + cell.hi[i]);
                a[i] = ((mask >> i) & 1) ? mid : cell.lo[i];
                b[i] = ((mask >> i) & 1) ? cell.hi[i] : mid;
            }
            out.emplace_back(log_cell_measure(a, b), F((a + b) * 0.5));
        }
        return refined.emplace(ci, std::move(out)).first->second;
    };

    std::vector<double> result;
    for (double ll : log_lambdas) {
        double total = kNegInf;
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            int above = 0;
            for (long id : cells[ci].corners)
                if (corner[id].sign != 0 && corner[id].log_abs > ll) ++above;
            const int nc = static_cast<int>(cells[ci].corners.size());
            if (above == nc) {
                total = log_add(total, cells[ci].log_mu);
            } else if (above > 0) {
                for (const auto& [lm, v] : subcells(ci))
                    if (v.sign != 0 && v.log_abs > ll) total = log_add(total, lm);
            }
        }
        result.push_back(total);
    }
    return result;
}

double t_op_point_level_log_measure(const Point& y0, double log_lambda) {
    const int n = y0.dim();
    // T delta(x) = e^{-2(s + y0_1)} s^{(1-n)/2} with s = x_1 - y0_1 > 1.
    const double target = -log_lambda - 2 * y0.x1();
    auto h = [n](double s) { return 2 * s + 0.5 * (n - 1) * std::log(s); };
    if (!(h(1.0) < target)) return kNegInf;
    double a = 1, b = 2;
    while (h(b) < target) b *= 2;
    for (int i = 0; i < 200 && b - a > 1e-14 * b; ++i) {
        const double m = 0.5 * (a + b);
        (h(m) < target ? a : b) = m;
    }
    const double S = 0.5 * (a + b);
    QuadConfig cfg;
    cfg.rel_tol = 1e-12;
    const QuadResult q = integrate(
        [S, n](double s) { return std::exp(2 * (s - S)) * std::pow(s, 0.5 * (n - 1)); }, 1, S, cfg,
        {std::max(1.0, S - 1), std::max(1.0, S - 5)});
    return 2 * (S + y0.x1()) + std::log(unit_ball_volume(n - 1)) + std::log(q.value);
}

WeakSup t_op_point_weak_sup(const Point& y0) {
    const int n = y0.dim();
    // Parametrize the level by S: log lambda = -2(S + y0_1) - (n-1)/2 log S.
    auto log_lambda_of = [&](double S) { return -2 * (S + y0.x1()) - 0.5 * (n - 1) * std::log(S); };
    const MaxResult m = maximize_log_t(
        [&](double sm1) {
            const double ll = log_lambda_of(1 + sm1);
            return std::exp(ll + t_op_point_level_log_measure(y0, ll));
        },
        1e-3, 1e4, 64);
    return {m.value, log_lambda_of(1 + m.t_best)};
}

}  // namespace driftlab
