#include "driftlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

namespace driftlab {

void QuadConfig::validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw InvalidArgument("quadrature tolerances must be positive");
    if (max_depth < 1 || max_panels < 1) throw InvalidArgument("quadrature limits must be positive");
    if (qmc_points < 16) throw InvalidArgument("qmc_points must be at least 16");
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod 15-point nodes/weights and the embedded Gauss 7-point weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value, error, abs_value;
    int depth;
};

// QUADPACK-style error estimate for one G7K15 panel.
Panel gk15(const Fn1& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::fabs(resk);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        f1[j] = f(c - dx);
        f2[j] = f(c + dx);
        const double s = f1[j] + f2[j];
        resk += kWgk[j] * s;
        resabs += kWgk[j] * (std::fabs(f1[j]) + std::fabs(f2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * s;
    }
    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::fabs(f1[j] - mean) + std::fabs(f2[j] - mean));

    double err = std::fabs((resk - resg) * h);
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);
    if (resasc != 0 && err != 0) err = resasc * std::min(1.0, std::pow(200 * err / resasc, 1.5));
    if (resabs > std::numeric_limits<double>::min() / (50 * kEps)) err = std::max(50 * kEps * resabs, err);
    if (!std::isfinite(resk)) throw QuadratureError("integrand is not finite on the panel", resk, err);
    return {a, b, resk * h, err, resabs, depth};
}

struct ByError {
    bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

// Global adaptive refinement of an initial panel set.
QuadResult adapt(const Fn1& f, const std::vector<double>& edges, const QuadConfig& cfg) {
    std::priority_queue<Panel, std::vector<Panel>, ByError> live;
    std::vector<Panel> frozen;
    double total = 0, total_err = 0, total_abs = 0;
    long evals = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!(edges[i + 1] > edges[i])) continue;
        Panel p = gk15(f, edges[i], edges[i + 1], 0);
        evals += 15;
        total += p.value;
        total_err += p.error;
        total_abs += p.abs_value;
        live.push(p);
    }
    auto tolerance = [&] {
        return std::max({cfg.abs_tol, cfg.rel_tol * std::fabs(total), 50 * kEps * total_abs});
    };
    while (!live.empty() && total_err > tolerance()) {
        if (static_cast<int>(live.size() + frozen.size()) >= cfg.max_panels) break;
        Panel p = live.top();
        live.pop();
        if (p.depth >= cfg.max_depth) {
            frozen.push_back(p);
            continue;
        }
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {
            frozen.push_back(p);
            continue;
        }
        Panel l = gk15(f, p.a, m, p.depth + 1);
        Panel r = gk15(f, m, p.b, p.depth + 1);
        evals += 30;
        total += l.value + r.value - p.value;
        total_err += l.error + r.error - p.error;
        total_abs += l.abs_value + r.abs_value - p.abs_value;
        live.push(l);
        live.push(r);
    }
    // Re-sum in position order so the result does not depend on heap layout.
    std::vector<Panel> all = std::move(frozen);
    while (!live.empty()) {
        all.push_back(live.top());
        live.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    QuadResult res;
    for (const Panel& p : all) {
        res.value += p.value;
        res.error_estimate += p.error;
        res.abs_value += p.abs_value;
    }
    res.evaluations = std::max(evals, 1L);
    const double tol = std::max({cfg.abs_tol, cfg.rel_tol * std::fabs(res.value), 50 * kEps * res.abs_value});
    res.status = res.error_estimate <= tol ? QuadStatus::ok : QuadStatus::max_depth_exceeded;
    return res;
}

std::vector<double> sorted_unique(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

QuadResult integrate(const Fn1& f, double a, double b, const QuadConfig& cfg,
                     const std::vector<double>& breakpoints) {
    cfg.validate();
    if (!(std::isfinite(a) && std::isfinite(b))) throw InvalidArgument("integration limits must be finite");
    double sign = 1;
    if (b < a) {
        std::swap(a, b);
        sign = -1;
    }
    if (a == b) return {0, 0, 1, QuadStatus::ok, 0};
    std::vector<double> edges{a, b};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    QuadResult r = adapt(f, sorted_unique(edges), cfg);
    r.value *= sign;
    return r;
}

namespace {

// Edges on the u = log t axis: unit panels over the core, Laplace seeds, then
// width-2 panels outward until two consecutive ones carry nothing.
std::vector<double> halfline_edges(const Fn1& g, std::optional<double> laplace_point, double ulo_cap,
                                   double uhi_cap, const QuadConfig& cfg, long& evals) {
    constexpr double kCap = 300;
    double lo = std::max(-8.0, ulo_cap), hi = std::min(8.0, uhi_cap);
    std::vector<double> edges;
    if (laplace_point && *laplace_point > 0 && cfg.laplace_split) {
        const double L = *laplace_point;
        const double ul = std::log(L);
        const double w = std::pow(2 * L, 0.75);
        edges.push_back(ul);
        if (L - w > 0) edges.push_back(std::log(L - w));
        edges.push_back(std::log(L + w));
        // The peak has width about 1/sqrt(L) on the log axis.
        const double sigma = 1 / std::sqrt(std::max(L, 1e-300));
        for (double s = sigma; s < 3; s *= 2) {
            edges.push_back(ul - s);
            edges.push_back(ul + s);
        }
        lo = std::min(lo, ul - 3);
        hi = std::max(hi, ul + 3);
    }
    lo = std::max(lo, ulo_cap);
    hi = std::min(hi, uhi_cap);
    if (hi <= lo) {
        // Interval lies entirely outside the core window.
        if (uhi_cap < -8) {
            hi = uhi_cap;
            lo = std::max(ulo_cap, hi - 2);
        } else {
            lo = ulo_cap;
            hi = std::min(uhi_cap, lo + 2);
        }
    }
    const double step = std::max(1.0, (hi - lo) / 64);
    for (double u = std::floor(lo); u <= hi; u += step)
        if (u > lo) edges.push_back(u);
    edges.push_back(lo);
    edges.push_back(hi);
    std::vector<double> core;
    for (double e : edges)
        if (e >= lo && e <= hi) core.push_back(e);
    core = sorted_unique(core);

    double scale = 0;
    for (std::size_t i = 0; i + 1 < core.size(); ++i) {
        Panel p = gk15(g, core[i], core[i + 1], 0);
        evals += 15;
        scale += p.abs_value;
    }
    auto negligible = [&](const Panel& p) {
        return p.abs_value <= std::max(cfg.abs_tol, 1e-3 * cfg.rel_tol * scale);
    };
    int quiet = 0;
    while (quiet < 2 && lo > std::max(ulo_cap, -kCap)) {
        const double next = std::max(lo - 2, std::max(ulo_cap, -kCap));
        Panel p = gk15(g, next, lo, 0);
        evals += 15;
        scale += p.abs_value;
        quiet = negligible(p) ? quiet + 1 : 0;
        lo = next;
        core.push_back(lo);
    }
    quiet = 0;
    while (quiet < 2 && hi < std::min(uhi_cap, kCap)) {
        const double next = std::min(hi + 2, std::min(uhi_cap, kCap));
        Panel p = gk15(g, hi, next, 0);
        evals += 15;
        scale += p.abs_value;
        quiet = negligible(p) ? quiet + 1 : 0;
        hi = next;
        core.push_back(hi);
    }
    return sorted_unique(core);
}

}  // namespace

QuadResult integrate_log_interval(const Fn1& f, double lo, double hi, const QuadConfig& cfg,
                                  std::optional<double> laplace_point) {
    cfg.validate();
    if (!(lo >= 0) || !(hi > lo)) throw InvalidArgument("need 0 <= lo < hi");
    const Fn1 g = [&f](double u) {
        const double t = std::exp(u);
        if (t == 0 || !std::isfinite(t)) return 0.0;
        return f(t) * t;
    };
    const double ulo = lo > 0 ? std::log(lo) : -std::numeric_limits<double>::infinity();
    const double uhi = std::isfinite(hi) ? std::log(hi) : std::numeric_limits<double>::infinity();
    long evals = 0;
    std::vector<double> edges = halfline_edges(g, laplace_point, ulo, uhi, cfg, evals);
    QuadResult r = adapt(g, edges, cfg);
    r.evaluations += evals;
    return r;
}

QuadResult integrate_halfline(const Fn1& f, std::optional<double> laplace_point, const QuadConfig& cfg) {
    return integrate_log_interval(f, 0, std::numeric_limits<double>::infinity(), cfg, laplace_point);
}

namespace {

// Integrate over coordinates [dim, n) of the box with earlier ones fixed in p.
QuadResult box_rec(const FnN& f, Point& p, int dim, const Point& lo, const Point& hi, const QuadConfig& cfg,
                   double& worst_inner_rel, long& evals, bool& inner_failed) {
    const int n = p.dim();
    if (dim == n - 1) {
        QuadResult r = integrate(
            [&](double s) {
                p[dim] = s;
                return f(p);
            },
            lo[dim], hi[dim], cfg);
        evals += r.evaluations;
        return r;
    }
    const QuadConfig icfg = cfg.inner();
    QuadResult r = integrate(
        [&](double s) {
            p[dim] = s;
            QuadResult in = box_rec(f, p, dim + 1, lo, hi, icfg, worst_inner_rel, evals, inner_failed);
            if (!in.ok()) inner_failed = true;
            if (in.abs_value > 0) worst_inner_rel = std::max(worst_inner_rel, in.error_estimate / in.abs_value);
            p[dim] = s;
            return in.value;
        },
        lo[dim], hi[dim], cfg);
    return r;
}

}  // namespace

QuadResult integrate_box(const FnN& f, const Point& lo, const Point& hi, const QuadConfig& cfg) {
    cfg.validate();
    require_same_dim(lo, hi);
    for (int i = 0; i < lo.dim(); ++i)
        if (!(hi[i] >= lo[i])) throw InvalidArgument("box corners out of order");
    Point p = lo;
    double worst = 0;
    long evals = 0;
    bool inner_failed = false;
    QuadResult r = box_rec(f, p, 0, lo, hi, cfg, worst, evals, inner_failed);
    r.evaluations = std::max(evals, 1L);
    r.error_estimate += worst * r.abs_value;
    if (inner_failed) r.status = QuadStatus::max_depth_exceeded;
    return r;
}

double halton(std::uint64_t i, int base) {
    double f = 1, r = 0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

namespace {

// Unit sphere S^{m-1} in R^m parametrized by m-1 angles; the first angle is
// measured from the first axis so the drift direction is the polar axis.
void sphere_point(const double* ang, int m, double* out) {
    double s = 1;
    for (int i = 0; i < m - 1; ++i) {
        const bool last = (i == m - 2);
        out[i] = s * std::cos(ang[i]);
        if (last) {
            out[i + 1] = s * std::sin(ang[i]);
        } else {
            s *= std::sin(ang[i]);
        }
    }
    if (m == 1) out[0] = 1;
}

QuadResult ball_qmc(const FnN& f, const Point& c, double r, const QuadConfig& cfg) {
    static constexpr int kPrimes[kMaxDim] = {2, 3, 5, 7, 11, 13, 17, 19};
    const int n = c.dim();
    constexpr int kShifts = 8;
    std::mt19937_64 rng(cfg.seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<double> means;
    long evals = 0;
    for (int s = 0; s < kShifts; ++s) {
        std::array<double, kMaxDim> shift{};
        for (int d = 0; d < n; ++d) shift[d] = uniform();
        double acc = 0;
        for (int i = 1; i <= cfg.qmc_points; ++i) {
            Point p(n);
            double rr = 0;
            for (int d = 0; d < n; ++d) {
                double u = halton(static_cast<std::uint64_t>(i), kPrimes[d]) + shift[d];
                u -= std::floor(u);
                p[d] = 2 * u - 1;
                rr += p[d] * p[d];
            }
            if (rr > 1) continue;
            acc += f(c + p * r);
            ++evals;
        }
        // Points outside the ball contribute zero to the box average.
        means.push_back(acc / cfg.qmc_points * std::pow(2 * r, n));
    }
    double mean = 0;
    for (double m : means) mean += m;
    mean /= kShifts;
    double var = 0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= (kShifts - 1);
    QuadResult res;
    res.value = mean;
    res.error_estimate = 3 * std::sqrt(var / kShifts);
    res.abs_value = std::fabs(mean);
    res.evaluations = std::max(evals, 1L);
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(mean));
    res.status = res.error_estimate <= tol ? QuadStatus::ok : QuadStatus::max_depth_exceeded;
    return res;
}

}  // namespace

QuadResult integrate_ball(const FnN& f, const Point& center, double radius, const QuadConfig& cfg) {
    cfg.validate();
    if (!(radius > 0) || !std::isfinite(radius)) throw InvalidArgument("ball radius must be positive");
    const int n = center.dim();
    if (n == 1) {
        return integrate([&](double s) { return f(Point{s}); }, center[0] - radius, center[0] + radius, cfg);
    }
    if (n > 4) return ball_qmc(f, center, radius, cfg);

    // Coordinates: (rho, angle_1, ..., angle_{n-1}); Jacobian
    // rho^{n-1} prod_i sin(angle_i)^{n-1-i}, last angle over [0, 2 pi].
    Point lo(n), hi(n);
    lo[0] = 0;
    hi[0] = radius;
    for (int i = 1; i < n; ++i) {
        lo[i] = 0;
        hi[i] = (i == n - 1) ? 2 * M_PI : M_PI;
    }
    const FnN g = [&](const Point& q) {
        const double rho = q[0];
        std::array<double, kMaxDim> ang{}, dir{};
        double jac = std::pow(rho, n - 1);
        for (int i = 1; i < n; ++i) {
            ang[i - 1] = q[i];
            if (i < n - 1) jac *= std::pow(std::sin(q[i]), n - 1 - i);
        }
        sphere_point(ang.data(), n, dir.data());
        Point y(n);
        for (int d = 0; d < n; ++d) y[d] = center[d] + rho * dir[d];
        return jac * f(y);
    };
    return integrate_box(g, lo, hi, cfg);
}

}  // namespace driftlab
