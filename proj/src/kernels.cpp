#include "driftlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace driftlab {

namespace {

// log of p_t(x, y) e^{x_1 + y_1 + |x-y|}
double log_heat_nat(double t, int n, double d) {
    const double st = std::sqrt(t);
    const double gap = st - d / (2 * st);
    return -0.5 * n * std::log(4 * M_PI * t) - gap * gap;
}

void check_t(double t) {
    if (!(t > 0) || !std::isfinite(t)) throw InvalidArgument("t must be positive and finite");
}

void check_points(const Point& x, const Point& y) {
    require_same_dim(x, y);
    if (!x.finite() || !y.finite()) throw InvalidArgument("points must be finite");
}

double natural_shift(const Point& x, const Point& y) { return x.x1() + y.x1() + distance(x, y); }

Estimate to_estimate(const QuadResult& r, double shift) {
    Estimate e;
    e.value = LogValue::scaled(r.value, shift);
    e.log_error = r.error_estimate > 0 ? std::log(r.error_estimate) - shift
                                       : -std::numeric_limits<double>::infinity();
    return e;
}

double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

double heat_kernel_form(double t, const Point& x, const Point& y, int form) {
    check_t(t);
    check_points(x, y);
    const int n = x.dim();
    const double pre = std::pow(4 * M_PI * t, -0.5 * n);
    if (form == 1) return pre * std::exp(-x.x1() - y.x1() - t - distance_sq(x, y) / (4 * t));
    if (form == 2) {
        const double d = distance(x, y);
        const double w = d / (2 * t) - 1;
        return pre * std::exp(-x.x1() - y.x1() - d) * std::exp(-t * w * w);
    }
    throw InvalidArgument("heat kernel form must be 1 or 2");
}

double heat_kernel(double t, const Point& x, const Point& y) {
    const double v = heat_kernel_form(t, x, y, 1);
    if (v >= std::numeric_limits<double>::min()) return v;
    return heat_kernel_form(t, x, y, 2);
}

LogValue heat_kernel_log(double t, const Point& x, const Point& y) {
    check_t(t);
    check_points(x, y);
    return {log_heat_nat(t, x.dim(), distance(x, y)) - natural_shift(x, y), 1};
}

double heat_kernel_nat(double t, const Point& x, const Point& y) {
    check_t(t);
    check_points(x, y);
    return std::exp(log_heat_nat(t, x.dim(), distance(x, y)));
}

QkPoly QkPoly::build(int k, int n) {
    if (k < 0) throw InvalidArgument("time-derivative order must be nonnegative");
    if (n < 1 || n > kMaxDim) throw InvalidArgument("dimension must be in [1, 8]");
    QkPoly q;
    q.k_ = k;
    q.n_ = n;
    q.by_u_ = {LaurentPoly::constant(1)};
    const LaurentPoly u_factor = LaurentPoly::monomial(-2, 0.25);
    const LaurentPoly rest = LaurentPoly({{0.0, -1.0}, {-1.0, -0.5 * n}});
    for (int step = 0; step < k; ++step) {
        std::vector<LaurentPoly> next(q.by_u_.size() + 1);
        for (std::size_t i = 0; i < q.by_u_.size(); ++i) {
            const LaurentPoly& L = q.by_u_[i];
            next[i] = next[i] + L.derivative() + L * rest;
            next[i + 1] = next[i + 1] + L * u_factor;
        }
        q.by_u_ = std::move(next);
    }
    return q;
}

double QkPoly::operator()(double u, double t) const {
    double s = 0, up = 1;
    for (const LaurentPoly& L : by_u_) {
        s += up * L(t);
        up *= u;
    }
    return s;
}

double QkPoly::coefficient(int u_power, double t_power) const {
    if (u_power < 0 || u_power >= static_cast<int>(by_u_.size())) return 0;
    return by_u_[u_power].coefficient(t_power);
}

QkPoly qk_polynomial(int k, int n) { return QkPoly::build(k, n); }

const QkPoly& qk_cached(int k, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<QkPoly>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{k, n}];
    if (!slot) slot = std::make_unique<QkPoly>(QkPoly::build(k, n));
    return *slot;
}

double heat_dt(int k, double t, const Point& x, const Point& y) {
    return qk_cached(k, x.dim())(distance_sq(x, y), t) * heat_kernel(t, x, y);
}

LogValue heat_dt_log(int k, double t, const Point& x, const Point& y) {
    const LogValue p = heat_kernel_log(t, x, y);
    LogValue q = LogValue::from(qk_cached(k, x.dim())(distance_sq(x, y), t));
    if (q.sign != 0) q.log_abs += p.log_abs;
    return q;
}

double heat_dt_nat(int k, double t, const Point& x, const Point& y) {
    return qk_cached(k, x.dim())(distance_sq(x, y), t) * heat_kernel_nat(t, x, y);
}

double heat_dx_factor(const MultiIndex& alpha, double t, const Point& x, const Point& y) {
    check_t(t);
    check_points(x, y);
    if (alpha.dim() != x.dim()) throw InvalidArgument("multi-index dimension does not match the points");
    const double c = -1 / (2 * std::sqrt(t));
    const double inv = 1 / (2 * std::sqrt(t));
    const int a1 = alpha[0];
    const double z1 = (x[0] - y[0]) * inv;
    // Leibniz over e^{-x_1} and the Gaussian in x_1.
    double first = 0, cj = 1;
    for (int j = 0; j <= a1; ++j) {
        const double sgn = ((a1 - j) % 2 == 0) ? 1.0 : -1.0;
        first += binomial(a1, j) * sgn * cj * hermite(j, z1);
        cj *= c;
    }
    double rest = 1;
    for (int i = 1; i < x.dim(); ++i) {
        if (alpha[i] == 0) continue;
        rest *= std::pow(c, alpha[i]) * hermite(alpha[i], (x[i] - y[i]) * inv);
    }
    return first * rest;
}

double heat_dx(const MultiIndex& alpha, double t, const Point& x, const Point& y) {
    return heat_dx_factor(alpha, t, x, y) * heat_kernel(t, x, y);
}

LogValue heat_dx_log(const MultiIndex& alpha, double t, const Point& x, const Point& y) {
    const LogValue p = heat_kernel_log(t, x, y);
    LogValue f = LogValue::from(heat_dx_factor(alpha, t, x, y));
    if (f.sign != 0) f.log_abs += p.log_abs;
    return f;
}

double heat_dx_nat(const MultiIndex& alpha, double t, const Point& x, const Point& y) {
    return heat_dx_factor(alpha, t, x, y) * heat_kernel_nat(t, x, y);
}

double heat_D_nat(const DriftOperator& D, double t, const Point& x, const Point& y) {
    if (D.dim() != x.dim()) throw InvalidArgument("operator dimension does not match the points");
    double f = 0;
    for (const auto& [alpha, a] : D.terms()) f += a * heat_dx_factor(alpha, t, x, y);
    return f * heat_kernel_nat(t, x, y);
}

Estimate frac_power_kernel_est(int k, const Point& x, const Point& y, const QuadConfig& cfg) {
    check_points(x, y);
    if (k < 1) throw InvalidArgument("k must be a positive integer");
    const double d = distance(x, y);
    if (d == 0) throw DomainError("fractional-power kernel is singular at x = y");
    const int n = x.dim();
    QuadResult b = b_nu_scaled((k - n) / 2.0, d, cfg);
    const double pre = std::pow(4 * M_PI, -0.5 * n) / std::tgamma(k / 2.0);
    b.value *= pre;
    b.error_estimate *= pre;
    return to_estimate(b, natural_shift(x, y));
}

double frac_power_kernel(int k, const Point& x, const Point& y) {
    return frac_power_kernel_est(k, x, y).value.value();
}

namespace {

// int_0^inf t^s D_x p_t dt/t at natural scale.
QuadResult time_integral_nat(const DriftOperator& D, double s, const Point& x, const Point& y,
                             const QuadConfig& cfg) {
    const double d = distance(x, y);
    const int n = x.dim();
    return integrate_halfline(
        [&](double t) {
            double f = 0;
            for (const auto& [alpha, a] : D.terms()) f += a * heat_dx_factor(alpha, t, x, y);
            if (f == 0) return 0.0;
            return f * std::exp((s - 1) * std::log(t) + log_heat_nat(t, n, d));
        },
        d / 2, cfg);
}

QuadResult riesz_expansion_nat(const DriftOperator& D, const Point& x, const Point& y, const QuadConfig& cfg) {
    const int n = x.dim();
    const int k = D.order();
    const double d = distance(x, y);
    std::map<int, QuadResult> bcache;  // keyed by 2*nu
    auto bscaled = [&](int two_nu) -> const QuadResult& {
        auto it = bcache.find(two_nu);
        if (it == bcache.end()) it = bcache.emplace(two_nu, b_nu_scaled(two_nu / 2.0, d, cfg)).first;
        return it->second;
    };
    std::vector<std::vector<double>> hc(k + 1);
    for (int j = 0; j <= k; ++j) hc[j] = hermite_coeffs(j);
    const Point diff = x - y;

    double total = 0, abs_total = 0, err = 0;
    for (const auto& [alpha, a] : D.terms()) {
        const int a1 = alpha[0];
        for (int j = 0; j <= a1; ++j) {
            // Multi-index (j, alpha'); enumerate gamma <= it with nonzero Hermite coefficients.
            MultiIndex at = alpha;
            at[0] = j;
            const int ord = at.order();
            const double lead = a * binomial(a1, j) * (((a1 - j) % 2 == 0) ? 1.0 : -1.0) *
                                ((ord % 2 == 0) ? 1.0 : -1.0) * std::pow(2.0, -ord);
            std::vector<int> g(n, 0);
            while (true) {
                double c = lead;
                int gsum = 0;
                for (int i = 0; i < n && c != 0; ++i) {
                    c *= hc[at[i]][g[i]];
                    if (g[i] > 0) c *= std::pow(diff[i], g[i]);
                    gsum += g[i];
                }
                if (c != 0) {
                    c *= std::pow(2.0, -gsum);
                    const QuadResult& b = bscaled(k - n - ord - gsum);
                    total += c * b.value;
                    abs_total += std::fabs(c * b.value);
                    err += std::fabs(c) * b.error_estimate;
                }
                int i = 0;
                while (i < n && ++g[i] > at[i]) g[i++] = 0;
                if (i == n) break;
            }
        }
    }
    const double pre = std::pow(4 * M_PI, -0.5 * n) / std::tgamma(k / 2.0);
    QuadResult r;
    r.value = pre * total;
    r.error_estimate = pre * (err + 8 * std::numeric_limits<double>::epsilon() * abs_total);
    r.abs_value = pre * abs_total;
    long evals = 0;
    bool ok = true;
    for (const auto& [key, b] : bcache) {
        evals += b.evaluations;
        ok = ok && b.ok();
    }
    r.evaluations = std::max(evals, 1L);
    r.status = ok ? QuadStatus::ok : QuadStatus::max_depth_exceeded;
    return r;
}

}  // namespace

QuadResult riesz_kernel_nat(const DriftOperator& D, const Point& x, const Point& y, RieszPath path,
                            const QuadConfig& cfg) {
    check_points(x, y);
    if (D.dim() != x.dim()) throw InvalidArgument("operator dimension does not match the points");
    if (distance(x, y) == 0) throw DomainError("Riesz kernel is singular at x = y");
    if (path == RieszPath::expansion) return riesz_expansion_nat(D, x, y, cfg);
    QuadResult r = time_integral_nat(D, D.order() / 2.0, x, y, cfg);
    const double g = std::tgamma(D.order() / 2.0);
    r.value /= g;
    r.error_estimate /= g;
    r.abs_value /= g;
    return r;
}

Estimate riesz_kernel_est(const DriftOperator& D, const Point& x, const Point& y, RieszPath path,
                          const QuadConfig& cfg) {
    const QuadResult r = riesz_kernel_nat(D, x, y, path, cfg);
    if (!r.ok()) throw QuadratureError("Riesz kernel quadrature did not reach tolerance", r.value, r.error_estimate);
    return to_estimate(r, natural_shift(x, y));
}

double riesz_kernel(const DriftOperator& D, const Point& x, const Point& y, RieszPath path) {
    return riesz_kernel_est(D, x, y, path).value.value();
}

std::vector<QuadResult> riesz_grad_y_nat(const DriftOperator& D, const Point& x, const Point& y,
                                         const QuadConfig& cfg) {
    check_points(x, y);
    if (distance(x, y) == 0) throw DomainError("Riesz kernel is singular at x = y");
    const double s = D.order() / 2.0;
    const double g = std::tgamma(s);
    std::vector<QuadResult> out;
    const QuadResult base = time_integral_nat(D, s, x, y, cfg);
    for (int j = 0; j < x.dim(); ++j) {
        // d_{y_j} p_t = -d_{x_j} p_t - 2 delta_{j1} p_t
        QuadResult r = time_integral_nat(D.then_partial(j), s, x, y, cfg);
        r.value = -r.value;
        if (j == 0) {
            r.value -= 2 * base.value;
            r.error_estimate += 2 * base.error_estimate;
        }
        r.value /= g;
        r.error_estimate /= g;
        out.push_back(r);
    }
    return out;
}

QuadResult poisson_nat(int time_order, const DriftOperator* D, double t, const Point& x, const Point& y,
                       const QuadConfig& cfg) {
    check_t(t);
    check_points(x, y);
    if (time_order < 0) throw InvalidArgument("time-derivative order must be nonnegative");
    if (D && D->dim() != x.dim()) throw InvalidArgument("operator dimension does not match the points");
    const int n = x.dim();
    const double d = distance(x, y);
    const double A = std::hypot(d, t);
    const double sign = (time_order % 2 == 0) ? 1.0 : -1.0;
    const double c = sign / (2 * std::sqrt(M_PI));
    // e^{d - A} = e^{-t^2/(d + A)} moves the result from the e^{-A} scale to the natural one.
    const double to_nat = std::exp(-t * t / (d + A));
    QuadResult r = integrate_halfline(
        [&](double u) {
            const double su = std::sqrt(u);
            const double s = t / (2 * su);
            double f = c * hermite(time_order + 1, s) * std::pow(2 * su, -time_order);
            if (D) {
                double g = 0;
                for (const auto& [alpha, a] : D->terms()) g += a * heat_dx_factor(alpha, u, x, y);
                f *= g;
            }
            if (f == 0) return 0.0;
            const double gap = su - A / (2 * su);
            return f * std::exp(-0.5 * n * std::log(4 * M_PI * u) - gap * gap) / u;
        },
        A / 2, cfg);
    r.value *= to_nat;
    r.error_estimate *= to_nat;
    r.abs_value *= to_nat;
    return r;
}

Estimate poisson_kernel_est(double t, const Point& x, const Point& y, const QuadConfig& cfg) {
    const QuadResult r = poisson_nat(0, nullptr, t, x, y, cfg);
    if (!r.ok()) throw QuadratureError("Poisson kernel quadrature did not reach tolerance", r.value, r.error_estimate);
    return to_estimate(r, natural_shift(x, y));
}

double poisson_kernel(double t, const Point& x, const Point& y) { return poisson_kernel_est(t, x, y).value.value(); }

Estimate poisson_dx_est(const DriftOperator& D, double t, const Point& x, const Point& y, const QuadConfig& cfg) {
    const QuadResult r = poisson_nat(0, &D, t, x, y, cfg);
    if (!r.ok()) throw QuadratureError("Poisson derivative quadrature did not reach tolerance", r.value, r.error_estimate);
    return to_estimate(r, natural_shift(x, y));
}

double poisson_dx(const DriftOperator& D, double t, const Point& x, const Point& y) {
    return poisson_dx_est(D, t, x, y).value.value();
}

Estimate poisson_dt_est(int k, double t, const Point& x, const Point& y, const QuadConfig& cfg) {
    const QuadResult r = poisson_nat(k, nullptr, t, x, y, cfg);
    if (!r.ok()) throw QuadratureError("Poisson derivative quadrature did not reach tolerance", r.value, r.error_estimate);
    return to_estimate(r, natural_shift(x, y));
}

LogValue v_kappa_log(double kappa, const Point& x, const Point& y) {
    check_points(x, y);
    if (!(x.x1() - y.x1() > 1)) return {};
    const int n = x.dim();
    const double d = distance(x, y);
    double orth = 0;
    for (int i = 1; i < n; ++i) orth += (x[i] - y[i]) * (x[i] - y[i]);
    return {-2 * x.x1() + 0.5 * (kappa - n - 1) * std::log(d) - orth / (4 * d), 1};
}

double v_kappa_kernel(double kappa, const Point& x, const Point& y) { return v_kappa_log(kappa, x, y).value(); }

namespace {

QuadResult sqrt_result(QuadResult r) {
    const double v = std::sqrt(std::max(r.value, 0.0));
    r.error_estimate = v > 0 ? r.error_estimate / (2 * v) : std::sqrt(r.error_estimate);
    r.value = v;
    r.abs_value = v;
    return r;
}

}  // namespace

QuadResult heat_D_l2_nat(const DriftOperator& D, const Point& x, const Point& y, const QuadConfig& cfg) {
    check_points(x, y);
    const int k = D.order();
    const double d = distance(x, y);
    return sqrt_result(integrate_halfline(
        [&](double t) {
            const double v = heat_D_nat(D, t, x, y);
            return std::pow(t, k - 1) * v * v;
        },
        d > 0 ? std::optional<double>(d / 2) : std::nullopt, cfg));
}

QuadResult heat_D_grad_y_l2_nat(const DriftOperator& D, const Point& x, const Point& y, const QuadConfig& cfg) {
    check_points(x, y);
    const int k = D.order();
    const double d = distance(x, y);
    std::vector<DriftOperator> Dj;
    for (int j = 0; j < x.dim(); ++j) Dj.push_back(D.then_partial(j));
    return sqrt_result(integrate_halfline(
        [&](double t) {
            const double base = heat_D_nat(D, t, x, y);
            double s = 0;
            for (int j = 0; j < x.dim(); ++j) {
                double v = -heat_D_nat(Dj[j], t, x, y);
                if (j == 0) v -= 2 * base;
                s += v * v;
            }
            return std::pow(t, k - 1) * s;
        },
        d > 0 ? std::optional<double>(d / 2) : std::nullopt, cfg));
}

QuadResult heat_dt_l2_nat(int k, const Point& x, const Point& y, const QuadConfig& cfg) {
    check_points(x, y);
    const double d = distance(x, y);
    return sqrt_result(integrate_halfline(
        [&](double t) {
            const double v = heat_dt_nat(k, t, x, y);
            return std::pow(t, 2 * k - 1) * v * v;
        },
        d > 0 ? std::optional<double>(d / 2) : std::nullopt, cfg));
}

double heat_dt_sup_nat(int k, const Point& x, const Point& y) {
    check_points(x, y);
    const double d = distance(x, y);
    return maximize_log_t([&](double t) { return std::fabs(std::pow(t, k) * heat_dt_nat(k, t, x, y)); }, 1e-3,
                          std::max(1e4, 10 * d))
        .value;
}

QuadResult poisson_dt_l2_nat(int k, const Point& x, const Point& y, const QuadConfig& cfg) {
    check_points(x, y);
    const QuadConfig icfg = cfg.inner();
    bool inner_ok = true;
    QuadResult r = integrate_halfline(
        [&](double t) {
            const QuadResult p = poisson_nat(k, nullptr, t, x, y, icfg);
            if (!p.ok()) inner_ok = false;
            return std::pow(t, 2 * k - 1) * p.value * p.value;
        },
        std::nullopt, cfg);
    if (!inner_ok) r.status = QuadStatus::max_depth_exceeded;
    return sqrt_result(r);
}

MaxResult maximize_log_t(const Fn1& g, double t_lo, double t_hi, int points_per_decade) {
    if (!(t_lo > 0) || !(t_hi > t_lo) || points_per_decade < 1) throw InvalidArgument("bad maximization range");
    const double l0 = std::log10(t_lo), l1 = std::log10(t_hi);
    const int m = static_cast<int>(std::ceil((l1 - l0) * points_per_decade));
    const double h = (l1 - l0) / m;
    int best = 0;
    double bv = -std::numeric_limits<double>::infinity();
    std::vector<double> vals(m + 1);
    for (int i = 0; i <= m; ++i) {
        vals[i] = g(std::pow(10.0, l0 + i * h));
        if (vals[i] > bv) {
            bv = vals[i];
            best = i;
        }
    }
    double a = l0 + std::max(best - 1, 0) * h, b = l0 + std::min(best + 1, m) * h;
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double c = b - phi * (b - a), dd = a + phi * (b - a);
    double fc = g(std::pow(10.0, c)), fd = g(std::pow(10.0, dd));
    for (int it = 0; it < 60; ++it) {
        if (fc > fd) {
            b = dd;
            dd = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = g(std::pow(10.0, c));
        } else {
            a = c;
            c = dd;
            fc = fd;
            dd = a + phi * (b - a);
            fd = g(std::pow(10.0, dd));
        }
    }
    MaxResult r{std::pow(10.0, l0 + best * h), bv};
    const double mid = 0.5 * (a + b);
    const double fm = g(std::pow(10.0, mid));
    if (fm > r.value) r = {std::pow(10.0, mid), fm};
    return r;
}

}  // namespace driftlab
