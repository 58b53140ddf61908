#include "driftlab/specfun.hpp"

#include <algorithm>
#include <cmath>

namespace driftlab {

LaurentPoly::LaurentPoly(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

void LaurentPoly::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> merged;
    for (const Term& t : terms_) {
        if (!std::isfinite(t.first) || !std::isfinite(t.second))
            throw InvalidArgument("Laurent polynomial terms must be finite");
        if (!merged.empty() && std::fabs(merged.back().first - t.first) <= 1e-12 * (1 + std::fabs(t.first)))
            merged.back().second += t.second;
        else
            merged.push_back(t);
    }
    std::erase_if(merged, [](const Term& t) { return t.second == 0.0; });
    terms_ = std::move(merged);
}

double LaurentPoly::operator()(double t) const {
    double s = 0;
    for (const auto& [e, c] : terms_) s += c * (e == 0 ? 1.0 : std::pow(t, e));
    return s;
}

LaurentPoly LaurentPoly::derivative() const {
    std::vector<Term> out;
    for (const auto& [e, c] : terms_)
        if (e != 0) out.emplace_back(e - 1, c * e);
    return LaurentPoly(std::move(out));
}

double LaurentPoly::coefficient(double exponent) const {
    for (const auto& [e, c] : terms_)
        if (std::fabs(e - exponent) <= 1e-12 * (1 + std::fabs(e))) return c;
    return 0;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    std::vector<Term> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return LaurentPoly(std::move(all));
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    std::vector<Term> out;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) out.emplace_back(e1 + e2, c1 * c2);
    return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::operator*(double s) const {
    std::vector<Term> out = terms_;
    for (auto& t : out) t.second *= s;
    return LaurentPoly(std::move(out));
}

double hermite(int j, double s) {
    if (j < 0) throw InvalidArgument("Hermite degree must be nonnegative");
    if (j == 0) return 1;
    double hm = 1, h = 2 * s;
    for (int i = 1; i < j; ++i) {
        const double next = 2 * s * h - 2 * i * hm;
        hm = h;
        h = next;
    }
    return h;
}

double hermite_multi(const MultiIndex& alpha, const Point& z) {
    if (alpha.dim() != z.dim()) throw InvalidArgument("multi-index and point dimensions differ");
    double r = 1;
    for (int i = 0; i < alpha.dim(); ++i) r *= hermite(alpha[i], z[i]);
    return r;
}

std::vector<double> hermite_coeffs(int j) {
    if (j < 0) throw InvalidArgument("Hermite degree must be nonnegative");
    std::vector<double> prev{1.0}, cur{0.0, 2.0};
    if (j == 0) return prev;
    for (int i = 1; i < j; ++i) {
        std::vector<double> next(i + 2, 0.0);
        for (int p = 0; p <= i; ++p) next[p + 1] += 2 * cur[p];
        for (int p = 0; p < i; ++p) next[p] -= 2.0 * i * prev[p];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

QuadResult b_nu_scaled(double nu, double a, const QuadConfig& cfg) {
    if (!(a > 0) || !std::isfinite(a)) throw InvalidArgument("b_nu requires a > 0");
    if (!std::isfinite(nu)) throw InvalidArgument("b_nu requires finite nu");
    const double half = a / 2;
    return integrate_halfline(
        [nu, half](double t) {
            const double st = std::sqrt(t);
            const double gap = st - half / st;
            return std::exp((nu - 1) * std::log(t) - gap * gap);
        },
        half, cfg);
}

double b_nu_asymptotic(double nu, double a) {
    if (!(a > 0)) throw InvalidArgument("b_nu requires a > 0");
    return std::sqrt(2 * M_PI) * std::exp(-nu * std::log(2.0) + (nu - 0.5) * std::log(a) - a);
}

double b_nu(double nu, double a, const BnuOptions& opt) {
    if (!(a > 0) || !std::isfinite(a)) throw InvalidArgument("b_nu requires a > 0");
    const bool asymptotic =
        opt.mode == BnuMode::asymptotic || (opt.mode == BnuMode::automatic && a > opt.a_switch);
    if (asymptotic) return b_nu_asymptotic(nu, a);
    QuadResult r = b_nu_scaled(nu, a, opt.quad);
    if (!r.ok())
        throw QuadratureError("b_nu quadrature did not reach tolerance", r.value * std::exp(-a),
                              r.error_estimate * std::exp(-a));
    return r.value * std::exp(-a);
}

double b_nu_truncated(double nu, double a, double ell, const QuadConfig& cfg) {
    if (!(a > 0) || !std::isfinite(a)) throw InvalidArgument("b_nu requires a > 0");
    if (!(ell >= std::pow(a, 0.75))) throw InvalidArgument("window half-width must be at least a^{3/4}");
    const double half = a / 2;
    const double lo = std::max(half - ell, 0.0);
    const double hi = half + ell;
    QuadResult r = integrate_log_interval(
        [nu, half](double t) {
            const double st = std::sqrt(t);
            const double gap = st - half / st;
            return std::exp((nu - 1) * std::log(t) - gap * gap);
        },
        lo, hi, cfg, half);
    if (!r.ok())
        throw QuadratureError("truncated b_nu quadrature did not reach tolerance", r.value * std::exp(-a),
                              r.error_estimate * std::exp(-a));
    return r.value * std::exp(-a);
}

double laplace_power_integral(const LaurentPoly& Q, double a, const QuadConfig& cfg) {
    BnuOptions opt;
    opt.mode = BnuMode::quadrature;
    opt.quad = cfg;
    double s = 0;
    for (const auto& [e, c] : Q.terms()) s += c * b_nu(e, a, opt);
    return s;
}

double laplace_power_asymptotic(const LaurentPoly& Q, double a) {
    if (!(a > 0)) throw InvalidArgument("requires a > 0");
    return std::sqrt(2 * M_PI) * Q(a / 2) * std::pow(a, -0.5) * std::exp(-a);
}

}  // namespace driftlab
