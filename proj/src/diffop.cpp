#include "driftlab/diffop.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "driftlab/kernels.hpp"
#include "driftlab/parallel.hpp"

namespace driftlab {

DriftOperator DriftOperator::make(int n, int k, const std::vector<Term>& coeffs) {
    if (n < 1 || n > kMaxDim) throw InvalidArgument("dimension must be in [1, 8]");
    if (k < 1) throw InvalidArgument("operator order must be at least 1");
    if (coeffs.empty()) throw InvalidArgument("operator needs at least one coefficient");
    std::map<MultiIndex, double> merged;
    for (const auto& [alpha, a] : coeffs) {
        if (alpha.dim() != n) throw InvalidArgument("multi-index dimension does not match n");
        if (alpha.order() != k) throw InvalidArgument("all multi-indices must have |alpha| = k (mixed orders)");
        if (!std::isfinite(a)) throw InvalidArgument("coefficients must be finite");
        merged[alpha] += a;
    }
    DriftOperator D;
    D.n_ = n;
    D.k_ = k;
    for (const auto& [alpha, a] : merged)
        if (a != 0.0) D.terms_.emplace_back(alpha, a);
    if (D.terms_.empty()) throw InvalidArgument("all coefficients are zero");
    D.q_ = 0;
    for (const auto& [alpha, a] : D.terms_) D.q_ = std::max(D.q_, alpha[0]);
    return D;
}

DriftOperator DriftOperator::pure_drift(int n, int k) {
    MultiIndex a(n);
    a[0] = k;
    return make(n, k, {{a, 1.0}});
}

DriftOperator DriftOperator::monomial(const MultiIndex& alpha, double coeff) {
    return make(alpha.dim(), alpha.order(), {{alpha, coeff}});
}

DriftOperator DriftOperator::then_partial(int j) const {
    if (j < 0 || j >= n_) throw InvalidArgument("partial index out of range");
    std::vector<Term> out;
    for (auto [alpha, a] : terms_) {
        alpha[j] += 1;
        out.emplace_back(alpha, a);
    }
    return make(n_, k_ + 1, out);
}

DriftOperator DriftOperator::scaled(double s) const {
    std::vector<Term> out = terms_;
    for (auto& t : out) t.second *= s;
    return make(n_, k_, out);
}

std::string DriftOperator::describe() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [alpha, a] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << a << "*d^(";
        for (int i = 0; i < n_; ++i) os << (i ? "," : "") << alpha[i];
        os << ")";
    }
    return os.str();
}

double sharpness_ratio(const DriftOperator& D, double eta, const std::vector<double>& zp) {
    const int n = D.dim();
    if (static_cast<int>(zp.size()) != n - 1) throw InvalidArgument("scan point must have n-1 entries");
    std::vector<double> xp(zp);
    for (double& v : xp) v *= std::sqrt(eta);
    const Point x = Point::from(eta, xp);
    const Point y(n);
    // Natural scale already carries the factor e^{x_1 + y_1 + |x - y|}.
    const QuadResult r = riesz_kernel_nat(D, x, y, RieszPath::quadrature);
    const double sign = (D.order() % 2 == 0) ? 1.0 : -1.0;
    return sign * r.value * std::pow(eta, -(D.drift_order() - n - 1) / 2.0);
}

OrthoBall sharpness_ball_scan(const DriftOperator& D, double eta, const ScanOptions& opt) {
    if (!(eta > 0)) throw InvalidArgument("eta must be positive");
    if (opt.grid < 1) throw InvalidArgument("scan grid needs at least one point per axis");
    const int n = D.dim();
    OrthoBall ball;
    if (n == 1) {
        const double rho = sharpness_ratio(D, eta, {});
        if (!(std::fabs(rho) > opt.zero_tol)) throw AllNearZero("normalized kernel vanishes at this eta");
        ball.sign = rho > 0 ? 1 : -1;
        ball.peak = ball.min_on_ball = std::fabs(rho);
        return ball;
    }
    const int m = n - 1;
    const int g = opt.grid;
    const double h = g > 1 ? 2 * opt.half_width / (g - 1) : 0;
    long total = 1;
    for (int i = 0; i < m; ++i) total *= g;
    auto node = [&](long idx) {
        std::vector<double> z(m);
        for (int i = 0; i < m; ++i) {
            z[i] = (g > 1) ? -opt.half_width + h * static_cast<double>(idx % g) : 0.0;
            idx /= g;
        }
        return z;
    };
    std::vector<long> ids(total);
    for (long i = 0; i < total; ++i) ids[i] = i;
    const std::vector<double> rho =
        parallel_map(ids, [&](long idx) { return sharpness_ratio(D, eta, node(idx)); }, opt.threads);

    long best = 0;
    for (long i = 1; i < total; ++i)
        if (std::fabs(rho[i]) > std::fabs(rho[best])) best = i;
    const double peak = std::fabs(rho[best]);
    if (!(peak > opt.zero_tol)) throw AllNearZero("normalized kernel is near zero on the whole scan grid");
    const int sign = rho[best] > 0 ? 1 : -1;
    const std::vector<double> c = node(best);

    // Grow the radius in grid steps while every node inside keeps the sign
    // and stays above half the peak.
    double radius = 0, min_in = peak;
    const double step = h > 0 ? h : 1;
    for (int s = 1; s <= 2 * g; ++s) {
        const double r = s * step;
        double lo = peak;
        bool ok = true;
        for (long i = 0; i < total && ok; ++i) {
            const std::vector<double> z = node(i);
            double dd = 0;
            for (int j = 0; j < m; ++j) dd += (z[j] - c[j]) * (z[j] - c[j]);
            if (dd > r * r) continue;
            bool outside_grid = false;
            for (int j = 0; j < m; ++j)
                if (std::fabs(c[j]) + r > opt.half_width + 1e-12) outside_grid = true;
            if (outside_grid || rho[i] * sign < 0.5 * peak) ok = false;
            lo = std::min(lo, rho[i] * sign);
        }
        if (!ok) break;
        radius = r;
        min_in = lo;
    }
    if (radius == 0) radius = 0.5 * step;  // the argmax node alone
    ball.center = c;
    ball.radius = radius;
    ball.sign = sign;
    ball.peak = peak;
    ball.min_on_ball = min_in;
    return ball;
}

}  // namespace driftlab
