#include "driftlab/space.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "driftlab/quadrature.hpp"

namespace driftlab {

double unit_ball_volume(int m) {
    if (m < 0) throw InvalidArgument("negative dimension");
    return std::pow(M_PI, m / 2.0) / std::tgamma(m / 2.0 + 1);
}

namespace {

// log int_{B(0,r)} e^{2 z_1} dz
double log_mu_ball_origin(int n, double r) {
    if (n == 1) {
        // sinh(2r) = e^{2r} (1 - e^{-4r}) / 2
        return 2 * r + std::log(-std::expm1(-4 * r) / 2);
    }
    // z_1 = r sin(theta): cross-section radius r cos(theta). The e^{2r} factor
    // is pulled out so large r does not overflow.
    QuadConfig cfg;
    cfg.rel_tol = 1e-13;
    const QuadResult q = integrate(
        [n, r](double th) { return std::exp(2 * r * (std::sin(th) - 1)) * std::pow(std::cos(th), n); },
        -M_PI / 2, M_PI / 2, cfg, {0.0});
    return 2 * r + std::log(q.value) + n * std::log(r) + std::log(unit_ball_volume(n - 1));
}

}  // namespace

double log_mu_ball(const Point& x, double r) {
    if (!(r > 0) || !std::isfinite(r)) throw InvalidArgument("ball radius must be positive and finite");
    if (!x.finite()) throw InvalidArgument("ball center must be finite");
    return 2 * x.x1() + log_mu_ball_origin(x.dim(), r);
}

double mu_ball(const Point& x, double r) { return std::exp(log_mu_ball(x, r)); }

const char* region_kind_name(RegionKind k) {
    switch (k) {
        case RegionKind::OmegaEta: return "OmegaEta";
        case RegionKind::SigmaEta: return "SigmaEta";
        case RegionKind::EuclideanBall: return "EuclideanBall";
        case RegionKind::Box: return "Box";
    }
    return "?";
}

Region Region::omega(int n, double eta, std::vector<double> ball_center, double ball_radius) {
    Region R;
    R.kind_ = RegionKind::OmegaEta;
    R.n_ = n;
    R.eta_ = eta;
    if (ball_center.empty() && n > 1) ball_center.assign(n - 1, 0.0);
    R.bc_ = std::move(ball_center);
    R.br_ = ball_radius;
    R.validate();
    return R;
}

Region Region::sigma(int n, double eta) {
    Region R;
    R.kind_ = RegionKind::SigmaEta;
    R.n_ = n;
    R.eta_ = eta;
    R.validate();
    return R;
}

Region Region::ball(const Point& center, double radius) {
    Region R;
    R.kind_ = RegionKind::EuclideanBall;
    R.n_ = center.dim();
    R.center_ = center;
    R.radius_ = radius;
    R.validate();
    return R;
}

Region Region::box(const Point& lo, const Point& hi) {
    require_same_dim(lo, hi);
    Region R;
    R.kind_ = RegionKind::Box;
    R.n_ = lo.dim();
    R.lo_ = lo;
    R.hi_ = hi;
    R.validate();
    return R;
}

void Region::validate() const {
    if (n_ < 1 || n_ > kMaxDim) throw InvalidArgument("dimension must be in [1, 8]");
    switch (kind_) {
        case RegionKind::OmegaEta:
            if (!(eta_ > 0) || !std::isfinite(eta_)) throw InvalidArgument("eta must be positive");
            if (static_cast<int>(bc_.size()) != n_ - 1) throw InvalidArgument("ball center must have n-1 entries");
            if (n_ > 1 && !(br_ > 0)) throw InvalidArgument("ball radius must be positive");
            break;
        case RegionKind::SigmaEta:
            if (!(eta_ > 0) || !std::isfinite(eta_)) throw InvalidArgument("eta must be positive");
            break;
        case RegionKind::EuclideanBall:
            if (!(radius_ > 0) || !std::isfinite(radius_)) throw InvalidArgument("ball radius must be positive");
            if (!center_.finite()) throw InvalidArgument("ball center must be finite");
            break;
        case RegionKind::Box:
            for (int i = 0; i < n_; ++i)
                if (!(hi_[i] > lo_[i]) || !std::isfinite(hi_[i] - lo_[i]))
                    throw InvalidArgument("box must have positive finite side lengths");
            break;
    }
}

bool Region::contains(const Point& x) const {
    if (x.dim() != n_) return false;
    switch (kind_) {
        case RegionKind::OmegaEta: {
            if (!(x.x1() > eta_ && x.x1() < eta_ + 1)) return false;
            double dd = 0;
            const double s = std::sqrt(eta_);
            for (int i = 1; i < n_; ++i) {
                const double v = x[i] / s - bc_[i - 1] / 2;
                dd += v * v;
            }
            return dd <= br_ * br_ / 4;
        }
        case RegionKind::SigmaEta: {
            if (!(x.x1() > eta_ - 1 && x.x1() < eta_)) return false;
            const double s = std::sqrt(eta_);
            for (int i = 1; i < n_; ++i)
                if (!(x[i] > s && x[i] < 2 * s)) return false;
            return true;
        }
        case RegionKind::EuclideanBall: return distance(x, center_) <= radius_;
        case RegionKind::Box:
            for (int i = 0; i < n_; ++i)
                if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
            return true;
    }
    return false;
}

Point Region::lower() const {
    Point p(n_);
    switch (kind_) {
        case RegionKind::OmegaEta:
            p[0] = eta_;
            for (int i = 1; i < n_; ++i) p[i] = std::sqrt(eta_) * (bc_[i - 1] - br_) / 2;
            return p;
        case RegionKind::SigmaEta:
            p[0] = eta_ - 1;
            for (int i = 1; i < n_; ++i) p[i] = std::sqrt(eta_);
            return p;
        case RegionKind::EuclideanBall:
            for (int i = 0; i < n_; ++i) p[i] = center_[i] - radius_;
            return p;
        case RegionKind::Box: return lo_;
    }
    return p;
}

Point Region::upper() const {
    Point p(n_);
    switch (kind_) {
        case RegionKind::OmegaEta:
            p[0] = eta_ + 1;
            for (int i = 1; i < n_; ++i) p[i] = std::sqrt(eta_) * (bc_[i - 1] + br_) / 2;
            return p;
        case RegionKind::SigmaEta:
            p[0] = eta_;
            for (int i = 1; i < n_; ++i) p[i] = 2 * std::sqrt(eta_);
            return p;
        case RegionKind::EuclideanBall:
            for (int i = 0; i < n_; ++i) p[i] = center_[i] + radius_;
            return p;
        case RegionKind::Box: return hi_;
    }
    return p;
}

double Region::log_measure() const {
    // (e^{2b} - e^{2a})/2 for the drift interval (a, b), in log form.
    auto log_drift = [](double a, double b) { return 2 * b + std::log(-std::expm1(-2 * (b - a)) / 2); };
    switch (kind_) {
        case RegionKind::OmegaEta: {
            double l = log_drift(eta_, eta_ + 1);
            if (n_ > 1)
                l += 0.5 * (n_ - 1) * std::log(eta_) + std::log(unit_ball_volume(n_ - 1)) +
                     (n_ - 1) * std::log(br_ / 2);
            return l;
        }
        case RegionKind::SigmaEta: return log_drift(eta_ - 1, eta_) + 0.5 * (n_ - 1) * std::log(eta_);
        case RegionKind::EuclideanBall: return log_mu_ball(center_, radius_);
        case RegionKind::Box: {
            double l = log_drift(lo_[0], hi_[0]);
            for (int i = 1; i < n_; ++i) l += std::log(hi_[i] - lo_[i]);
            return l;
        }
    }
    return 0;
}

double Region::measure() const { return std::exp(log_measure()); }

double region_measure(const Region& R) { return R.measure(); }

namespace {

std::string join(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    return os.str();
}

}  // namespace

std::string Region::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "kind = " << region_kind_name(kind_) << "\n";
    os << "n = " << n_ << "\n";
    switch (kind_) {
        case RegionKind::OmegaEta:
            os << "eta = " << eta_ << "\n";
            if (n_ > 1) {
                os << "ball.center = " << join(bc_) << "\n";
                os << "ball.radius = " << br_ << "\n";
            }
            break;
        case RegionKind::SigmaEta: os << "eta = " << eta_ << "\n"; break;
        case RegionKind::EuclideanBall:
            os << "center = " << join(center_.coords()) << "\n";
            os << "radius = " << radius_ << "\n";
            break;
        case RegionKind::Box:
            os << "lo = " << join(lo_.coords()) << "\n";
            os << "hi = " << join(hi_.coords()) << "\n";
            break;
    }
    return os.str();
}

Region Region::from_config(const ConfigText& cfg, const std::string& prefix) {
    auto key = [&](const char* k) { return prefix + k; };
    const std::string kind = cfg.get_string(key("kind"));
    const ConfigEntry* kind_entry = cfg.find(key("kind"));
    const long n = cfg.get_int(key("n"));
    if (n < 1 || n > kMaxDim) throw ConfigError("n must be in [1, 8]", cfg.find(key("n"))->line);
    auto point = [&](const char* k) {
        const std::vector<double> v = cfg.get_doubles(key(k));
        if (static_cast<long>(v.size()) != n)
            throw ConfigError(std::string("'") + key(k) + "' must have n entries", cfg.find(key(k))->line);
        return Point::from(v);
    };
    try {
        if (kind == "OmegaEta") {
            std::vector<double> bc = cfg.get_doubles(key("ball.center"), std::vector<double>(n - 1, 0.0));
            if (static_cast<long>(bc.size()) != n - 1)
                throw ConfigError("'" + key("ball.center") + "' must have n-1 entries",
                                  cfg.find(key("ball.center"))->line);
            return omega(static_cast<int>(n), cfg.get_double(key("eta")), bc, cfg.get_double(key("ball.radius"), 1.0));
        }
        if (kind == "SigmaEta") return sigma(static_cast<int>(n), cfg.get_double(key("eta")));
        if (kind == "EuclideanBall") return ball(point("center"), cfg.get_double(key("radius")));
        if (kind == "Box") return box(point("lo"), point("hi"));
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid region: ") + e.what(), kind_entry->line);
    }
    throw ConfigError("unknown region kind '" + kind + "'", kind_entry->line);
}

Region Region::from_text(const std::string& text) { return from_config(ConfigText::parse(text)); }

std::vector<Point> sample_region(const Region& R, int m, SampleScheme scheme, std::uint64_t seed) {
    if (m < 1) throw InvalidArgument("sample count must be at least 1");
    const int n = R.dim();
    const Point lo = R.lower(), hi = R.upper();
    std::vector<Point> out;
    if (scheme == SampleScheme::grid) {
        for (long g = 1;; ++g) {
            const double cells = std::pow(static_cast<double>(g), n);
            if (cells > 2e7) throw InvalidArgument("region too thin to hold the requested grid");
            std::vector<Point> inside;
            std::vector<long> idx(n, 0);
            while (true) {
                Point p(n);
                for (int i = 0; i < n; ++i) p[i] = lo[i] + (hi[i] - lo[i]) * (idx[i] + 0.5) / g;
                if (R.contains(p)) inside.push_back(p);
                int i = 0;
                while (i < n && ++idx[i] == g) idx[i++] = 0;
                if (i == n) break;
            }
            if (static_cast<int>(inside.size()) >= m) {
                const double c = static_cast<double>(inside.size());
                for (int i = 0; i < m; ++i) out.push_back(inside[static_cast<std::size_t>((i + 0.5) * c / m)]);
                return out;
            }
        }
    }
    static constexpr int kPrimes[kMaxDim] = {2, 3, 5, 7, 11, 13, 17, 19};
    std::mt19937_64 rng(seed);
    std::array<double, kMaxDim> shift{};
    for (int i = 0; i < n; ++i) shift[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    for (std::uint64_t k = 1; static_cast<int>(out.size()) < m; ++k) {
        if (k > 1000ULL * static_cast<std::uint64_t>(m) + 100000) throw InvalidArgument("region is empty");
        Point p(n);
        for (int i = 0; i < n; ++i) {
            double u = halton(k, kPrimes[i]) + shift[i];
            u -= std::floor(u);
            p[i] = lo[i] + (hi[i] - lo[i]) * u;
        }
        if (R.contains(p)) out.push_back(p);
    }
    return out;
}

DriftFrame::DriftFrame(const std::vector<double>& v) {
    if (v.empty() || static_cast<int>(v.size()) > kMaxDim) throw InvalidArgument("drift vector dimension out of range");
    double nn = 0;
    for (double c : v) nn += c * c;
    norm_ = std::sqrt(nn);
    if (!(norm_ > 0) || !std::isfinite(norm_)) throw InvalidArgument("drift vector must be nonzero");
    std::vector<double> h(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) h[i] = v[i] / norm_;
    h[0] -= 1;
    double hh = 0;
    for (double c : h) hh += c * c;
    if (hh > 1e-30) h_ = std::move(h);
}

namespace {

Point reflect(const std::vector<double>& h, const Point& x) {
    if (h.empty()) return x;
    double hh = 0, hx = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        hh += h[i] * h[i];
        hx += h[i] * x[static_cast<int>(i)];
    }
    Point r = x;
    for (std::size_t i = 0; i < h.size(); ++i) r[static_cast<int>(i)] -= 2 * hx / hh * h[i];
    return r;
}

}  // namespace

Point DriftFrame::to_normalized(const Point& x) const {
    if (!h_.empty() && static_cast<int>(h_.size()) != x.dim()) throw InvalidArgument("dimension mismatch");
    return reflect(h_, x) * norm_;
}

Point DriftFrame::from_normalized(const Point& z) const {
    if (!h_.empty() && static_cast<int>(h_.size()) != z.dim()) throw InvalidArgument("dimension mismatch");
    return reflect(h_, z * (1 / norm_));
}

}  // namespace driftlab
