#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace driftlab {

// Largest supported dimension. Points and multi-indices are fixed-size so
// kernel inner loops never allocate.
inline constexpr int kMaxDim = 8;

// Error hierarchy. Each class maps onto one status code of the C API.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Evaluation requested at a point where the quantity is undefined (x = y for
// singular kernels, x inside the support of a source, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double best, double err)
        : Error(what), best_value(best), error_estimate(err) {}
    double best_value;
    double error_estimate;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
    int line;
};

// The sharpness scan found no grid point where the normalized kernel is
// distinguishable from zero.
class AllNearZero : public Error {
public:
    using Error::Error;
};

// Output files could not be written.
class IoError : public Error {
public:
    using Error::Error;
};

// x = (x1, x') in R^n; x1 is the drift direction.
class Point {
public:
    Point() = default;
    explicit Point(int n) : n_(n) {
        if (n < 1 || n > kMaxDim) throw InvalidArgument("dimension must be in [1, 8]");
    }
    Point(std::initializer_list<double> coords) : Point(static_cast<int>(coords.size())) {
        int i = 0;
        for (double c : coords) c_[i++] = c;
    }
    static Point from(const std::vector<double>& coords) {
        Point p(static_cast<int>(coords.size()));
        for (int i = 0; i < p.n_; ++i) p.c_[i] = coords[i];
        return p;
    }
    // x1 followed by the n-1 orthogonal coordinates.
    static Point from(double x1, const std::vector<double>& xp) {
        Point p(static_cast<int>(xp.size()) + 1);
        p.c_[0] = x1;
        for (std::size_t i = 0; i < xp.size(); ++i) p.c_[i + 1] = xp[i];
        return p;
    }

    int dim() const { return n_; }
    double x1() const { return c_[0]; }
    double operator[](int i) const { return c_[i]; }
    double& operator[](int i) { return c_[i]; }
    std::vector<double> coords() const { return {c_.begin(), c_.begin() + n_}; }

    double norm() const {
        double s = 0;
        for (int i = 0; i < n_; ++i) s += c_[i] * c_[i];
        return std::sqrt(s);
    }
    bool finite() const {
        for (int i = 0; i < n_; ++i)
            if (!std::isfinite(c_[i])) return false;
        return true;
    }

    Point operator-(const Point& o) const {
        Point r(n_);
        for (int i = 0; i < n_; ++i) r.c_[i] = c_[i] - o.c_[i];
        return r;
    }
    Point operator+(const Point& o) const {
        Point r(n_);
        for (int i = 0; i < n_; ++i) r.c_[i] = c_[i] + o.c_[i];
        return r;
    }
    Point operator*(double s) const {
        Point r(n_);
        for (int i = 0; i < n_; ++i) r.c_[i] = c_[i] * s;
        return r;
    }
    bool operator==(const Point& o) const {
        if (n_ != o.n_) return false;
        for (int i = 0; i < n_; ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }

private:
    int n_ = 1;
    std::array<double, kMaxDim> c_{};
};

inline double distance(const Point& x, const Point& y) { return (x - y).norm(); }

inline double distance_sq(const Point& x, const Point& y) {
    double s = 0;
    for (int i = 0; i < x.dim(); ++i) {
        double d = x[i] - y[i];
        s += d * d;
    }
    return s;
}

inline void require_same_dim(const Point& x, const Point& y) {
    if (x.dim() != y.dim()) throw InvalidArgument("points have different dimensions");
}

// alpha = (alpha_1, alpha').
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int n) : n_(n) {
        if (n < 1 || n > kMaxDim) throw InvalidArgument("dimension must be in [1, 8]");
    }
    MultiIndex(std::initializer_list<int> e) : MultiIndex(static_cast<int>(e.size())) {
        int i = 0;
        for (int v : e) {
            if (v < 0) throw InvalidArgument("multi-index entries must be nonnegative");
            e_[i++] = v;
        }
    }
    static MultiIndex from(const std::vector<int>& e) {
        MultiIndex m(static_cast<int>(e.size()));
        for (int i = 0; i < m.n_; ++i) {
            if (e[i] < 0) throw InvalidArgument("multi-index entries must be nonnegative");
            m.e_[i] = e[i];
        }
        return m;
    }

    int dim() const { return n_; }
    int operator[](int i) const { return e_[i]; }
    int& operator[](int i) { return e_[i]; }
    int order() const {
        int s = 0;
        for (int i = 0; i < n_; ++i) s += e_[i];
        return s;
    }
    // |alpha'|
    int orthogonal_order() const { return order() - e_[0]; }
    // Componentwise partial order.
    bool leq(const MultiIndex& o) const {
        for (int i = 0; i < n_; ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }
    std::vector<int> entries() const { return {e_.begin(), e_.begin() + n_}; }

    bool operator==(const MultiIndex& o) const {
        if (n_ != o.n_) return false;
        for (int i = 0; i < n_; ++i)
            if (e_[i] != o.e_[i]) return false;
        return true;
    }
    bool operator<(const MultiIndex& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        for (int i = 0; i < n_; ++i)
            if (e_[i] != o.e_[i]) return e_[i] < o.e_[i];
        return false;
    }

private:
    int n_ = 1;
    std::array<int, kMaxDim> e_{};
};

// sign * exp(log_abs). Zero is sign 0 with log_abs = -inf.
struct LogValue {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static LogValue from(double v) {
        if (v == 0.0 || std::isnan(v)) return {};
        return {std::log(std::fabs(v)), v > 0 ? 1 : -1};
    }
    // value * e^{-shift}, for values computed with a scaling factor e^{shift}.
    static LogValue scaled(double v, double shift) {
        LogValue r = from(v);
        if (r.sign != 0) r.log_abs -= shift;
        return r;
    }
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
    double log10_abs() const { return log_abs / std::log(10.0); }
};

// Value with an absolute error estimate, both carried in log form so that
// e^{-2 eta} sized results survive at eta in the hundreds.
struct Estimate {
    LogValue value;
    double log_error = -std::numeric_limits<double>::infinity();

    double rel_error() const {
        if (value.sign == 0) return std::isinf(log_error) ? 0.0 : std::numeric_limits<double>::infinity();
        return std::exp(log_error - value.log_abs);
    }
};

}  // namespace driftlab
