#pragma once
// Reference values computed without any library code path.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

constexpr double kPi = 3.14159265358979323846;

// K_nu(a) for nu in {+-1/2, +-3/2, +-5/2} from the elementary closed forms.
inline double k_half(double nu, double a) {
    const double base = std::sqrt(kPi / (2 * a)) * std::exp(-a);
    const double m = std::fabs(nu);
    if (m == 0.5) return base;
    if (m == 1.5) return base * (1 + 1 / a);
    if (m == 2.5) return base * (1 + 3 / a + 3 / (a * a));
    return NAN;
}

// B_nu(a) = 2 (a/2)^nu K_nu(a), with K from the standard library.
inline double b_nu_bessel(double nu, double a) { return 2 * std::pow(a / 2, nu) * std::cyl_bessel_k(std::fabs(nu), a); }

// Composite Simpson on [a, b] in long double with m (even) panels.
inline long double simpson(const std::function<long double(long double)>& f, long double a, long double b, int m) {
    const long double h = (b - a) / m;
    long double s = f(a) + f(b);
    for (int i = 1; i < m; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
}

// Heat kernel, first closed form, long double.
inline long double heat(double t, const std::vector<double>& x, const std::vector<double>& y) {
    long double d2 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (long double)(x[i] - y[i]) * (x[i] - y[i]);
    const long double n = x.size();
    return std::pow(4 * (long double)kPi * t, -n / 2) * std::exp(-(long double)x[0] - y[0] - t - d2 / (4 * t));
}

// Richardson-extrapolated central difference of order m (1..4) for a
// function of one variable.
inline double derivative(const std::function<long double(long double)>& f, double x0, int m, double h) {
    auto central = [&](long double hh) -> long double {
        switch (m) {
            case 1: return (f(x0 + hh) - f(x0 - hh)) / (2 * hh);
            case 2: return (f(x0 + hh) - 2 * f(x0) + f(x0 - hh)) / (hh * hh);
            case 3: return (f(x0 + 2 * hh) - 2 * f(x0 + hh) + 2 * f(x0 - hh) - f(x0 - 2 * hh)) / (2 * hh * hh * hh);
            case 4:
                return (f(x0 + 2 * hh) - 4 * f(x0 + hh) + 6 * f(x0) - 4 * f(x0 - hh) + f(x0 - 2 * hh)) /
                       (hh * hh * hh * hh);
        }
        return NAN;
    };
    // Three levels of extrapolation on h, h/2, h/4 (error series in h^2).
    long double a0 = central(h), a1 = central(h / 2), a2 = central(h / 4);
    long double b0 = (4 * a1 - a0) / 3, b1 = (4 * a2 - a1) / 3;
    return static_cast<double>((16 * b1 - b0) / 15);
}

}  // namespace oracle
