#pragma once

#include <utility>
#include <vector>

#include "driftlab/quadrature.hpp"
#include "driftlab/types.hpp"

namespace driftlab {

// Finite sum of real powers sum_i c_i t^{e_i}, kept sorted by exponent with
// distinct exponents and no zero coefficients.
class LaurentPoly {
public:
    using Term = std::pair<double, double>;  // (exponent, coefficient)

    LaurentPoly() = default;
    explicit LaurentPoly(std::vector<Term> terms);
    static LaurentPoly constant(double c) { return LaurentPoly({{0.0, c}}); }
    static LaurentPoly monomial(double exponent, double c = 1.0) { return LaurentPoly({{exponent, c}}); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    double operator()(double t) const;
    // d/dt, term by term.
    LaurentPoly derivative() const;
    double coefficient(double exponent) const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const { return *this + o * -1.0; }
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator*(double s) const;
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

private:
    void normalize();
    std::vector<Term> terms_;
};

// Physicists' Hermite polynomial H_j(s) by the three-term recurrence.
double hermite(int j, double s);
// prod_i H_{alpha_i}(z_i)
double hermite_multi(const MultiIndex& alpha, const Point& z);
// Monomial coefficients of H_j, index = power of s.
std::vector<double> hermite_coeffs(int j);

enum class BnuMode { automatic, quadrature, asymptotic };

struct BnuOptions {
    BnuMode mode = BnuMode::automatic;
    double a_switch = 30;
    QuadConfig quad{};
};

// B_nu(a) = int_0^inf t^nu e^{-t - a^2/(4t)} dt/t.
double b_nu(double nu, double a, const BnuOptions& opt = {});

// B_nu(a) e^{a} by quadrature of the stabilized integrand
// t^{nu-1} exp(-(sqrt t - a/(2 sqrt t))^2). Finite for every a > 0.
QuadResult b_nu_scaled(double nu, double a, const QuadConfig& cfg = {});

// Leading large-a term sqrt(2 pi) 2^{-nu} a^{nu - 1/2} e^{-a}.
double b_nu_asymptotic(double nu, double a);

// Same integrand over t in ((a/2 - l) v 0, a/2 + l). Requires l >= a^{3/4}.
double b_nu_truncated(double nu, double a, double ell, const QuadConfig& cfg = {});

// int_0^inf Q(t) e^{-t - a^2/(4t)} dt/t, term by term.
double laplace_power_integral(const LaurentPoly& Q, double a, const QuadConfig& cfg = {});
// sqrt(2 pi) Q(a/2) a^{-1/2} e^{-a}
double laplace_power_asymptotic(const LaurentPoly& Q, double a);

}  // namespace driftlab
