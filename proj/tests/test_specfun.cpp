#include <doctest.h>

#include <cmath>

#include "driftlab/specfun.hpp"
#include "oracles.hpp"

using namespace driftlab;

TEST_CASE("hermite small cases") {
    CHECK(hermite(0, 0.37) == 1.0);
    CHECK(hermite(1, 0.5) == doctest::Approx(1.0));
    CHECK(hermite(2, 1.0) == doctest::Approx(2.0));
    CHECK(hermite(3, 2.0) == doctest::Approx(8 * 8 - 12 * 2));
    for (int j = 0; j <= 8; ++j) {
        const auto c = hermite_coeffs(j);
        REQUIRE(static_cast<int>(c.size()) == j + 1);
        CHECK(c.back() == doctest::Approx(std::ldexp(1.0, j)));
    }
}

TEST_CASE("hermite orthogonality against Gaussian weight") {
    for (int i = 0; i <= 5; ++i)
        for (int j = 0; j <= 5; ++j) {
            const long double v = oracle::simpson(
                [&](long double s) { return hermite(i, (double)s) * hermite(j, (double)s) * std::exp(-s * s); }, -12,
                12, 6000);
            double expect = 0;
            if (i == j) expect = std::sqrt(oracle::kPi) * std::ldexp(1.0, i) * std::tgamma(i + 1.0);
            CHECK(std::fabs((double)v - expect) <= 1e-8 * std::max(1.0, expect));
        }
}

TEST_CASE("hermite_multi is a product") {
    const Point z{0.3, -1.2};
    CHECK(hermite_multi(MultiIndex{2, 3}, z) == doctest::Approx(hermite(2, 0.3) * hermite(3, -1.2)).epsilon(1e-14));
}

TEST_CASE("laurent polynomial algebra") {
    const LaurentPoly p({{1.0, 2.0}, {-1.0, 3.0}});  // 2t + 3/t
    const LaurentPoly q({{0.0, 1.0}, {1.0, -1.0}});  // 1 - t
    for (double t : {0.5, 1.0, 3.0}) {
        CHECK((p * q)(t) == doctest::Approx(p(t) * q(t)).epsilon(1e-14));
        CHECK((p + q)(t) == doctest::Approx(p(t) + q(t)).epsilon(1e-14));
        CHECK(p.derivative()(t) == doctest::Approx(2 - 3 / (t * t)).epsilon(1e-14));
    }
    CHECK((p - p).is_zero());
    CHECK(p.coefficient(-1.0) == 3.0);
    CHECK(p.coefficient(5.0) == 0.0);
}

TEST_CASE("b_nu examples") {
    CHECK(b_nu(0.5, 2.0) == doctest::Approx(std::sqrt(oracle::kPi) * std::exp(-2.0)).epsilon(1e-10));
    CHECK(b_nu(0.5, 2.0) == doctest::Approx(0.2398755).epsilon(1e-6));
    CHECK(b_nu(-0.5, 1.0) == doctest::Approx(2 * std::sqrt(oracle::kPi) * std::exp(-1.0)).epsilon(1e-10));
    CHECK(b_nu(-0.5, 1.0) == doctest::Approx(1.3040987).epsilon(1e-6));
    CHECK(b_nu(-1.0, 1.0) == doctest::Approx(4 * std::cyl_bessel_k(1.0, 1.0)).epsilon(1e-10));
    CHECK(b_nu(-1.0, 1.0) == doctest::Approx(2.407628).epsilon(1e-6));
}

TEST_CASE("b_nu matches half-integer closed forms") {
    for (double nu : {-2.5, -1.5, -0.5, 0.5, 1.5, 2.5})
        for (double a = 0.1; a <= 20; a *= 1.37) {
            const double ref = 2 * std::pow(a / 2, nu) * oracle::k_half(nu, a);
            CHECK(b_nu(nu, a) == doctest::Approx(ref).epsilon(1e-9));
        }
}

TEST_CASE("b_nu matches std Bessel for non half-integer orders") {
    for (double nu : {-2.3, -1.0, 0.0, 0.25, 1.0, 3.7})
        for (double a : {0.05, 0.4, 2.0, 9.0, 25.0}) CHECK(b_nu(nu, a) == doctest::Approx(oracle::b_nu_bessel(nu, a)).epsilon(1e-8));
}

TEST_CASE("b_nu small-a regimes") {
    // nu > 0: B_nu(a) -> Gamma(nu)
    CHECK(b_nu(1.5, 1e-4) == doctest::Approx(std::tgamma(1.5)).epsilon(1e-3));
    // nu < 0: a^{-2nu} B_nu -> 2^{-2nu} Gamma(-nu)... B_{-1}(a) a^2 -> 4
    CHECK(b_nu(-1.0, 1e-3) * 1e-6 == doctest::Approx(4.0).epsilon(1e-3));
    // nu = 0: B_0(a) ~ -2 log a
    const double a = 1e-6;
    CHECK(b_nu(0.0, a) / (-2 * std::log(a)) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("b_nu large-a ratio to asymptotic form approaches one like 1/a") {
    for (double nu : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
        double worst = 0;
        for (double a = 30; a <= 300; a *= 1.25) {
            BnuOptions q;
            q.mode = BnuMode::quadrature;
            const double r = b_nu(nu, a, q) / b_nu_asymptotic(nu, a);
            worst = std::max(worst, a * std::fabs(r - 1));
        }
        CHECK(worst < 5.0);
    }
}

TEST_CASE("scaled b_nu does not underflow") {
    const QuadResult r = b_nu_scaled(1.0, 2000.0);
    CHECK(r.ok());
    CHECK(r.value > 0);
    CHECK(std::isfinite(r.value));
    // B_nu(a) e^{a} ~ sqrt(pi) (a/2)^{nu-1/2}
    CHECK(r.value / (std::sqrt(oracle::kPi) * std::pow(1000.0, 0.5)) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("truncated b_nu keeps the bulk of the integral") {
    const double a = 100;
    const double ell = std::pow(a, 0.75);
    CHECK(b_nu_truncated(0.0, a, ell) / oracle::b_nu_bessel(0.0, a) == doctest::Approx(1.0).epsilon(0.05));
    CHECK_THROWS_AS(b_nu_truncated(0.0, a, 0.5 * ell), InvalidArgument);
}

TEST_CASE("laplace power integral") {
    const LaurentPoly Q({{0.0, 1.0}, {1.0, 1.0}});  // 1 + t
    const double a = 40;
    const double r = laplace_power_integral(Q, a) / laplace_power_asymptotic(Q, a);
    CHECK(r >= 0.9);
    CHECK(r <= 1.1);
    const LaurentPoly P({{-1.0, 2.0}, {2.0, -0.5}});
    const double lhs = laplace_power_integral(Q * 3.0 + P, 5.0);
    const double rhs = 3 * laplace_power_integral(Q, 5.0) + laplace_power_integral(P, 5.0);
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::fabs(rhs));
}

TEST_CASE("b_nu rejects nonpositive a") {
    CHECK_THROWS_AS(b_nu(0.5, 0.0), InvalidArgument);
    CHECK_THROWS_AS(b_nu(0.5, -1.0), InvalidArgument);
}
