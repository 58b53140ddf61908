#include <doctest.h>

#include <cmath>

#include "driftlab/kernels.hpp"
#include "driftlab/quadrature.hpp"
#include "driftlab/space.hpp"
#include "oracles.hpp"

using namespace driftlab;

TEST_CASE("half-line integral of e^{-t}") {
    const QuadResult r = integrate_halfline([](double t) { return std::exp(-t); }, std::nullopt, QuadConfig{});
    CHECK(r.ok());
    CHECK(std::fabs(r.value - 1) <= 1e-10);
}

TEST_CASE("known integrals with honest error estimates") {
    struct Case {
        Fn1 f;
        double a, b, exact;
    };
    const double pi = oracle::kPi;
    const std::vector<Case> cases = {
        {[](double x) { return std::sin(x); }, 0, pi, 2.0},
        {[](double x) { return 1 / (1 + x * x); }, -1, 1, pi / 2},
        {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3},
        {[](double x) { return std::log(x); }, 0, 1, -1.0},
        {[](double x) { return std::exp(-x * x); }, -5, 5, std::sqrt(pi) * std::erf(5.0)},
        {[](double x) { return std::fabs(x - 0.3); }, 0, 1, 0.5 * (0.09 + 0.49)},
        {[](double x) { return x * x * x; }, -2, 3, (81.0 - 16.0) / 4},
        {[](double x) { return std::cos(50 * x); }, 0, 1, std::sin(50.0) / 50},
        {[](double x) { return std::exp(x); }, 0, 10, std::exp(10.0) - 1},
    };
    for (const auto& c : cases) {
        const QuadResult r = integrate(c.f, c.a, c.b, QuadConfig{});
        CHECK(r.ok());
        const double err = std::fabs(r.value - c.exact);
        CHECK(err <= 1e-8 * std::fabs(c.exact));
        // the estimate is within a factor of ten of the true error
        CHECK(err <= std::max(10 * r.error_estimate, 1e-14 * std::fabs(c.exact)));
    }
    // endpoint power singularity through the log-axis engine
    const QuadResult s = integrate_log_interval([](double t) { return 1 / std::sqrt(t); }, 0, 4, QuadConfig{});
    CHECK(s.ok());
    CHECK(std::fabs(s.value - 4) <= 1e-9 * 4);
}

TEST_CASE("B_nu integrands through the half-line engine") {
    const QuadResult a = integrate_halfline(
        [](double t) { return std::sqrt(t) * std::exp(-t - 1 / t) / t; }, 1.0, QuadConfig{});
    CHECK(a.value == doctest::Approx(oracle::b_nu_bessel(0.5, 2)).epsilon(1e-9));
    const QuadResult b = integrate_halfline(
        [](double t) { return std::exp(-t - 0.25 / t) / (t * t); }, 0.5, QuadConfig{});
    CHECK(b.value == doctest::Approx(4 * std::cyl_bessel_k(1.0, 1.0)).epsilon(1e-9));
}

TEST_CASE("Laplace split changes B_nu integrals by less than the error estimates") {
    for (double a : {10.0, 30.0, 80.0, 200.0})
        for (double nu : {-1.0, 0.5, 2.0}) {
            const Fn1 g = [=](double t) {
                const double st = std::sqrt(t), gap = st - (a / 2) / st;
                return std::pow(t, nu - 1) * std::exp(-gap * gap);
            };
            QuadConfig off;
            off.laplace_split = false;
            const QuadResult r1 = integrate_halfline(g, a / 2, QuadConfig{});
            const QuadResult r2 = integrate_halfline(g, a / 2, off);
            CHECK(std::fabs(r1.value - r2.value) <= r1.error_estimate + r2.error_estimate + 1e-15 * std::fabs(r1.value));
        }
}

TEST_CASE("Laplace-type integrand with and without the split") {
    const double a = 400, nu = 0.5;
    const Fn1 g = [=](double t) {
        const double st = std::sqrt(t), gap = st - (a / 2) / st;
        return std::pow(t, nu - 1) * std::exp(-gap * gap);
    };
    // e^{a} B_{1/2}(a) = sqrt(pi)
    QuadConfig with, without;
    without.laplace_split = false;
    const QuadResult r1 = integrate_halfline(g, a / 2, with);
    const QuadResult r2 = integrate_halfline(g, a / 2, without);
    CHECK(r1.value == doctest::Approx(std::sqrt(oracle::kPi)).epsilon(1e-9));
    CHECK(r2.value == doctest::Approx(std::sqrt(oracle::kPi)).epsilon(1e-6));
}

TEST_CASE("quadrature is deterministic") {
    const FnN f = [](const Point& y) { return std::exp(2 * y[0]) * std::cos(y[1]); };
    const QuadResult a = integrate_ball(f, Point{0.5, 0.1}, 0.7, QuadConfig{});
    const QuadResult b = integrate_ball(f, Point{0.5, 0.1}, 0.7, QuadConfig{});
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("box and ball volumes") {
    const FnN one = [](const Point&) { return 1.0; };
    CHECK(integrate_box(one, Point{0.0, -1.0, 2.0}, Point{1.0, 1.0, 5.0}, QuadConfig{}).value ==
          doctest::Approx(6.0).epsilon(1e-12));
    for (int n = 1; n <= 6; ++n) {
        Point c(n);
        const QuadResult r = integrate_ball(one, c, 1.5, QuadConfig{});
        const double exact = std::pow(oracle::kPi, n / 2.0) / std::tgamma(n / 2.0 + 1) * std::pow(1.5, n);
        // n > 4 goes through quasi-Monte Carlo
        CHECK(r.value == doctest::Approx(exact).epsilon(n > 4 ? 2e-2 : 1e-9));
    }
}

TEST_CASE("ball integral of the weight matches mu_ball") {
    for (int n = 1; n <= 3; ++n) {
        Point c(n);
        c[0] = 1.3;
        const QuadResult r = integrate_ball([](const Point& y) { return std::exp(2 * y[0]); }, c, 2.0, QuadConfig{});
        CHECK(r.value == doctest::Approx(mu_ball(c, 2.0)).epsilon(1e-8));
    }
}

TEST_CASE("heat mass over a ball is at most one") {
    const Point x{0.2, -0.1};
    for (double t : {0.1, 1.0, 5.0}) {
        const QuadResult r = integrate_ball(
            [&](const Point& y) { return heat_kernel(t, x, y) * std::exp(2 * y[0]); }, Point{0.0, 0.0}, 1.0, QuadConfig{});
        CHECK(r.value > 0);
        CHECK(r.value <= 1 + 1e-9);
    }
}

TEST_CASE("halton and config validation") {
    CHECK(halton(1, 2) == 0.5);
    CHECK(halton(3, 2) == 0.75);
    CHECK(halton(2, 3) == doctest::Approx(2.0 / 3));
    QuadConfig bad;
    bad.rel_tol = -1;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    CHECK_THROWS_AS(integrate_log_interval([](double x) { return x; }, 1, 0, QuadConfig{}), InvalidArgument);
}
