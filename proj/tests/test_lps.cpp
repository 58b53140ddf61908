#include <doctest.h>

#include <cmath>
#include <random>

#include "driftlab/lps.hpp"
#include "oracles.hpp"

using namespace driftlab;

namespace {

double ln(const Estimate& e) { return e.value.log_abs; }

const SourceFunction kUnitBall1 = SourceFunction::indicator_ball(Point{0.0}, 1.0);

}  // namespace

TEST_CASE("Riesz transform of the unit ball, third order in one dimension") {
    const auto D = DriftOperator::pure_drift(1, 3);
    std::vector<double> r;
    for (double eta : {50.0, 100.0, 200.0}) {
        const Estimate e = riesz_apply(D, kUnitBall1, Point{eta});
        CHECK(e.value.sign == -1);
        r.push_back(std::exp(ln(e) + 2 * eta - 0.5 * std::log(eta)));
    }
    for (double v : r) {
        CHECK(v > 0);
        CHECK(v / r.front() == doctest::Approx(1.0).epsilon(0.5));
    }
}

TEST_CASE("point mass application and linearity") {
    const auto D = DriftOperator::make(2, 2, {{MultiIndex{2, 0}, 1.0}, {MultiIndex{0, 2}, -0.3}});
    const Point y1{0.0, 0.0}, y2{-0.5, 1.0}, x{6.0, 1.5};
    const auto one = SourceFunction::point_masses({{y1, 2.5}});
    CHECK(riesz_apply(D, one, x).value.value() == doctest::Approx(2.5 * riesz_kernel(D, x, y1)).epsilon(1e-9));
    const auto a = SourceFunction::point_masses({{y1, 1.0}});
    const auto b = SourceFunction::point_masses({{y2, 3.0}});
    const auto ab = SourceFunction::point_masses({{y1, 1.0}, {y2, 3.0}});
    const double lhs = riesz_apply(D, ab, x).value.value();
    const double rhs = riesz_apply(D, a, x).value.value() + riesz_apply(D, b, x).value.value();
    CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::fabs(rhs));
    CHECK_THROWS_AS(riesz_apply(D, SourceFunction::indicator_ball(Point{0.0, 0.0}, 1.0), Point{0.5, 0.0}),
                    DomainError);
}

TEST_CASE("vertical square functions are bounded below at the expected rate") {
    const auto D = DriftOperator::pure_drift(1, 2);
    const auto f = SourceFunction::indicator_ball(Point{0.0}, 1.0, true);
    std::vector<double> h, g;
    for (double eta : {50.0, 100.0, 200.0}) {
        h.push_back(std::exp(ln(vertical_sq(SemigroupKind::heat, D, f, Point{eta})) + 2 * eta - 0.25 * std::log(eta)));
        g.push_back(std::exp(ln(vertical_sq(SemigroupKind::poisson, D, f, Point{eta})) + 2 * eta));
    }
    for (std::size_t i = 0; i < h.size(); ++i) {
        CHECK(h[i] > 0);
        CHECK(g[i] > 0);
        CHECK(h[i] / h[0] == doctest::Approx(1.0).epsilon(0.5));
        CHECK(g[i] / g[0] == doctest::Approx(1.0).epsilon(0.5));
    }
}

TEST_CASE("positive homogeneity") {
    const auto D = DriftOperator::pure_drift(1, 1);
    const Point x{8.0};
    const auto f2 = kUnitBall1.scaled(2);
    CHECK(ln(vertical_sq(SemigroupKind::heat, D, f2, x)) ==
          doctest::Approx(ln(vertical_sq(SemigroupKind::heat, D, kUnitBall1, x)) + std::log(2.0)).epsilon(1e-9));
    CHECK(ln(horizontal_sq(SemigroupKind::heat, 1, f2, x)) ==
          doctest::Approx(ln(horizontal_sq(SemigroupKind::heat, 1, kUnitBall1, x)) + std::log(2.0)).epsilon(1e-9));
    CHECK(ln(horizontal_max(SemigroupKind::poisson, 1, f2, x)) ==
          doctest::Approx(ln(horizontal_max(SemigroupKind::poisson, 1, kUnitBall1, x)) + std::log(2.0)).epsilon(1e-9));
    CHECK(ln(v_kappa_apply(3, f2, x)) == doctest::Approx(ln(v_kappa_apply(3, kUnitBall1, x)) + std::log(2.0)).epsilon(1e-12));
    CHECK(ln(t_op_apply(f2, x)) == doctest::Approx(ln(t_op_apply(kUnitBall1, x)) + std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("monotone in the source for positive kernels") {
    const auto small = SourceFunction::indicator_ball(Point{0.0, 0.0}, 0.5);
    const auto big = SourceFunction::indicator_ball(Point{0.0, 0.0}, 1.0);
    for (const Point& x : {Point{4.0, 0.5}, Point{9.0, -2.0}}) {
        CHECK(ln(v_kappa_apply(2, big, x)) > ln(v_kappa_apply(2, small, x)));
        CHECK(ln(t_op_apply(big, x)) > ln(t_op_apply(small, x)));
        CHECK(ln(heat_semigroup_apply(1.0, big, x)) > ln(heat_semigroup_apply(1.0, small, x)));
    }
}

TEST_CASE("horizontal square function on the window region") {
    std::vector<double> r;
    for (double eta : {100.0, 400.0}) {
        const Estimate h = horizontal_sq(SemigroupKind::heat, 2, kUnitBall1, Point{eta - 0.5});
        CHECK(h.value.sign == 1);
        r.push_back(std::exp(2 * ln(h) + 4 * eta - 0.5 * std::log(eta)));
    }
    CHECK(r[0] > 0);
    CHECK(r[1] / r[0] == doctest::Approx(1.0).epsilon(0.75));
}

TEST_CASE("heat maximal function is a contraction") {
    const auto f = SourceFunction::indicator_ball(Point{0.0, 0.0}, 1.0, true);
    for (const Point& x : {Point{1.5, 0.0}, Point{-2.0, 1.0}, Point{0.0, 3.0}, Point{6.0, 0.0}}) {
        const Estimate H = horizontal_max(SemigroupKind::heat, 0, f, x);
        CHECK(H.value.value() <= f.amplitude() * (1 + 1e-9));
        CHECK(H.value.value() > 0);
    }
}

TEST_CASE("Poisson square function decays like e^{-2x}") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> X(3, 60);
    for (int i = 0; i < 20; ++i) {
        const double x = X(rng);
        const Estimate g = horizontal_sq(SemigroupKind::poisson, 1, kUnitBall1, Point{x});
        CHECK(std::isfinite(ln(g)));
        // e^{-2x} up to a power of x
        CHECK(std::fabs(ln(g) + 2 * x) <= 3 * std::log(x) + 5);
    }
    const double a = ln(horizontal_sq(SemigroupKind::poisson, 1, kUnitBall1, Point{20.0})) + 40;
    const double b = ln(horizontal_sq(SemigroupKind::poisson, 1, kUnitBall1, Point{40.0})) + 80;
    CHECK(b < a);
}

TEST_CASE("V2 bound in one dimension") {
    // e^{-2x} times the mass to the left of x - 1
    CHECK(v_kappa_apply(2, kUnitBall1, Point{5.0}).value.value() ==
          doctest::Approx(std::exp(-10.0) * std::sinh(2.0)).epsilon(1e-9));
    for (double x : {1.5, 2.5, 7.0}) CHECK(v_kappa_apply(2, kUnitBall1, Point{x}).value.value() <= std::exp(-2 * x) * std::sinh(2.0) * (1 + 1e-12));
    CHECK(v_kappa_apply(2, kUnitBall1, Point{1.5}).value.value() < std::exp(-3.0) * std::sinh(2.0));
}

TEST_CASE("T operator of a point mass") {
    const auto g = SourceFunction::point_masses({{Point{0.0, 0.0}, 1.0}});
    for (const Point& x : {Point{4.0, 1.0}, Point{2.0, -1.3}, Point{30.0, 5.0}})
        CHECK(t_op_apply(g, x).value.value() == doctest::Approx(std::exp(-2 * x[0]) / std::sqrt(x[0])).epsilon(1e-14));
    for (const Point& x : {Point{0.5, 0.0}, Point{4.0, 2.5}, Point{-3.0, 0.0}}) CHECK(t_op_apply(g, x).value.sign == 0);
}

TEST_CASE("T operator weak-type supremum") {
    const WeakSup s0 = t_op_point_weak_sup(Point{0.0, 0.0});
    CHECK(std::isfinite(s0.sup));
    CHECK(s0.sup > 0);
    for (const Point& y0 : {Point{3.0, -1.0}, Point{-2.0, 5.0}})
        CHECK(t_op_point_weak_sup(y0).sup == doctest::Approx(s0.sup).epsilon(1e-9));
}

TEST_CASE("level set measure: closed form against grid") {
    const Point y0{0.0, 0.0};
    const auto g = SourceFunction::point_masses({{y0, 1.0}});
    const Region box = Region::box(Point{1.0, -2.2}, Point{4.5, 2.2});
    LevelSetOptions opt;
    opt.grid = 96;
    const std::vector<double> lls = {-6.0, -8.0};
    const auto grid = level_set_log_measures([&](const Point& x) { return t_op_apply(g, x).value; }, box, lls, opt);
    for (std::size_t i = 0; i < lls.size(); ++i)
        CHECK(std::exp(grid[i]) == doctest::Approx(std::exp(t_op_point_level_log_measure(y0, lls[i]))).epsilon(0.03));
}

TEST_CASE("heat semigroup recovers the indicator as t -> 0") {
    const auto f = SourceFunction::indicator_ball(Point{0.0, 0.0}, 1.0);
    const std::vector<std::pair<Point, double>> pts = {
        {Point{0.0, 0.0}, 1}, {Point{0.3, -0.4}, 1}, {Point{-0.5, 0.2}, 1}, {Point{1.6, 0.0}, 0}, {Point{0.0, -2.0}, 0}};
    for (const auto& [x, expect] : pts) CHECK(std::fabs(heat_semigroup_apply(1e-3, f, x).value.value() - expect) < 1e-3);
}

TEST_CASE("t^k d_t^k p_t vanishes at both ends of the time axis") {
    const Point x{2.0, 0.5}, y{0.0, 0.0};
    for (int k = 1; k <= 3; ++k) {
        const double mid = std::fabs(std::pow(2.0, k) * heat_dt_nat(k, 2.0, x, y));
        CHECK(std::fabs(std::pow(1e-3, k) * heat_dt_nat(k, 1e-3, x, y)) < 1e-6 * mid);
        CHECK(std::fabs(std::pow(1e4, k) * heat_dt_nat(k, 1e4, x, y)) < 1e-6 * mid);
    }
}

TEST_CASE("sources validate") {
    CHECK_THROWS(SourceFunction::indicator_ball(Point{0.0}, 0.0));
    CHECK_THROWS(SourceFunction::point_masses({}));
    CHECK_THROWS(SourceFunction::point_masses({{Point{0.0}, -1.0}}));
    CHECK(SourceFunction::indicator_ball(Point{0.0}, 1.0, true).amplitude() == doctest::Approx(1 / std::sinh(2.0)));
}
