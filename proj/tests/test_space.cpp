#include <doctest.h>

#include <cmath>

#include "driftlab/space.hpp"
#include "oracles.hpp"

using namespace driftlab;

TEST_CASE("mu_ball closed form in one dimension") {
    CHECK(mu_ball(Point{0.0}, 1.0) == doctest::Approx(std::sinh(2.0)).epsilon(1e-13));
    CHECK(mu_ball(Point{0.0}, 1.0) == doctest::Approx(3.626860).epsilon(1e-6));
    // x = 2, r = 0.5: integral of e^{2s} over [1.5, 2.5]
    CHECK(mu_ball(Point{2.0}, 0.5) == doctest::Approx((std::exp(5.0) - std::exp(3.0)) / 2).epsilon(1e-13));
}

TEST_CASE("mu_ball against a polar Simpson oracle in two and three dimensions") {
    for (double r : {0.1, 1.0, 3.0}) {
        // n = 2: integral over the disc of e^{2 z_1} = int_0^r s ds int_0^{2pi} e^{2 s cos th} dth = 2pi int_0^r s I_0(2s) ds
        const long double m2 = oracle::simpson(
            [](long double s) { return 2 * oracle::kPi * s * std::cyl_bessel_i(0.0, 2 * (double)s); }, 0, r, 2000);
        CHECK(mu_ball(Point{0.0, 0.0}, r) == doctest::Approx((double)m2).epsilon(1e-10));
        // n = 3: 4 pi int_0^r s^2 sinh(2s)/(2s) ds
        const long double m3 = oracle::simpson(
            [](long double s) { return s == 0 ? 0.0L : 4 * oracle::kPi * s * s * std::sinh(2 * s) / (2 * s); }, 0, r,
            2000);
        CHECK(mu_ball(Point{0.0, 0.0, 0.0}, r) == doctest::Approx((double)m3).epsilon(1e-10));
    }
}

TEST_CASE("mu_ball translation covariance and small-radius limit") {
    for (double a : {-3.0, 0.7, 12.0}) {
        const Point x{a, 1.5};
        CHECK(mu_ball(x, 0.8) / mu_ball(Point{0.0, -4.0}, 0.8) == doctest::Approx(std::exp(2 * a)).epsilon(1e-12));
    }
    const double r = 1e-4;
    CHECK(mu_ball(Point{0.0, 0.0}, r) / (oracle::kPi * r * r) == doctest::Approx(1.0).epsilon(1e-6));
    double prev = 0;
    for (double rr = 0.05; rr < 20; rr *= 1.7) {
        const double m = mu_ball(Point{0.0, 0.0, 0.0}, rr);
        CHECK(m > prev);
        prev = m;
    }
    // large radius in log form stays finite
    CHECK(std::isfinite(log_mu_ball(Point{0.0, 0.0}, 600.0)));
}

TEST_CASE("mu_ball rejects bad radius") {
    CHECK_THROWS_AS(mu_ball(Point{0.0}, 0.0), InvalidArgument);
    CHECK_THROWS_AS(mu_ball(Point{0.0}, -1.0), InvalidArgument);
    CHECK_THROWS_AS(mu_ball(Point{0.0}, NAN), InvalidArgument);
}

TEST_CASE("region measures") {
    CHECK(Region::omega(1, 5).measure() == doctest::Approx((std::exp(12.0) - std::exp(10.0)) / 2).epsilon(1e-12));
    CHECK(Region::omega(1, 5).measure() == doctest::Approx(70364.1628121).epsilon(1e-10));
    CHECK(Region::sigma(2, 4).measure() == doctest::Approx(2577.52919355).epsilon(1e-10));
    CHECK(Region::box(Point{0.0, -1.0}, Point{1.0, 2.0}).measure() ==
          doctest::Approx(3 * (std::exp(2.0) - 1) / 2).epsilon(1e-12));
    CHECK(Region::ball(Point{1.0}, 2.0).measure() == doctest::Approx(mu_ball(Point{1.0}, 2.0)).epsilon(1e-14));
}

TEST_CASE("omega measure scales like e^{2 eta} eta^{(n-1)/2}") {
    for (int n : {1, 2, 3}) {
        std::vector<double> r;
        for (double eta : {10.0, 20.0, 40.0, 80.0})
            r.push_back(std::exp(Region::omega(n, eta).log_measure() - 2 * eta - 0.5 * (n - 1) * std::log(eta)));
        for (double v : r) CHECK(v / r.front() == doctest::Approx(1.0).epsilon(0.1));
    }
}

TEST_CASE("sampled points lie in the region") {
    const std::vector<Region> regions = {Region::omega(1, 10), Region::omega(2, 50), Region::omega(3, 20),
                                         Region::sigma(2, 100), Region::ball(Point{1.0, 2.0}, 0.5),
                                         Region::box(Point{0.0, 0.0}, Point{1.0, 3.0})};
    for (const auto& R : regions)
        for (auto scheme : {SampleScheme::grid, SampleScheme::quasi_random}) {
            const auto pts = sample_region(R, 100, scheme, 3);
            CHECK(pts.size() == 100);
            for (const auto& p : pts) CHECK(R.contains(p));
        }
    const auto one = sample_region(Region::ball(Point{1.0, 2.0}, 0.5), 1, SampleScheme::grid);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == Point{1.0, 2.0});
}

TEST_CASE("quasi-random samples are deterministic per seed") {
    const Region R = Region::sigma(2, 60);
    const auto a = sample_region(R, 50, SampleScheme::quasi_random, 9);
    const auto b = sample_region(R, 50, SampleScheme::quasi_random, 9);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("region text round trip") {
    for (const Region& R : {Region::omega(2, 50, {0.3}, 0.5), Region::sigma(3, 7), Region::ball(Point{1.0, -2.0}, 0.25),
                            Region::box(Point{0.0}, Point{2.0})}) {
        const Region back = Region::from_text(R.to_text());
        CHECK(back.to_text() == R.to_text());
        CHECK(back.log_measure() == R.log_measure());
    }
}

TEST_CASE("invalid regions are rejected") {
    CHECK_THROWS(Region::omega(1, -1));
    CHECK_THROWS(Region::ball(Point{0.0}, 0));
    CHECK_THROWS(Region::box(Point{1.0}, Point{0.0}));
    CHECK_THROWS(Region::from_text("kind = Torus\nn = 2\n"));
}

TEST_CASE("drift frame round trip and scale") {
    const DriftFrame F({0.0, 3.0, 4.0});
    CHECK(F.scale() == doctest::Approx(5.0));
    const Point x{1.0, -2.0, 0.5};
    const Point back = F.from_normalized(F.to_normalized(x));
    for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-14));
    // v itself maps onto the first axis
    const Point z = F.to_normalized(Point{0.0, 3.0, 4.0});
    CHECK(std::fabs(z[1]) < 1e-12);
    CHECK(std::fabs(z[2]) < 1e-12);
    CHECK(z[0] > 0);
}
