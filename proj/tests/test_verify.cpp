#include <doctest.h>

#include <cmath>

#include "driftlab/verify.hpp"

using namespace driftlab;

TEST_CASE("scalar inequality at a = b = 1") {
    // a b^{1/2} <= C0 [a (1 + ln+ a)^{1/2} + e^{b/8}] with C0 = 1
    const double lhs = 1.0, rhs = 1.0 + std::exp(0.125);
    CHECK(rhs == doctest::Approx(2.133).epsilon(1e-3));
    CHECK(lhs <= rhs);
}

TEST_CASE("scalar inequality constant and random trials") {
    const OrliczReport r = scalar_orlicz_inequality_test(4, 20000, 5);
    CHECK(r.pass);
    CHECK(r.violations == 0);
    CHECK(r.c0 > 1);
    CHECK(r.max_sample_ratio <= r.c0);
    // the constant is a supremum, so it grows with kappa
    CHECK(scalar_orlicz_inequality_test(6, 1000).c0 > scalar_orlicz_inequality_test(3, 1000).c0);
    CHECK_THROWS_AS(scalar_orlicz_inequality_test(2, 10), InvalidArgument);
}

TEST_CASE("growth fit") {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < 6; ++i) pts.push_back({0.1 * i, 0.5 * 0.1 * i + 3});
    const GrowthFit f = fit_growth(pts, 0.5, 0.25);
    CHECK(f.exponent_estimate == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.stderr_ < 1e-10);
    CHECK(f.pass);
    CHECK_FALSE(fit_growth(pts, 1.0, 0.25).pass);
    CHECK(fit_growth(pts, 0.75, 0.25).pass);  // boundary is inclusive
    pts.resize(3);
    CHECK_THROWS_AS(fit_growth(pts, 0.5, 0.25), DomainError);
}

TEST_CASE("weak type targets") {
    CHECK(weak_type_target(SharpOp::riesz, 3, 3) == 0.5);
    CHECK(weak_type_target(SharpOp::riesz, 2, 2) == 0.0);
    CHECK(weak_type_target(SharpOp::HD, 2, 2) == 0.25);
    CHECK(weak_type_target(SharpOp::GD, 4, 4) == 1.0);
    CHECK(weak_type_target(SharpOp::hk, 2, 2) == 0.25);
    CHECK(weak_type_target(SharpOp::Hk, 2, 2) == 0.5);
}

TEST_CASE("ratio suites: local Riesz in one dimension and global in two") {
    const auto D1 = DriftOperator::pure_drift(1, 1);
    const RatioSuiteReport a = estimate_ratio_suite(RatioSuite::riesz_local, &D1, 1, 1, nullptr);
    CHECK(a.pass);
    CHECK(a.max_ratio < a.cap);
    CHECK(a.min_ratio > 0);
    const auto D2 = DriftOperator::pure_drift(2, 2);
    const RatioSuiteReport b = estimate_ratio_suite(RatioSuite::riesz_global, &D2, 2, 2, nullptr);
    CHECK(b.pass);
    CHECK(std::isfinite(b.max_ratio));
    const RatioSuiteReport c = estimate_ratio_suite(RatioSuite::hk_kernel, nullptr, 1, 1, nullptr);
    CHECK(c.pass);
    CHECK_THROWS_AS(estimate_ratio_suite(RatioSuite::riesz_local, nullptr, 1, 1, nullptr), InvalidArgument);
}

TEST_CASE("suite names parse") {
    for (RatioSuite s : {RatioSuite::riesz_local, RatioSuite::riesz_global, RatioSuite::lp_local, RatioSuite::lp_global,
                         RatioSuite::hk_kernel, RatioSuite::Hk_kernel, RatioSuite::gk_kernel}) {
        RatioSuite back;
        REQUIRE(parse_ratio_suite(ratio_suite_name(s), back));
        CHECK(back == s);
    }
    SharpOp op;
    CHECK(parse_sharp_op("HD", op));
    CHECK(op == SharpOp::HD);
    CHECK_FALSE(parse_sharp_op("nope", op));
}

TEST_CASE("sharpness preconditions") {
    CHECK_THROWS_AS(sharpness_suite(SharpOp::riesz, 1, 3, 3, {20.0, 100.0}, 3, nullptr), InvalidArgument);
    CHECK_THROWS_AS(sharpness_suite(SharpOp::riesz, 1, 3, 3, {100.0, 50.0}, 3, nullptr), InvalidArgument);
    CHECK_THROWS_AS(sharp_operator(1, 3, 2), InvalidArgument);
    CHECK(sharp_operator(2, 3, 2).drift_order() == 2);
}

TEST_CASE("sharpness for the Riesz transform, third order") {
    const SharpnessReport r = sharpness_suite(SharpOp::riesz, 1, 3, 3, {50.0, 100.0, 200.0}, 3, nullptr);
    CHECK(r.sign_failures == 0);
    CHECK(r.min_normalized > 0);
    CHECK(r.drift <= 2);
    CHECK(r.pass);
}

TEST_CASE("weak type growth needs four points") {
    CHECK_THROWS_AS(weak_type_growth(SharpOp::riesz, 1, 3, 3, 0.5, 0.25, {50.0, 100.0, 200.0}, 3, nullptr), DomainError);
}

TEST_CASE("suites are deterministic") {
    const auto a = run_suite("riesz_closed_form", "");
    const auto b = run_suite("riesz_closed_form", "");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].csv() == b[i].csv());
        CHECK(a[i].summary == b[i].summary);
    }
    const auto o1 = run_suite("orlicz", "kappa = 3\ntrials = 2000\n", {1, 9});
    const auto o2 = run_suite("orlicz", "kappa = 3\ntrials = 2000\n", {4, 9});
    CHECK(o1[0].csv() == o2[0].csv());  // thread count does not change results
}

TEST_CASE("markdown report") {
    const auto r = run_suite("riesz_closed_form", "");
    const std::string md = markdown_report(r, "test run");
    CHECK(md.find("riesz_closed_form") != std::string::npos);
    CHECK(md.find("PASS") != std::string::npos);
    CHECK(md.find("|") != std::string::npos);
}

TEST_CASE("suite dispatch errors") {
    CHECK_THROWS_AS(run_suite("no_such_suite", ""), ConfigError);
    CHECK_THROWS_AS(run_suite("sharpness", "op = nope\n"), ConfigError);
    CHECK_THROWS_AS(run_suite("riesz_local", "n = 7\n"), ConfigError);
    CHECK_THROWS(run_suite("riesz_local", "bogus = 1\n"));
}
