// Uses only the C header and the shared library.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "driftlab/driftlab.h"

TEST_CASE("version and clean error state") {
    CHECK(std::strlen(dl_version()) > 0);
    dl_value v;
    const double x = 0, y = 0;
    CHECK(dl_heat_kernel(1, 1.0, &x, &y, &v) == DL_OK);
    CHECK(std::string(dl_last_error()).empty());
    CHECK(v.value == doctest::Approx(0.1037769).epsilon(1e-6));
    CHECK(v.sign == 1);
    CHECK(v.log_abs == doctest::Approx(std::log(v.value)));
}

TEST_CASE("error codes") {
    dl_value v;
    const double x = 0, y = 0;
    CHECK(dl_heat_kernel(1, -1.0, &x, &y, &v) == DL_ERR_INVALID_ARGUMENT);
    CHECK(std::string(dl_last_error()).size() > 0);
    CHECK(dl_heat_kernel(9, 1.0, &x, &y, &v) == DL_ERR_INVALID_ARGUMENT);
    CHECK(dl_heat_kernel(1, 1.0, nullptr, &y, &v) == DL_ERR_INVALID_ARGUMENT);
    CHECK(dl_b_nu(0.5, 0.0, &v) == DL_ERR_INVALID_ARGUMENT);
    dl_operator* op = nullptr;
    const int mixed[] = {1, 0, 1, 1};
    const double c[] = {1.0, 1.0};
    CHECK(dl_operator_create(2, 1, 2, mixed, c, &op) == DL_ERR_INVALID_ARGUMENT);
    CHECK(op == nullptr);
    dl_report* rep = nullptr;
    CHECK(dl_run("eval", "kernel = nope\nn = 1\n", "", nullptr, 1, 0, 0, &rep) == DL_ERR_CONFIG);
    CHECK(std::string(dl_last_error()).find("line 1") != std::string::npos);
    CHECK(dl_run("verify", "", "", nullptr, 1, 0, 0, &rep) == DL_ERR_CONFIG);
    CHECK(dl_run("eval", "kernel = heat\nn = 1\nt = 1\nx = 0\ny = 0\n", "", "/proc/nope/nope", 1, 0, 0, &rep) ==
          DL_ERR_IO);
    const double p[] = {0.5, 0.5};
    CHECK(dl_mu_ball(2, p, 0.0, &v) == DL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("operators and kernels") {
    dl_operator* op = nullptr;
    const int a[] = {1};
    const double c[] = {1.0};
    REQUIRE(dl_operator_create(1, 1, 1, a, c, &op) == DL_OK);
    CHECK(dl_operator_drift_order(op) == 1);
    const double x = 1, y = 0;
    dl_value q, e;
    REQUIRE(dl_riesz_kernel(op, &x, &y, 0, &q) == DL_OK);
    REQUIRE(dl_riesz_kernel(op, &x, &y, 1, &e) == DL_OK);
    CHECK(q.value == doctest::Approx(-0.119784953695865).epsilon(1e-9));
    CHECK(e.value == doctest::Approx(q.value).epsilon(1e-8));
    CHECK(q.sign == -1);
    CHECK(dl_riesz_kernel(op, &x, &y, 2, &q) == DL_ERR_INVALID_ARGUMENT);
    CHECK(dl_riesz_kernel(op, &x, &x, 0, &q) == DL_ERR_DOMAIN);
    dl_value d;
    REQUIRE(dl_heat_dx(op, 1.0, &x, &y, &d) == DL_OK);
    CHECK(d.value == doctest::Approx(-0.0445989).epsilon(1e-6));
    dl_operator_destroy(op);

    dl_value f, b, m, h;
    REQUIRE(dl_frac_power_kernel(1, 1, &x, &y, &f) == DL_OK);
    CHECK(f.value == doctest::Approx(std::exp(-1.0) / M_PI * std::cyl_bessel_k(0.0, 1.0)).epsilon(1e-9));
    REQUIRE(dl_b_nu(-1.0, 1.0, &b) == DL_OK);
    CHECK(b.value == doctest::Approx(4 * std::cyl_bessel_k(1.0, 1.0)).epsilon(1e-9));
    const double o = 0;
    REQUIRE(dl_mu_ball(1, &o, 1.0, &m) == DL_OK);
    CHECK(m.value == doctest::Approx(std::sinh(2.0)).epsilon(1e-13));
    REQUIRE(dl_heat_dt(1, 1, 1.0, &o, &o, &h) == DL_OK);
    CHECK(h.value == doctest::Approx(-0.1556654).epsilon(1e-6));
    dl_value p;
    REQUIRE(dl_poisson_kernel(1, 1.0, &x, &y, &p) == DL_OK);
    CHECK(p.value > 0);
}

TEST_CASE("regions through text") {
    dl_region* r = nullptr;
    REQUIRE(dl_region_from_text("kind = SigmaEta\nn = 2\neta = 4\n", &r) == DL_OK);
    double lm = 0;
    REQUIRE(dl_region_log_measure(r, &lm) == DL_OK);
    CHECK(std::exp(lm) == doctest::Approx(2577.52919355).epsilon(1e-10));
    size_t need = 0;
    REQUIRE(dl_region_to_text(r, nullptr, 0, &need) == DL_OK);
    std::vector<char> buf(need);
    REQUIRE(dl_region_to_text(r, buf.data(), buf.size(), &need) == DL_OK);
    CHECK(std::string(buf.data()).find("SigmaEta") != std::string::npos);
    std::vector<double> pts(2 * 10);
    REQUIRE(dl_region_sample(r, 10, 1, 7, pts.data()) == DL_OK);
    for (int i = 0; i < 10; ++i) {
        CHECK(pts[2 * i] > 3);
        CHECK(pts[2 * i] < 4);
    }
    dl_region_destroy(r);
    CHECK(dl_region_from_text("kind = Blob\n", &r) != DL_OK);
}

TEST_CASE("apply through the C API") {
    dl_source* s = nullptr;
    const double y0[] = {0, 0};
    const double w[] = {1};
    REQUIRE(dl_source_masses(2, 1, y0, w, 0, &s) == DL_OK);
    const double x[] = {4, 1};
    dl_value v;
    REQUIRE(dl_apply(DL_APPLY_T, nullptr, 0, s, x, &v) == DL_OK);
    CHECK(v.value == doctest::Approx(std::exp(-8.0) / 2).epsilon(1e-14));
    CHECK(dl_apply(DL_APPLY_RIESZ, nullptr, 0, s, x, &v) == DL_ERR_INVALID_ARGUMENT);
    CHECK(dl_apply(DL_APPLY_HK_SQ, nullptr, 1.5, s, x, &v) == DL_ERR_INVALID_ARGUMENT);
    dl_source_destroy(s);
    double sup = 0;
    REQUIRE(dl_t_op_weak_sup(2, y0, &sup) == DL_OK);
    CHECK(std::isfinite(sup));
    CHECK(sup > 0);
    dl_source* ball = nullptr;
    const double one = 0;
    REQUIRE(dl_source_ball(1, &one, 1.0, 0, &ball) == DL_OK);
    const double xf = 5;
    REQUIRE(dl_apply(DL_APPLY_V_KAPPA, nullptr, 2, ball, &xf, &v) == DL_OK);
    CHECK(v.value == doctest::Approx(std::exp(-10.0) * std::sinh(2.0)).epsilon(1e-9));
    dl_source_destroy(ball);
}

TEST_CASE("run reports") {
    dl_report* r = nullptr;
    REQUIRE(dl_run("eval", "kernel = heat\nn = 1\nt = 1\nx = 0\ny = 0\n", "", nullptr, 2, 5, 1, &r) == DL_OK);
    CHECK(dl_report_passed(r) == 1);
    const std::string text = dl_report_text(r);
    CHECK(text.find("seed=5") != std::string::npos);
    CHECK(text.find("0.10377687435514868") != std::string::npos);
    dl_report_destroy(r);
    REQUIRE(dl_run("verify", "n = 1\nk = 1\n", "riesz_local", nullptr, 1, 0, 0, &r) == DL_OK);
    CHECK(dl_report_passed(r) == 1);
    dl_report_destroy(r);
}
