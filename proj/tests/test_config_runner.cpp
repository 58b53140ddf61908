#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "driftlab/config.hpp"
#include "driftlab/runner.hpp"
#include "driftlab/types.hpp"

using namespace driftlab;

namespace {

std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmpdir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("driftlab_test_" + tag);
    std::filesystem::remove_all(p);
    return p.string();
}

}  // namespace

TEST_CASE("config parsing") {
    const ConfigText c = ConfigText::parse("# comment\n a = 1.5 \nlist = 1, 2 3\n\nname = heat # trailing\na = 2\n");
    CHECK(c.get_double("a") == 2.0);  // last one wins
    CHECK(c.all("a").size() == 2);
    CHECK(c.get_doubles("list") == std::vector<double>{1, 2, 3});
    CHECK(c.get_string("name") == "heat");
    CHECK(c.get_int("missing", 7) == 7);
    CHECK(c.find("a")->line == 6);
}

TEST_CASE("config errors carry line numbers") {
    try {
        ConfigText::parse("a = 1\nthis line has no equals\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    const ConfigText c = ConfigText::parse("a = 1\nb = x1\n");
    CHECK_THROWS_AS(c.get_double("b"), ConfigError);
    CHECK_THROWS_AS(c.get_double("zzz"), ConfigError);
    CHECK_THROWS_AS(c.check_known({"a"}), ConfigError);
    CHECK_THROWS_AS(parse_number("1.5e", 3), ConfigError);
}

TEST_CASE("hash helpers") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("eval heat row") {
    const RunReport r = run_command("eval", "kernel = heat\nn = 1\nt = 1\nx = 0\ny = 0\n", "", {});
    CHECK(r.passed);
    CHECK(r.text.find("0.10377687435514868") != std::string::npos);
    CHECK(r.text.rfind("# driftlab eval config_hash=", 0) == 0);
    CHECK(r.text.find("kernel,order,t,x,y,value,log10_abs,sign,error_estimate") != std::string::npos);
}

TEST_CASE("eval b_nu and v_kappa rows") {
    const RunReport r = run_command("eval", "kernel = b_nu\nnu = 0.5\na = 2\n", "", {});
    CHECK(r.text.find("0.2398755") != std::string::npos);
    const RunReport v = run_command("eval", "kernel = v_kappa\nn = 1\nkappa = 2\nx = 3\ny = 0\n", "", {});
    CHECK(v.text.find("0.002478752176666") != std::string::npos);
}

TEST_CASE("unknown names are config errors") {
    CHECK_THROWS_AS(run_command("eval", "kernel = nope\nn = 1\n", "", {}), ConfigError);
    CHECK_THROWS_AS(run_command("apply", "operator = nope\nn = 1\nx = 3\n", "", {}), ConfigError);
    CHECK_THROWS_AS(run_command("eval", "kernel = heat\nn = 1\nt = 1\nx = 0\ny = 0\ntypo = 1\n", "", {}), ConfigError);
    CHECK_THROWS_AS(run_command("frobnicate", "", "", {}), ConfigError);
    CHECK_THROWS_AS(run_command("verify", "", "", {}), ConfigError);
    CHECK_THROWS_AS(run_command("verify", "", "nope", {}), ConfigError);
}

TEST_CASE("seed flag overrides config and appears in header") {
    RunOptions o;
    o.seed = 42;
    const RunReport r = run_command("eval", "kernel = heat\nn = 1\nt = 1\nx = 0\ny = 0\nseed = 3\n", "", o);
    CHECK(r.text.find("seed=42") != std::string::npos);
    const RunReport s = run_command("eval", "kernel = heat\nn = 1\nt = 1\nx = 0\ny = 0\nseed = 3\n", "", {});
    CHECK(s.text.find("seed=3") != std::string::npos);
}

TEST_CASE("output directory and determinism") {
    const std::string cfg = "kernel = riesz\nn = 2\nalpha = 2 0\nx = 3 0.5\nx = 1 1\ny = 0 0\n";
    RunOptions a, b;
    a.out_dir = tmpdir("a");
    b.out_dir = tmpdir("b");
    b.threads = 4;
    const RunReport ra = run_command("eval", cfg, "", a);
    const RunReport rb = run_command("eval", cfg, "", b);
    REQUIRE(ra.files.size() == 1);
    REQUIRE(rb.files.size() == 1);
    CHECK(slurp(ra.files[0]) == slurp(rb.files[0]));
    CHECK(slurp(ra.files[0]).find("riesz") != std::string::npos);
}

TEST_CASE("verify writes per-suite CSV and a report") {
    RunOptions o;
    o.out_dir = tmpdir("verify");
    const RunReport r = run_command("verify", "", "riesz_closed_form", o);
    CHECK(r.passed);
    CHECK(std::filesystem::exists(std::filesystem::path(o.out_dir) / "report.md"));
    CHECK(std::filesystem::exists(std::filesystem::path(o.out_dir) / "riesz_closed_form.csv"));
}

TEST_CASE("unwritable output is an IO error") {
    RunOptions o;
    o.out_dir = "/proc/definitely/not/writable";
    CHECK_THROWS_AS(run_command("eval", "kernel = heat\nn = 1\nt = 1\nx = 0\ny = 0\n", "", o), IoError);
}

TEST_CASE("apply and levelset") {
    const RunReport a = run_command(
        "apply", "operator = t_op\nn = 2\nsource.kind = masses\nsource.mass = 1 : 0 0\nx = 4 1\n", "", {});
    CHECK(a.text.find(",0.0001677313139512") != std::string::npos);
    const RunReport l = run_command("levelset",
                                    "operator = v_kappa\nkappa = 2\nn = 1\nregion.kind = Box\nregion.n = 1\n"
                                    "region.lo = 2\nregion.hi = 6\nlog_lambda = -6\ngrid = 8\n",
                                    "", {});
    CHECK(l.text.find("lambda,log_lambda,mu,log_mu,lambda_mu") != std::string::npos);
    CHECK_THROWS_AS(run_command("levelset",
                                "operator = v_kappa\nkappa = 2\nn = 2\nregion.kind = Box\nregion.n = 1\n"
                                "region.lo = 2\nregion.hi = 6\nlog_lambda = -6\n",
                                "", {}),
                    ConfigError);
}
