#include "driftlab/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "driftlab/kernels.hpp"
#include "driftlab/lps.hpp"
#include "driftlab/parallel.hpp"
#include "driftlab/space.hpp"
#include "driftlab/verify.hpp"

namespace driftlab {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_point(const Point& p) {
    std::string s;
    for (int i = 0; i < p.dim(); ++i) s += (i ? " " : "") + num(p[i]);
    return s;
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
    return s + "\n";
}

bool parse_bool(const ConfigText& cfg, const std::string& key, bool fallback) {
    if (!cfg.has(key)) return fallback;
    const ConfigEntry* e = cfg.find(key);
    if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
    if (e->value == "false" || e->value == "0" || e->value == "no") return false;
    throw ConfigError("'" + key + "' must be true or false", e->line);
}

int int_in(const ConfigText& cfg, const std::string& key, long lo, long hi) {
    const long v = cfg.get_int(key);
    if (v < lo || v > hi)
        throw ConfigError("'" + key + "' must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                          cfg.find(key)->line);
    return static_cast<int>(v);
}

Point point_from(const std::vector<double>& v, int n, const std::string& key, int line) {
    if (static_cast<int>(v.size()) != n)
        throw ConfigError("'" + key + "' needs " + std::to_string(n) + " coordinates", line);
    const Point p = Point::from(v);
    if (!p.finite()) throw ConfigError("'" + key + "' has non-finite coordinates", line);
    return p;
}

std::vector<Point> points_for(const ConfigText& cfg, const std::string& key, int n) {
    std::vector<Point> out;
    for (const ConfigEntry* e : cfg.all(key)) out.push_back(point_from(parse_number_list(e->value, e->line), n, key, e->line));
    return out;
}

std::vector<Point> points_from_file(const ConfigText& cfg, int n) {
    const ConfigEntry* e = cfg.find("points");
    std::ifstream in(e->value);
    if (!in) throw ConfigError("cannot open points file '" + e->value + "'", e->line);
    std::vector<Point> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::vector<double> v;
        try {
            v = parse_number_list(line, lineno);
        } catch (const ConfigError& err) {
            throw ConfigError("points file '" + e->value + "': " + err.what(), e->line);
        }
        out.push_back(point_from(v, n, "points file line " + std::to_string(lineno), e->line));
    }
    if (out.empty()) throw ConfigError("points file '" + e->value + "' holds no points", e->line);
    return out;
}

QuadConfig quad_from(const ConfigText& cfg, std::uint64_t seed) {
    QuadConfig q;
    q.rel_tol = cfg.get_double("quad.rel_tol", q.rel_tol);
    q.abs_tol = cfg.get_double("quad.abs_tol", q.abs_tol);
    q.max_depth = static_cast<int>(cfg.get_int("quad.max_depth", q.max_depth));
    q.max_panels = static_cast<int>(cfg.get_int("quad.max_panels", q.max_panels));
    q.seed = seed;
    try {
        q.validate();
    } catch (const InvalidArgument& e) {
        const ConfigEntry* any = cfg.find("quad.rel_tol");
        throw ConfigError(std::string("invalid quadrature settings: ") + e.what(), any ? any->line : 0);
    }
    return q;
}

OpConfig op_from(const ConfigText& cfg, std::uint64_t seed) {
    OpConfig c = OpConfig::defaults();
    c.outer.rel_tol = cfg.get_double("op.outer_rel_tol", c.outer.rel_tol);
    c.inner.rel_tol = cfg.get_double("op.inner_rel_tol", c.inner.rel_tol);
    c.points_per_decade = static_cast<int>(cfg.get_int("op.points_per_decade", c.points_per_decade));
    c.t_min = cfg.get_double("op.t_min", c.t_min);
    c.t_max = cfg.get_double("op.t_max", c.t_max);
    c.outer.seed = c.inner.seed = seed;
    if (!(c.t_min > 0) || !(c.t_max > c.t_min) || c.points_per_decade < 2) {
        const ConfigEntry* e = cfg.find("op.t_min");
        throw ConfigError("op.t_min, op.t_max or op.points_per_decade out of range", e ? e->line : 0);
    }
    try {
        c.outer.validate();
        c.inner.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("invalid operator tolerances: ") + e.what());
    }
    return c;
}

std::uint64_t seed_of(const ConfigText& cfg, const RunOptions& opt) {
    return opt.seed ? *opt.seed : cfg.get_u64("seed", 1);
}

// D from `term = coeff : e1 ... en` lines, or `alpha = e1 ... en`.
DriftOperator operator_from(const ConfigText& cfg, int n) {
    std::vector<DriftOperator::Term> terms;
    int k = -1, line = 0;
    auto take_alpha = [&](const std::string& text, int ln) {
        const auto v = parse_number_list(text, ln);
        if (static_cast<int>(v.size()) != n) throw ConfigError("multi-index needs n entries", ln);
        std::vector<int> e;
        for (double d : v) {
            if (d < 0 || d != std::floor(d) || d > 64) throw ConfigError("multi-index entries must be small nonnegative integers", ln);
            e.push_back(static_cast<int>(d));
        }
        return MultiIndex::from(e);
    };
    for (const ConfigEntry* e : cfg.all("term")) {
        const auto colon = e->value.find(':');
        if (colon == std::string::npos) throw ConfigError("term must read 'coefficient : multi-index'", e->line);
        const double c = parse_number(e->value.substr(0, colon), e->line);
        const MultiIndex a = take_alpha(e->value.substr(colon + 1), e->line);
        if (k >= 0 && a.order() != k) throw ConfigError("all terms must have the same order", e->line);
        k = a.order();
        line = e->line;
        terms.push_back({a, c});
    }
    if (terms.empty()) {
        const ConfigEntry* e = cfg.find("alpha");
        if (!e) throw ConfigError("operator needs 'alpha' or 'term' lines");
        const MultiIndex a = take_alpha(e->value, e->line);
        k = a.order();
        line = e->line;
        terms.push_back({a, 1.0});
    }
    if (k < 1) throw ConfigError("operator order must be at least 1", line);
    try {
        return DriftOperator::make(n, k, terms);
    } catch (const InvalidArgument& err) {
        throw ConfigError(std::string("invalid operator: ") + err.what(), line);
    }
}

SourceFunction source_from(const ConfigText& cfg, int n) {
    const std::string kind = cfg.get_string("source.kind", "ball");
    const bool normalize = parse_bool(cfg, "source.normalize", false);
    try {
        if (kind == "ball") {
            Point c(n);
            if (cfg.has("source.center")) {
                const ConfigEntry* e = cfg.find("source.center");
                c = point_from(parse_number_list(e->value, e->line), n, "source.center", e->line);
            }
            return SourceFunction::indicator_ball(c, cfg.get_double("source.radius", 1.0), normalize);
        }
        if (kind == "masses") {
            std::vector<std::pair<Point, double>> masses;
            for (const ConfigEntry* e : cfg.all("source.mass")) {
                const auto colon = e->value.find(':');
                if (colon == std::string::npos) throw ConfigError("source.mass must read 'weight : point'", e->line);
                const double w = parse_number(e->value.substr(0, colon), e->line);
                masses.push_back({point_from(parse_number_list(e->value.substr(colon + 1), e->line), n, "source.mass",
                                             e->line),
                                  w});
            }
            return SourceFunction::point_masses(masses, normalize);
        }
    } catch (const InvalidArgument& err) {
        const ConfigEntry* e = cfg.find("source.kind");
        throw ConfigError(std::string("invalid source: ") + err.what(), e ? e->line : 0);
    }
    throw ConfigError("unknown source.kind '" + kind + "'", cfg.find("source.kind")->line);
}

std::string header(const std::string& cmd, const std::string& hashed, std::uint64_t seed, const std::string& settings) {
    std::string h = "# driftlab " + cmd + " config_hash=" + hex64(fnv1a64(hashed)) + " seed=" + std::to_string(seed) + "\n";
    std::istringstream in(settings);
    std::string line;
    while (std::getline(in, line)) h += "# " + line + "\n";
    return h;
}

std::string settings_text(const QuadConfig& q, const OpConfig& op, int grid) {
    std::ostringstream os;
    os << "quad.rel_tol = " << num(q.rel_tol) << "\n"
       << "quad.abs_tol = " << num(q.abs_tol) << "\n"
       << "quad.max_depth = " << q.max_depth << "\n"
       << "quad.max_panels = " << q.max_panels << "\n"
       << "op.outer_rel_tol = " << num(op.outer.rel_tol) << "\n"
       << "op.inner_rel_tol = " << num(op.inner.rel_tol) << "\n"
       << "op.points_per_decade = " << op.points_per_decade << "\n"
       << "op.t_min = " << num(op.t_min) << "\n"
       << "op.t_max = " << num(op.t_max) << "\n"
       << "b_nu.a_switch = " << num(BnuOptions{}.a_switch) << "\n";
    if (grid > 0) os << "grid = " << grid << "\n";
    return os.str();
}

RunReport finish(const std::string& cmd, const std::string& body, const RunOptions& opt) {
    RunReport rep;
    if (opt.out_dir.empty()) {
        rep.text = body;
        return rep;
    }
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    const std::string path = (std::filesystem::path(opt.out_dir) / (cmd + ".csv")).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << body;
    rep.files.push_back(path);
    rep.text = "wrote " + path + "\n";
    return rep;
}

std::vector<std::string> value_cells(const LogValue& v, double err) {
    return {num(v.value()), v.sign == 0 ? "-inf" : num(v.log10_abs()), std::to_string(v.sign), num(err)};
}

double est_error(const Estimate& e) { return std::isinf(e.log_error) && e.log_error < 0 ? 0.0 : std::exp(e.log_error); }

// Operator applied to a source; shared by apply and levelset.
using PointOp = std::function<Estimate(const Point&)>;

PointOp point_operator(const ConfigText& cfg, int n, const OpConfig& oc, std::string& label, std::vector<double>* times) {
    const std::string op = cfg.get_string("operator");
    const int line = cfg.find("operator")->line;
    const SourceFunction f = source_from(cfg, n);
    if (f.dim() != n) throw ConfigError("source dimension differs from n", line);
    label = op;
    if (op == "heat") {
        if (!times) throw ConfigError("operator 'heat' needs a single time here; use 't'", line);
        *times = cfg.get_doubles("t");
        return nullptr;
    }
    if (op == "riesz" || op == "HD" || op == "GD") {
        const DriftOperator D = operator_from(cfg, n);
        label = op + " " + D.describe();
        if (op == "riesz") return [=](const Point& x) { return riesz_apply(D, f, x, oc); };
        const SemigroupKind kind = op == "HD" ? SemigroupKind::heat : SemigroupKind::poisson;
        return [=](const Point& x) { return vertical_sq(kind, D, f, x, oc); };
    }
    if (op == "hk" || op == "gk" || op == "Hk" || op == "Gk") {
        const int k = int_in(cfg, "k", op[0] == 'H' || op[0] == 'G' ? 0 : 1, 12);
        const SemigroupKind kind = (op == "hk" || op == "Hk") ? SemigroupKind::heat : SemigroupKind::poisson;
        label = op + " k=" + std::to_string(k);
        if (op[0] == 'h' || op[0] == 'g') return [=](const Point& x) { return horizontal_sq(kind, k, f, x, oc); };
        return [=](const Point& x) { return horizontal_max(kind, k, f, x, oc); };
    }
    if (op == "v_kappa") {
        const double kappa = cfg.get_double("kappa");
        label = "v_kappa kappa=" + num(kappa);
        return [=](const Point& x) { return v_kappa_apply(kappa, f, x, oc); };
    }
    if (op == "t_op") return [=](const Point& x) { return t_op_apply(f, x, oc); };
    throw ConfigError("unknown operator '" + op + "'", line);
}

const std::set<std::string> kCommonKeys = {"n", "seed", "quad.", "op."};

std::set<std::string> with_common(std::set<std::string> keys) {
    keys.insert(kCommonKeys.begin(), kCommonKeys.end());
    return keys;
}

}  // namespace

std::string run_defaults_text() { return settings_text(QuadConfig{}, OpConfig::defaults(), LevelSetOptions{}.grid); }

RunReport run_eval(const ConfigText& cfg, const RunOptions& opt) {
    cfg.check_known(with_common({"kernel", "k", "alpha", "term", "t", "x", "y", "kappa", "nu", "a", "path"}));
    const std::uint64_t seed = seed_of(cfg, opt);
    const QuadConfig q = quad_from(cfg, seed);
    const std::string kernel = cfg.get_string("kernel");
    const int kline = cfg.find("kernel")->line;
    std::string body = header("eval", cfg.source(), seed, settings_text(q, OpConfig::defaults(), 0));

    if (kernel == "b_nu") {
        body += csv_line({"kernel", "nu", "a", "value", "log10_abs", "sign", "error_estimate"});
        for (double nu : cfg.get_doubles("nu"))
            for (double a : cfg.get_doubles("a")) {
                if (!(a > 0) || !std::isfinite(nu)) throw ConfigError("b_nu needs a > 0 and finite nu", kline);
                const QuadResult r = b_nu_scaled(nu, a, q);
                const LogValue v = LogValue::scaled(r.value, a);
                auto cells = std::vector<std::string>{"b_nu", num(nu), num(a)};
                const auto vc = value_cells(v, r.error_estimate * std::exp(-a));
                cells.insert(cells.end(), vc.begin(), vc.end());
                body += csv_line(cells);
            }
        return finish("eval", body, opt);
    }

    const int n = int_in(cfg, "n", 1, kMaxDim);
    const auto xs = points_for(cfg, "x", n), ys = points_for(cfg, "y", n);
    if (xs.empty() || ys.empty()) throw ConfigError("eval needs at least one 'x' and one 'y' line", kline);
    const bool timed = kernel == "heat" || kernel == "heat_dt" || kernel == "heat_dx" || kernel == "poisson" ||
                       kernel == "poisson_dx" || kernel == "poisson_dt";
    const std::vector<double> ts = timed ? cfg.get_doubles("t") : std::vector<double>{0.0};
    for (double t : ts)
        if (timed && !(t > 0 && std::isfinite(t))) throw ConfigError("times must be positive", cfg.find("t")->line);
    const RieszPath path = cfg.get_string("path", "quadrature") == "expansion" ? RieszPath::expansion : RieszPath::quadrature;

    // Evaluator returning (value, error estimate) and the order label.
    std::function<std::pair<LogValue, double>(double, const Point&, const Point&)> ev;
    std::string order;
    auto shift = [](const Point& x, const Point& y) { return x.x1() + y.x1() + distance(x, y); };
    auto from_est = [](const Estimate& e) { return std::make_pair(e.value, est_error(e)); };
    if (kernel == "heat") {
        ev = [](double t, const Point& x, const Point& y) { return std::make_pair(heat_kernel_log(t, x, y), 0.0); };
    } else if (kernel == "heat_dt" || kernel == "poisson_dt") {
        const int k = int_in(cfg, "k", kernel == "heat_dt" ? 0 : 0, 12);
        order = std::to_string(k);
        if (kernel == "heat_dt")
            ev = [k](double t, const Point& x, const Point& y) { return std::make_pair(heat_dt_log(k, t, x, y), 0.0); };
        else
            ev = [k, q, from_est](double t, const Point& x, const Point& y) { return from_est(poisson_dt_est(k, t, x, y, q)); };
    } else if (kernel == "heat_dx" || kernel == "poisson_dx" || kernel == "riesz") {
        const DriftOperator D = operator_from(cfg, n);
        order = D.describe();
        if (kernel == "heat_dx")
            ev = [D, shift](double t, const Point& x, const Point& y) {
                return std::make_pair(LogValue::scaled(heat_D_nat(D, t, x, y), shift(x, y)), 0.0);
            };
        else if (kernel == "poisson_dx")
            ev = [D, q, from_est](double t, const Point& x, const Point& y) { return from_est(poisson_dx_est(D, t, x, y, q)); };
        else
            ev = [D, q, path, from_est](double, const Point& x, const Point& y) {
                return from_est(riesz_kernel_est(D, x, y, path, q));
            };
    } else if (kernel == "poisson") {
        ev = [q, from_est](double t, const Point& x, const Point& y) { return from_est(poisson_kernel_est(t, x, y, q)); };
    } else if (kernel == "frac") {
        const int k = int_in(cfg, "k", 1, 12);
        order = std::to_string(k);
        ev = [k, q, from_est](double, const Point& x, const Point& y) { return from_est(frac_power_kernel_est(k, x, y, q)); };
    } else if (kernel == "v_kappa") {
        const double kappa = cfg.get_double("kappa");
        order = num(kappa);
        ev = [kappa](double, const Point& x, const Point& y) { return std::make_pair(v_kappa_log(kappa, x, y), 0.0); };
    } else {
        throw ConfigError("unknown kernel '" + kernel + "'", kline);
    }

    body += csv_line({"kernel", "order", "t", "x", "y", "value", "log10_abs", "sign", "error_estimate"});
    for (double t : ts)
        for (const Point& x : xs)
            for (const Point& y : ys) {
                const auto [v, err] = ev(t, x, y);
                auto cells = std::vector<std::string>{kernel, order, timed ? num(t) : "", join_point(x), join_point(y)};
                const auto vc = value_cells(v, err);
                cells.insert(cells.end(), vc.begin(), vc.end());
                body += csv_line(cells);
            }
    return finish("eval", body, opt);
}

RunReport run_apply(const ConfigText& cfg, const RunOptions& opt) {
    cfg.check_known(with_common({"operator", "source.", "alpha", "term", "k", "kappa", "t", "x", "points"}));
    const std::uint64_t seed = seed_of(cfg, opt);
    const int n = int_in(cfg, "n", 1, kMaxDim);
    const OpConfig oc = op_from(cfg, seed);
    std::vector<Point> xs = cfg.has("points") ? points_from_file(cfg, n) : points_for(cfg, "x", n);
    if (xs.empty()) throw ConfigError("apply needs 'points' or at least one 'x' line");
    std::string label;
    std::vector<double> times;
    const PointOp F = point_operator(cfg, n, oc, label, &times);
    std::string body = header("apply", cfg.source(), seed, settings_text(QuadConfig{}, oc, 0));
    body += csv_line({"operator", "t", "x", "value", "log10_abs", "sign", "error_estimate"});
    if (!F) {
        const SourceFunction f = source_from(cfg, n);
        struct Job {
            double t;
            Point x;
        };
        std::vector<Job> jobs;
        for (double t : times) {
            if (!(t > 0)) throw ConfigError("times must be positive", cfg.find("t")->line);
            for (const Point& x : xs) jobs.push_back({t, x});
        }
        const auto vals = parallel_map(jobs, [&](const Job& j) { return heat_semigroup_apply(j.t, f, j.x, oc); }, opt.threads);
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            auto cells = std::vector<std::string>{label, num(jobs[i].t), join_point(jobs[i].x)};
            const auto vc = value_cells(vals[i].value, est_error(vals[i]));
            cells.insert(cells.end(), vc.begin(), vc.end());
            body += csv_line(cells);
        }
        return finish("apply", body, opt);
    }
    const auto vals = parallel_map(xs, F, opt.threads);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        auto cells = std::vector<std::string>{label, "", join_point(xs[i])};
        const auto vc = value_cells(vals[i].value, est_error(vals[i]));
        cells.insert(cells.end(), vc.begin(), vc.end());
        body += csv_line(cells);
    }
    return finish("apply", body, opt);
}

RunReport run_levelset(const ConfigText& cfg, const RunOptions& opt) {
    cfg.check_known(
        with_common({"operator", "source.", "alpha", "term", "k", "kappa", "region.", "lambda", "log_lambda", "grid"}));
    const std::uint64_t seed = seed_of(cfg, opt);
    const int n = int_in(cfg, "n", 1, kMaxDim);
    const OpConfig oc = op_from(cfg, seed);
    const Region R = Region::from_config(cfg, "region.");
    if (R.dim() != n) throw ConfigError("region dimension differs from n", cfg.find("region.n")->line);
    std::string label;
    const PointOp F = point_operator(cfg, n, oc, label, nullptr);
    std::vector<double> log_lambdas;
    if (cfg.has("log_lambda")) {
        log_lambdas = cfg.get_doubles("log_lambda");
    } else {
        for (double l : cfg.get_doubles("lambda")) {
            if (!(l > 0)) throw ConfigError("lambda values must be positive", cfg.find("lambda")->line);
            log_lambdas.push_back(std::log(l));
        }
    }
    LevelSetOptions lo;
    lo.grid = static_cast<int>(cfg.get_int("grid", lo.grid));
    if (lo.grid < 1 || lo.grid > 4096) throw ConfigError("grid must be in [1, 4096]", cfg.find("grid")->line);
    lo.threads = opt.threads;
    const auto logs = level_set_log_measures([&](const Point& x) { return F(x).value; }, R, log_lambdas, lo);
    std::string body = header("levelset", cfg.source(), seed, settings_text(QuadConfig{}, oc, lo.grid));
    body += "# operator = " + label + "\n# region = " + region_kind_name(R.kind()) + "\n";
    body += csv_line({"lambda", "log_lambda", "mu", "log_mu", "lambda_mu"});
    for (std::size_t i = 0; i < log_lambdas.size(); ++i)
        body += csv_line({num(std::exp(log_lambdas[i])), num(log_lambdas[i]), num(std::exp(logs[i])), num(logs[i]),
                          num(std::exp(log_lambdas[i] + logs[i]))});
    return finish("levelset", body, opt);
}

RunReport run_verify(const std::string& suite, const ConfigText& params, const RunOptions& opt) {
    if (suite.empty()) throw ConfigError("no suite selected");
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == suite;
    if (!known) throw ConfigError("unknown suite '" + suite + "'");
    VerifyOptions vo;
    vo.threads = opt.threads;
    vo.seed = opt.seed ? *opt.seed : params.get_u64("seed", 1);
    std::string stripped;
    for (const auto& e : params.entries())
        if (e.key != "seed") stripped += e.key + " = " + e.value + "\n";
    const auto results = run_suite(suite, stripped, vo);
    const std::string hashed = "verify " + suite + "\n" + params.source();
    const std::string head = header("verify", hashed, vo.seed, run_defaults_text());
    RunReport rep;
    for (const auto& r : results) rep.passed = rep.passed && r.pass;
    std::string md_header = "suite selection: `" + suite + "`, config_hash=" + hex64(fnv1a64(hashed)) +
                            ", seed=" + std::to_string(vo.seed);
    rep.text = markdown_report(results, md_header);
    if (!opt.out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(opt.out_dir, ec);
        for (const auto& r : results) {
            const std::string path = (std::filesystem::path(opt.out_dir) / (r.name + ".csv")).string();
            std::ofstream out(path, std::ios::binary);
            if (!out) throw IoError("cannot write " + path);
            out << head << "# " << (r.pass ? "PASS" : "FAIL") << ": " << r.summary << "\n" << r.csv();
            rep.files.push_back(path);
        }
        const std::string path = (std::filesystem::path(opt.out_dir) / "report.md").string();
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path);
        out << rep.text;
        rep.files.push_back(path);
    }
    return rep;
}

RunReport run_command(const std::string& command, const std::string& config_text, const std::string& suite,
                      const RunOptions& opt) {
    const ConfigText cfg = ConfigText::parse(config_text);
    if (command == "eval") return run_eval(cfg, opt);
    if (command == "apply") return run_apply(cfg, opt);
    if (command == "levelset") return run_levelset(cfg, opt);
    if (command == "verify") return run_verify(suite, cfg, opt);
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace driftlab
