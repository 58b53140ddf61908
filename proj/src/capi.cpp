#include "driftlab/driftlab.h"

#include <cstring>
#include <new>
#include <string>

#include "driftlab/kernels.hpp"
#include "driftlab/lps.hpp"
#include "driftlab/runner.hpp"
#include "driftlab/space.hpp"

using namespace driftlab;

struct dl_operator {
    DriftOperator op;
};
struct dl_region {
    Region region;
};
struct dl_source {
    SourceFunction source;
};
struct dl_report {
    RunReport report;
};

namespace {

thread_local std::string g_last_error;

template <class Fn>
dl_status guarded(Fn fn) {
    g_last_error.clear();
    try {
        fn();
        return DL_OK;
    } catch (const ConfigError& e) {
        g_last_error = e.what();
        return DL_ERR_CONFIG;
    } catch (const InvalidArgument& e) {
        g_last_error = e.what();
        return DL_ERR_INVALID_ARGUMENT;
    } catch (const DomainError& e) {
        g_last_error = e.what();
        return DL_ERR_DOMAIN;
    } catch (const QuadratureError& e) {
        g_last_error = e.what();
        return DL_ERR_QUADRATURE;
    } catch (const AllNearZero& e) {
        g_last_error = e.what();
        return DL_ERR_ALL_NEAR_ZERO;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return DL_ERR_IO;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return DL_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DL_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return DL_ERR_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw InvalidArgument(what);
}

Point point(int n, const double* p) {
    require(n >= 1 && n <= kMaxDim, "dimension must be in [1, 8]");
    require(p != nullptr, "null point");
    Point x(n);
    for (int i = 0; i < n; ++i) x[i] = p[i];
    require(x.finite(), "point has non-finite coordinates");
    return x;
}

void put(dl_value* out, const LogValue& v, double rel_error) {
    out->value = v.value();
    out->log_abs = v.log_abs;
    out->sign = v.sign;
    out->rel_error = rel_error;
}

void put(dl_value* out, const Estimate& e) { put(out, e.value, e.rel_error()); }

}  // namespace

extern "C" {

const char* dl_last_error(void) { return g_last_error.c_str(); }

const char* dl_version(void) { return "0.1.0"; }

dl_status dl_operator_create(int n, int k, size_t terms, const int* alphas, const double* coeffs, dl_operator** out) {
    return guarded([&] {
        require(out && alphas && coeffs, "null argument");
        require(n >= 1 && n <= kMaxDim, "dimension must be in [1, 8]");
        require(terms > 0, "operator needs at least one term");
        std::vector<DriftOperator::Term> t;
        for (size_t i = 0; i < terms; ++i) {
            std::vector<int> e(alphas + i * n, alphas + i * n + n);
            t.push_back({MultiIndex::from(e), coeffs[i]});
        }
        *out = new dl_operator{DriftOperator::make(n, k, t)};
    });
}

void dl_operator_destroy(dl_operator* op) { delete op; }

int dl_operator_drift_order(const dl_operator* op) { return op ? op->op.drift_order() : -1; }

dl_status dl_heat_kernel(int n, double t, const double* x, const double* y, dl_value* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        put(out, heat_kernel_log(t, point(n, x), point(n, y)), 0);
    });
}

dl_status dl_heat_dt(int n, int k, double t, const double* x, const double* y, dl_value* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        put(out, heat_dt_log(k, t, point(n, x), point(n, y)), 0);
    });
}

dl_status dl_heat_dx(const dl_operator* op, double t, const double* x, const double* y, dl_value* out) {
    return guarded([&] {
        require(op && out, "null argument");
        const int n = op->op.dim();
        const Point px = point(n, x), py = point(n, y);
        put(out, LogValue::scaled(heat_D_nat(op->op, t, px, py), px.x1() + py.x1() + distance(px, py)), 0);
    });
}

dl_status dl_frac_power_kernel(int n, int k, const double* x, const double* y, dl_value* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        put(out, frac_power_kernel_est(k, point(n, x), point(n, y)));
    });
}

dl_status dl_riesz_kernel(const dl_operator* op, const double* x, const double* y, int path, dl_value* out) {
    return guarded([&] {
        require(op && out, "null argument");
        require(path == 0 || path == 1, "path must be 0 (quadrature) or 1 (expansion)");
        const int n = op->op.dim();
        put(out, riesz_kernel_est(op->op, point(n, x), point(n, y), path ? RieszPath::expansion : RieszPath::quadrature));
    });
}

dl_status dl_poisson_kernel(int n, double t, const double* x, const double* y, dl_value* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        put(out, poisson_kernel_est(t, point(n, x), point(n, y)));
    });
}

dl_status dl_b_nu(double nu, double a, dl_value* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        const QuadResult r = b_nu_scaled(nu, a);
        put(out, LogValue::scaled(r.value, a), r.value != 0 ? r.error_estimate / std::fabs(r.value) : 0);
    });
}

dl_status dl_mu_ball(int n, const double* x, double r, dl_value* out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        put(out, LogValue{log_mu_ball(point(n, x), r), 1}, 0);
    });
}

dl_status dl_region_from_text(const char* text, dl_region** out) {
    return guarded([&] {
        require(text && out, "null argument");
        *out = new dl_region{Region::from_text(text)};
    });
}

void dl_region_destroy(dl_region* r) { delete r; }

dl_status dl_region_to_text(const dl_region* r, char* buf, size_t cap, size_t* needed) {
    return guarded([&] {
        require(r != nullptr, "null region");
        const std::string s = r->region.to_text();
        if (needed) *needed = s.size() + 1;
        if (buf && cap > 0) {
            const size_t m = std::min(cap - 1, s.size());
            std::memcpy(buf, s.data(), m);
            buf[m] = '\0';
        }
    });
}

dl_status dl_region_log_measure(const dl_region* r, double* out) {
    return guarded([&] {
        require(r && out, "null argument");
        *out = r->region.log_measure();
    });
}

dl_status dl_region_sample(const dl_region* r, int m, int scheme, uint64_t seed, double* pts) {
    return guarded([&] {
        require(r && pts, "null argument");
        require(scheme == 0 || scheme == 1, "scheme must be 0 (grid) or 1 (quasi-random)");
        const auto v = sample_region(r->region, m, scheme ? SampleScheme::quasi_random : SampleScheme::grid, seed);
        const int n = r->region.dim();
        for (size_t i = 0; i < v.size(); ++i)
            for (int j = 0; j < n; ++j) pts[i * n + j] = v[i][j];
    });
}

dl_status dl_source_ball(int n, const double* center, double radius, int normalize, dl_source** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        *out = new dl_source{SourceFunction::indicator_ball(point(n, center), radius, normalize != 0)};
    });
}

dl_status dl_source_masses(int n, size_t count, const double* points, const double* weights, int normalize,
                           dl_source** out) {
    return guarded([&] {
        require(out && points && weights, "null argument");
        std::vector<std::pair<Point, double>> m;
        for (size_t i = 0; i < count; ++i) m.push_back({point(n, points + i * n), weights[i]});
        *out = new dl_source{SourceFunction::point_masses(m, normalize != 0)};
    });
}

void dl_source_destroy(dl_source* s) { delete s; }

dl_status dl_apply(dl_apply_kind kind, const dl_operator* op, double param, const dl_source* f, const double* x,
                   dl_value* out) {
    return guarded([&] {
        require(f && out, "null argument");
        const Point px = point(f->source.dim(), x);
        auto order = [&] {
            require(param >= 0 && param <= 64 && param == std::floor(param), "order must be a small nonnegative integer");
            return static_cast<int>(param);
        };
        auto need_op = [&]() -> const DriftOperator& {
            require(op != nullptr, "this operator kind needs a differential operator");
            return op->op;
        };
        switch (kind) {
            case DL_APPLY_RIESZ: put(out, riesz_apply(need_op(), f->source, px)); break;
            case DL_APPLY_HEAT: put(out, heat_semigroup_apply(param, f->source, px)); break;
            case DL_APPLY_HD: put(out, vertical_sq(SemigroupKind::heat, need_op(), f->source, px)); break;
            case DL_APPLY_GD: put(out, vertical_sq(SemigroupKind::poisson, need_op(), f->source, px)); break;
            case DL_APPLY_HK_SQ: put(out, horizontal_sq(SemigroupKind::heat, order(), f->source, px)); break;
            case DL_APPLY_GK_SQ: put(out, horizontal_sq(SemigroupKind::poisson, order(), f->source, px)); break;
            case DL_APPLY_HK_MAX: put(out, horizontal_max(SemigroupKind::heat, order(), f->source, px)); break;
            case DL_APPLY_GK_MAX: put(out, horizontal_max(SemigroupKind::poisson, order(), f->source, px)); break;
            case DL_APPLY_V_KAPPA: put(out, v_kappa_apply(param, f->source, px)); break;
            case DL_APPLY_T: put(out, t_op_apply(f->source, px)); break;
            default: throw InvalidArgument("unknown apply kind");
        }
    });
}

dl_status dl_t_op_weak_sup(int n, const double* y0, double* sup) {
    return guarded([&] {
        require(sup != nullptr, "null output");
        *sup = t_op_point_weak_sup(point(n, y0)).sup;
    });
}

dl_status dl_run(const char* command, const char* config_text, const char* suite, const char* out_dir, int threads,
                 uint64_t seed, int has_seed, dl_report** out) {
    return guarded([&] {
        require(command && out, "null argument");
        RunOptions opt;
        opt.out_dir = out_dir ? out_dir : "";
        opt.threads = threads > 0 ? threads : 1;
        if (has_seed) opt.seed = seed;
        RunReport rep = run_command(command, config_text ? config_text : "", suite ? suite : "", opt);
        *out = new dl_report{std::move(rep)};
    });
}

int dl_report_passed(const dl_report* r) { return r && r->report.passed ? 1 : 0; }

const char* dl_report_text(const dl_report* r) { return r ? r->report.text.c_str() : ""; }

void dl_report_destroy(dl_report* r) { delete r; }

}  // extern "C"
