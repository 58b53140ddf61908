#ifndef DRIFTLAB_H
#define DRIFTLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DL_API __declspec(dllexport)
#else
#define DL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dl_status {
    DL_OK = 0,
    DL_ERR_INVALID_ARGUMENT = 1,
    DL_ERR_DOMAIN = 2,
    DL_ERR_QUADRATURE = 3,
    DL_ERR_CONFIG = 4,
    DL_ERR_IO = 5,
    DL_ERR_ALL_NEAR_ZERO = 6,
    DL_ERR_INTERNAL = 7
} dl_status;

/* Message for the last failing call on this thread ("" if none). */
DL_API const char* dl_last_error(void);
DL_API const char* dl_version(void);

/* value = sign * exp(log_abs); value underflows to 0 where log_abs < -745. */
typedef struct dl_value {
    double value;
    double log_abs;
    int sign;
    double rel_error;
} dl_value;

typedef struct dl_operator dl_operator;
typedef struct dl_region dl_region;
typedef struct dl_source dl_source;
typedef struct dl_report dl_report;

/* D = sum_i coeffs[i] d^{alphas[i*n .. i*n+n-1]}; every term has order k. */
DL_API dl_status dl_operator_create(int n, int k, size_t terms, const int* alphas, const double* coeffs,
                                    dl_operator** out);
DL_API void dl_operator_destroy(dl_operator* op);
DL_API int dl_operator_drift_order(const dl_operator* op);

/* Kernels. Points are arrays of n doubles. */
DL_API dl_status dl_heat_kernel(int n, double t, const double* x, const double* y, dl_value* out);
DL_API dl_status dl_heat_dt(int n, int k, double t, const double* x, const double* y, dl_value* out);
DL_API dl_status dl_heat_dx(const dl_operator* op, double t, const double* x, const double* y, dl_value* out);
DL_API dl_status dl_frac_power_kernel(int n, int k, const double* x, const double* y, dl_value* out);
/* path: 0 quadrature, 1 expansion */
DL_API dl_status dl_riesz_kernel(const dl_operator* op, const double* x, const double* y, int path, dl_value* out);
DL_API dl_status dl_poisson_kernel(int n, double t, const double* x, const double* y, dl_value* out);
DL_API dl_status dl_b_nu(double nu, double a, dl_value* out);
DL_API dl_status dl_mu_ball(int n, const double* x, double r, dl_value* out);

/* Regions from key = value text (kind, n, eta, ball.center, ...). */
DL_API dl_status dl_region_from_text(const char* text, dl_region** out);
DL_API void dl_region_destroy(dl_region* r);
/* Writes at most cap bytes including the terminating NUL; *needed gets the full length + 1. */
DL_API dl_status dl_region_to_text(const dl_region* r, char* buf, size_t cap, size_t* needed);
DL_API dl_status dl_region_log_measure(const dl_region* r, double* out);
/* m points, n coordinates each, written row-major into pts (m * n doubles). scheme: 0 grid, 1 quasi-random. */
DL_API dl_status dl_region_sample(const dl_region* r, int m, int scheme, uint64_t seed, double* pts);

/* Sources: indicator of B(center, radius), or point masses (count points, n coordinates each). */
DL_API dl_status dl_source_ball(int n, const double* center, double radius, int normalize, dl_source** out);
DL_API dl_status dl_source_masses(int n, size_t count, const double* points, const double* weights, int normalize,
                                  dl_source** out);
DL_API void dl_source_destroy(dl_source* s);

typedef enum dl_apply_kind {
    DL_APPLY_RIESZ = 0,
    DL_APPLY_HEAT = 1,   /* param = t */
    DL_APPLY_HD = 2,
    DL_APPLY_GD = 3,
    DL_APPLY_HK_SQ = 4,  /* h_k, param = k */
    DL_APPLY_GK_SQ = 5,  /* g_k, param = k */
    DL_APPLY_HK_MAX = 6, /* H_k, param = k */
    DL_APPLY_GK_MAX = 7, /* G_k, param = k */
    DL_APPLY_V_KAPPA = 8, /* param = kappa */
    DL_APPLY_T = 9
} dl_apply_kind;

/* op is required for RIESZ, HD and GD and ignored otherwise. */
DL_API dl_status dl_apply(dl_apply_kind kind, const dl_operator* op, double param, const dl_source* f,
                          const double* x, dl_value* out);

/* sup over lambda of lambda mu{T delta_y0 > lambda} in closed form. */
DL_API dl_status dl_t_op_weak_sup(int n, const double* y0, double* sup);

/* Runs a command (eval, apply, levelset, verify) on key = value config text.
   out_dir may be NULL (CSV returned in the report text). threads <= 0 means 1. */
DL_API dl_status dl_run(const char* command, const char* config_text, const char* suite, const char* out_dir,
                        int threads, uint64_t seed, int has_seed, dl_report** out);
DL_API int dl_report_passed(const dl_report* r);
DL_API const char* dl_report_text(const dl_report* r);
DL_API void dl_report_destroy(dl_report* r);

#ifdef __cplusplus
}
#endif

#endif
