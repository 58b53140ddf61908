#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "driftlab/diffop.hpp"
#include "driftlab/lps.hpp"

namespace driftlab {

// Generic suite outcome: one CSV table plus a one-line summary.
struct SuiteResult {
    std::string name;
    std::string claim;  // the mathematical statement being checked
    bool pass = false;
    std::string summary;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    double seconds = 0;

    std::string csv() const;
};

struct GrowthFit {
    double exponent_estimate = 0;
    double stderr_ = 0;
    std::vector<std::pair<double, double>> points;  // (log ln(1/lambda), log(lambda mu))
    double target_exponent = 0;
    double tolerance = 0.25;
    bool pass = false;
};

// Least-squares slope of y on x with its standard error. Needs >= 4 points.
GrowthFit fit_growth(const std::vector<std::pair<double, double>>& pts, double target, double tolerance);

struct RatioSuiteReport {
    std::string name;
    long samples = 0;
    double min_ratio = 0, max_ratio = 0, median_ratio = 0;
    double fitted_constant = 0;  // max ratio
    double cap = 0;
    // Log-log slope of the ratio at the far end of the sampled distances
    // (largest for global suites, smallest for local ones), worst direction.
    double end_slope = 0;
    bool pass = false;
};

struct VerifyOptions {
    int threads = 1;
    std::uint64_t seed = 1;
};

// Special-function and kernel identities.
SuiteResult conservation_suite(const std::vector<int>& dims, const std::vector<double>& times, const VerifyOptions& = {});
SuiteResult bessel_suite(const VerifyOptions& = {});
SuiteResult derivative_suite(int configs, const VerifyOptions& = {});
SuiteResult riesz_closed_form_suite(const VerifyOptions& = {});

enum class RatioSuite { riesz_local, riesz_global, lp_local, lp_global, hk_kernel, Hk_kernel, gk_kernel };
const char* ratio_suite_name(RatioSuite s);
bool parse_ratio_suite(const std::string& s, RatioSuite& out);
// Cap on the max ratio for each suite.
double ratio_suite_cap(RatioSuite s);

// Operator suites use D = d^alpha for one multi-index; horizontal suites use the order k.
RatioSuiteReport estimate_ratio_suite(RatioSuite s, const DriftOperator* D, int n, int k, SuiteResult* table,
                                      const VerifyOptions& = {});
// Every monomial of each listed order in dimension n (horizontal suites use the order only).
SuiteResult estimate_ratio_battery(RatioSuite s, int n, const std::vector<int>& orders, const VerifyOptions& = {});

// Smallest C0 with a b^{kappa/2-1} <= C0 [a (1 + ln+ a)^{kappa/2-1} + e^{b/8}]
// on (0, 1e6)^2, found by grid search plus golden-section refinement, then
// checked on `trials` independent random pairs.
struct OrliczReport {
    double kappa = 0;
    double c0 = 0;
    double max_sample_ratio = 0;
    long trials = 0;
    long violations = 0;
    bool pass = false;
};
OrliczReport scalar_orlicz_inequality_test(double kappa, long trials, std::uint64_t seed = 1);
SuiteResult orlicz_suite(const std::vector<double>& kappas, long trials, const VerifyOptions& = {});

enum class SharpOp { riesz, HD, GD, hk, Hk };
const char* sharp_op_name(SharpOp op);
bool parse_sharp_op(const std::string& s, SharpOp& out);

struct SharpnessReport {
    std::vector<double> etas;
    std::vector<std::vector<double>> normalized;  // [eta][sample]
    int sign_failures = 0;
    double min_normalized = 0, max_normalized = 0;
    double drift = 0;  // worst ratio between last and first eta at matching samples (>= 1)
    bool pass = false;
};
// D = d_1^q d_2^{k-q} (d_1^k when n = 1). Operators act on f = indicator of
// B(0,1); regions are Omega_eta with the scan ball, Sigma_eta for hk and Hk.
DriftOperator sharp_operator(int n, int k, int q);
SharpnessReport sharpness_suite(SharpOp op, int n, int k, int q, const std::vector<double>& etas, int samples,
                                SuiteResult* table, const VerifyOptions& = {});

// (-1)^{[k/2]} t^k d_t^k p_t(x, y) e^{2 eta} eta^{-(k-n)/2} over x in Sigma_eta,
// |y| < 1 and t in the window eta/2 (1 - 2c1/sqrt(eta)) < t < eta/2 (1 - c1/sqrt(eta)).
struct LemmaReport {
    double min_normalized = 0;
    double max_normalized = 0;
    long samples = 0;
    bool pass = false;
};
LemmaReport sigma_lower_bound_check(int n, int k, double c1, const std::vector<double>& etas, SuiteResult* table);

// lambda(eta) = min of |op f| over region samples; slope of log(lambda mu)
// against log ln(1/lambda).
GrowthFit weak_type_growth(SharpOp op, int n, int k, int q, double target, double tolerance,
                           const std::vector<double>& etas, int samples, SuiteResult* table,
                           const VerifyOptions& = {});
// Exponent predicted for the Omega/Sigma family.
double weak_type_target(SharpOp op, int k, int q);

struct TopReport {
    std::vector<Point> sources;
    std::vector<double> sups;
    std::vector<double> grid_rel_diff;
    bool pass = false;
};
TopReport t_operator_weak_type(const std::vector<Point>& y0s, SuiteResult* table, const VerifyOptions& = {});

// Named suite dispatch used by the command line. Parameters come from
// key = value text (n, k, q, op, kappa, eta, samples, trials).
std::vector<std::string> suite_names();
std::vector<SuiteResult> run_suite(const std::string& name, const std::string& params, const VerifyOptions& = {});

// Markdown report for a list of suite results.
std::string markdown_report(const std::vector<SuiteResult>& results, const std::string& header);

}  // namespace driftlab
