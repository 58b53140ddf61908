#pragma once

#include <string>
#include <utility>
#include <vector>

#include "driftlab/types.hpp"

namespace driftlab {

// D = sum_{|alpha| = k} a_alpha d^alpha with constant coefficients.
class DriftOperator {
public:
    using Term = std::pair<MultiIndex, double>;

    // Drops zero coefficients, merges repeated multi-indices and derives q.
    static DriftOperator make(int n, int k, const std::vector<Term>& coeffs);
    // d_1^k
    static DriftOperator pure_drift(int n, int k);
    // A single monomial d^alpha.
    static DriftOperator monomial(const MultiIndex& alpha, double coeff = 1.0);

    int dim() const { return n_; }
    int order() const { return k_; }
    // Largest alpha_1 over the nonzero terms.
    int drift_order() const { return q_; }
    const std::vector<Term>& terms() const { return terms_; }

    // D composed with d_j, an operator of order k + 1.
    DriftOperator then_partial(int j) const;
    DriftOperator scaled(double s) const;

    // "a_alpha * d^(e1,...,en) + ..." for reports.
    std::string describe() const;

private:
    int n_ = 1, k_ = 1, q_ = 0;
    std::vector<Term> terms_;
};

// Ball in R^{n-1} (the orthogonal variables). Empty for n = 1.
struct OrthoBall {
    std::vector<double> center;
    double radius = 0;
    int sign = 0;          // sign of the normalized kernel on the ball
    double peak = 0;       // max |rho| over the scan grid
    double min_on_ball = 0;
};

struct ScanOptions {
    int grid = 41;
    double half_width = 3;  // grid covers [-half_width, half_width]^{n-1}
    double zero_tol = 1e-10;
    int threads = 1;
};

// rho(z') = (-1)^k R_D(x, 0) e^{x_1 + |x|} x_1^{-(q-n-1)/2} at x = (eta, z' sqrt(eta)).
double sharpness_ratio(const DriftOperator& D, double eta, const std::vector<double>& zp);

// Finds a ball where |rho| stays above half its grid maximum with constant sign.
OrthoBall sharpness_ball_scan(const DriftOperator& D, double eta, const ScanOptions& opt = {});

}  // namespace driftlab
