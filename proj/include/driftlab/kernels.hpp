#pragma once

#include <vector>

#include "driftlab/diffop.hpp"
#include "driftlab/quadrature.hpp"
#include "driftlab/specfun.hpp"
#include "driftlab/types.hpp"

namespace driftlab {

// Functions suffixed _nat return the kernel times e^{x_1 + y_1 + |x - y|}.
// That factor is the whole exponential decay of every kernel below, so the
// natural-scale values stay O(poly) even where the kernel itself underflows.

// p_t(x, y), both displayed closed forms. form 1: e^{-t - |x-y|^2/4t};
// form 2: e^{-|x-y|} e^{-t (|x-y|/2t - 1)^2}. heat_kernel switches to form 2
// when form 1 underflows.
double heat_kernel_form(double t, const Point& x, const Point& y, int form);
double heat_kernel(double t, const Point& x, const Point& y);
LogValue heat_kernel_log(double t, const Point& x, const Point& y);
double heat_kernel_nat(double t, const Point& x, const Point& y);

// d_t^k p_t = q_k(|x-y|^2, t) p_t. Stored as sum_i u^i L_i(t).
class QkPoly {
public:
    static QkPoly build(int k, int n);
    int order() const { return k_; }
    int dim() const { return n_; }
    const std::vector<LaurentPoly>& by_u_power() const { return by_u_; }
    double operator()(double u, double t) const;
    // Coefficient of u^i t^e.
    double coefficient(int u_power, double t_power) const;

private:
    int k_ = 0, n_ = 1;
    std::vector<LaurentPoly> by_u_;
};

QkPoly qk_polynomial(int k, int n);
// Cached instance; safe to call from several threads.
const QkPoly& qk_cached(int k, int n);

double heat_dt(int k, double t, const Point& x, const Point& y);
LogValue heat_dt_log(int k, double t, const Point& x, const Point& y);
double heat_dt_nat(int k, double t, const Point& x, const Point& y);

// Factor P with d^alpha_x p_t = P p_t, from the Leibniz rule over e^{-x_1}
// and the Hermite form of the Gaussian derivatives.
double heat_dx_factor(const MultiIndex& alpha, double t, const Point& x, const Point& y);
double heat_dx(const MultiIndex& alpha, double t, const Point& x, const Point& y);
LogValue heat_dx_log(const MultiIndex& alpha, double t, const Point& x, const Point& y);
double heat_dx_nat(const MultiIndex& alpha, double t, const Point& x, const Point& y);
// D_x p_t for a full operator.
double heat_D_nat(const DriftOperator& D, double t, const Point& x, const Point& y);

// Kernel of (-Delta_v)^{-k/2}. Throws DomainError for x = y.
Estimate frac_power_kernel_est(int k, const Point& x, const Point& y, const QuadConfig& cfg = {});
double frac_power_kernel(int k, const Point& x, const Point& y);

enum class RieszPath { quadrature, expansion };

// R_D(x, y) by t-quadrature of t^{k/2} D_x p_t dt/t or by the closed
// Hermite / B_nu expansion. Throws DomainError for x = y.
QuadResult riesz_kernel_nat(const DriftOperator& D, const Point& x, const Point& y,
                            RieszPath path = RieszPath::quadrature, const QuadConfig& cfg = {});
Estimate riesz_kernel_est(const DriftOperator& D, const Point& x, const Point& y,
                          RieszPath path = RieszPath::quadrature, const QuadConfig& cfg = {});
double riesz_kernel(const DriftOperator& D, const Point& x, const Point& y,
                    RieszPath path = RieszPath::quadrature);
// grad_y R_D(x, y), natural scale, one entry per coordinate.
std::vector<QuadResult> riesz_grad_y_nat(const DriftOperator& D, const Point& x, const Point& y,
                                         const QuadConfig& cfg = {});

// Poisson kernel by subordination. time_order k gives d_t^k P_t; D (if
// given) is applied in x. Natural scale as above.
QuadResult poisson_nat(int time_order, const DriftOperator* D, double t, const Point& x, const Point& y,
                       const QuadConfig& cfg = {});
double poisson_kernel(double t, const Point& x, const Point& y);
Estimate poisson_kernel_est(double t, const Point& x, const Point& y, const QuadConfig& cfg = {});
double poisson_dx(const DriftOperator& D, double t, const Point& x, const Point& y);
Estimate poisson_dx_est(const DriftOperator& D, double t, const Point& x, const Point& y,
                        const QuadConfig& cfg = {});
Estimate poisson_dt_est(int k, double t, const Point& x, const Point& y, const QuadConfig& cfg = {});

// V_kappa(x, y) = e^{-2x_1} |x-y|^{(kappa-n-1)/2} e^{-|x'-y'|^2/(4|x-y|)} for x_1 - y_1 > 1, else 0.
double v_kappa_kernel(double kappa, const Point& x, const Point& y);
LogValue v_kappa_log(double kappa, const Point& x, const Point& y);

// L^2(dt/t) norms and sup over t, natural scale.
QuadResult heat_D_l2_nat(const DriftOperator& D, const Point& x, const Point& y, const QuadConfig& cfg = {});
// ||t^{k/2} d_{y_j} D_x p_t||_{L^2(dt/t)} combined over j (Euclidean norm).
QuadResult heat_D_grad_y_l2_nat(const DriftOperator& D, const Point& x, const Point& y,
                                const QuadConfig& cfg = {});
QuadResult heat_dt_l2_nat(int k, const Point& x, const Point& y, const QuadConfig& cfg = {});
double heat_dt_sup_nat(int k, const Point& x, const Point& y);
QuadResult poisson_dt_l2_nat(int k, const Point& x, const Point& y, const QuadConfig& cfg = {});

// Maximizes g over log-spaced t in [t_lo, t_hi] (points_per_decade nodes)
// followed by golden-section refinement around the best node.
struct MaxResult {
    double t_best = 0;
    double value = 0;
};
MaxResult maximize_log_t(const Fn1& g, double t_lo = 1e-3, double t_hi = 1e4, int points_per_decade = 64);

}  // namespace driftlab
