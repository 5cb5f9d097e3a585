#pragma once

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "glap/young.hpp"

namespace glap {

using Point = std::array<double, 2>;

/// Small closed family of scalar profiles. Powers are extended oddly
/// (sign(t)|t|^e) so sources stay meaningful for signed iterates.
struct ScalarFunction {
    enum class Kind { zero, power, expfn };
    Kind kind = Kind::zero;
    double exponent = 1.0;
    double coef = 1.0;

    double operator()(double t) const;
    double derivative(double t) const;
    double inverse(double y) const;  // power/expfn only, y > 0
    bool is_zero() const { return kind == Kind::zero || coef == 0.0; }

    static ScalarFunction zero() { return {}; }
    static ScalarFunction power(double exponent, double coef = 1.0) {
        return {Kind::power, exponent, coef};
    }
    static ScalarFunction expfn(double coef = 1.0) { return {Kind::expfn, 0.0, coef}; }
};

using BFunc = std::function<double(const Point&, double, const Point&)>;

/// Source B(x,t,p). Default composite form
///     B = A * b(x) * f(t) + f0(t) + h(|p|)
/// with b given by a fixed expression family ("1" or "1+x1"). An
/// evaluate_override replaces the composite entirely (named test fixtures).
struct SourceTerm {
    double A = 1.0;
    ScalarFunction f = ScalarFunction::power(3.0);  // principal growth, ~ t^{q-1}
    ScalarFunction f0 = ScalarFunction::zero();     // lower-order term, f0 << f
    ScalarFunction h = ScalarFunction::zero();      // gradient growth in |p|
    std::string b_expr = "1";
    double q = 4.0;   // declared limit-profile exponent
    double K = 2.0;   // growth constant of |B| <= K(1 + f(t) + h(|p|))
    double L = 0.0;   // positivity shift in B + L g(t) >= 0
    double M0 = 10.0; // amplitude window for the growth check

    BFunc evaluate_override;
    std::function<double(double)> dBdt_override;  // d/dt, when analytic form is known
};

double b_value(const SourceTerm& st, const Point& x);
double evaluate_B(const SourceTerm& st, const Point& x, double t, const Point& p);
/// Analytic for the composite family, central finite difference otherwise.
double dB_dt(const SourceTerm& st, const Point& x, double t, const Point& p);

struct ConditionReport {
    std::string condition_id;
    bool passed = false;
    bool warning = false;
    std::string details;
    std::map<std::string, double> metrics;
    std::map<std::string, double> witness;  // populated whenever passed is false
};

struct GrowthGrid {
    std::vector<Point> x_samples{{0, 0}, {1, 0}, {0.5, 0.5}, {0, 1}, {1, 1}, {0.3, 0.7}};
    int n_t = 49;        // t in [-M0, M0]
    int n_p = 33;        // |p| in {0} + logspace
    double p_max = 1e3;
};

/// Growth bound: K_hat = max |B| / (1 + f(|t|) + h(|p|)) over the grid must
/// not exceed st.K. Also reports K_hat2 = max |B| / (1 + g(|p|)|p|).
ConditionReport check_growth(const SourceTerm& st, const YoungFunction& yf,
                             const GrowthGrid& grid = {});

/// For each C: the smallest sampled t0 with t f(t) >= G(C t) for all sampled
/// t > t0. Fails when the top of the grid still violates.
ConditionReport check_fG(const SourceTerm& st, const YoungFunction& yf,
                         std::span<const double> C_list,
                         std::array<double, 2> t_range = {1e-3, 1e3}, int n_t = 400);

/// C_hat = max over s > s0, t in [0, t_max] of h(G^{-1}(s f(s)) t) / (f(s)(1+G(t))),
/// which must be finite and non-increasing in s at the tail of the grid.
ConditionReport check_eti1(const SourceTerm& st, const YoungFunction& yf, double s0,
                           double s_max = 1e4, int n_s = 25, double t_max = 1e2, int n_t = 41);

/// Rescaled quotient B(x, M t, c a(M) p)/f(M) with a(M) = G^{-1}(M f(M));
/// fits q_hat at the largest M, reports b_hat per x sample, and measures the
/// sup deviation from the declared profile b(x) t^{q-1} per M.
ConditionReport check_limit_profile(const SourceTerm& st, const YoungFunction& yf,
                                    std::span<const double> M_list,
                                    std::span<const double> t_grid,
                                    std::span<const double> p_grid,
                                    const std::vector<Point>& x_samples,
                                    double a_prefactor = 1.0);

/// Positivity (P): B + L g(t) >= -1e-12 on a dyadic grid, with L_hat = the
/// smallest candidate shift that passes. Superlinearity (S): the ratio
/// (B + L g(t)) / (g(t) + g(|p|)) at scale 2^-k must fall below `s_threshold`.
std::pair<ConditionReport, ConditionReport> check_PS(const SourceTerm& st,
                                                     const YoungFunction& yf, int k_max = 20,
                                                     const std::vector<Point>& x_samples = {{0, 0}},
                                                     double s_threshold = 1e-3);

/// p* = n p/(n-p) for p < n (infinite otherwise, flagged); passes iff p < q < p*.
ConditionReport check_subcritical(double q, double p, int n);

}  // namespace glap
