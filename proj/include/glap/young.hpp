#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace glap {

enum class YoungKind { power, plog, double_power, tabulated };
enum class YoungEval { G, g, gprime };

using ScalarFn = std::function<double(double)>;

/// A Young function G with derivative g = G'. Analytic kinds carry closed
/// forms; `tabulated` interpolates a user-supplied monotone sample of g.
///
///   power:        G(t) = t^p / p
///   plog:         G(t) = t^p ln^alpha(1+t)   (alpha = 0 gives exactly t^p)
///   double_power: G(t) = t^p/p + t^q/q
struct YoungFunction {
    YoungKind kind = YoungKind::power;
    double p = 2.0;
    double alpha = 0.0;  // plog only
    double q = 0.0;      // double_power only

    // tabulated samples (strictly increasing t, strictly increasing g)
    std::vector<double> table_t;
    std::vector<double> table_g;

    // positive range over which numerical condition checks sample (log-spaced)
    std::array<double, 2> eval_domain{1e-3, 1e3};

    // tabulated interpolation state, filled by make_tabulated
    std::vector<double> table_slopes;  // monotone-cubic slopes of g
    std::vector<double> table_G;       // cumulative trapezoid of g at knots
    double head_exponent = 1.0;        // log-slope of g below the table
    double tail_exponent = 1.0;        // log-slope of g above the table

    static YoungFunction make_power(double p, std::array<double, 2> dom = {1e-3, 1e3});
    static YoungFunction make_plog(double p, double alpha, std::array<double, 2> dom = {1e-3, 1e3});
    static YoungFunction make_double_power(double p, double q, std::array<double, 2> dom = {1e-3, 1e3});
    static YoungFunction make_tabulated(std::vector<double> t, std::vector<double> g,
                                        std::array<double, 2> dom = {0.0, 0.0});
};

/// Throws if G fails to be a valid Young function on the sampled eval_domain
/// (g > 0, g' >= 0, and g consistent with the difference quotient of G).
void validate(const YoungFunction& yf, int n_samples = 64);

double evaluate(const YoungFunction& yf, YoungEval which, double t);

inline double G_of(const YoungFunction& yf, double t) { return evaluate(yf, YoungEval::G, t); }
inline double g_of(const YoungFunction& yf, double t) { return evaluate(yf, YoungEval::g, t); }
inline double gprime_of(const YoungFunction& yf, double t) { return evaluate(yf, YoungEval::gprime, t); }

/// t with G(t) = y, by safeguarded bisection/Newton. inverse_G(0) = 0.
double inverse_G(const YoungFunction& yf, double y);

/// Complementary (conjugate) function G~(t) = sup_w { t w - G(w) },
/// evaluated through the root of g(w) = t. Throws range_error when t is not
/// reachable by g on the numeric domain (saturation).
double complementary(const YoungFunction& yf, double t);

struct LiebermanBands {
    double p_minus_hat = 0;  // 1 + min g'(t)t/g(t)
    double p_plus_hat = 0;   // 1 + max g'(t)t/g(t)
    double ratio2_min = 0;   // min t g(t)/G(t)
    double ratio2_max = 0;   // max t g(t)/G(t)
};

LiebermanBands lieberman_exponents(const YoungFunction& yf, int n_samples = 600);

/// max over sampled t of G(2t)/G(t).
double delta2_constant(const YoungFunction& yf, int n_samples = 600);

struct RegVarResult {
    double p_hat = 0;
    std::vector<double> deviation_history;  // one entry per s in s_list
    bool not_regularly_varying_warning = false;
};

/// Empirical exponent at infinity: least-squares slope of log(g(st)/g(s))
/// against log t, taken at the largest s; deviations measured against
/// t^(p_hat-1) for every s.
RegVarResult regvar_exponent(const YoungFunction& yf, std::span<const double> s_list,
                             std::span<const double> t_grid);

struct ExponentReport {
    double p_minus_hat = 0;
    double p_plus_hat = 0;
    double delta2_constant = 0;
    double regvar_p_hat = 0;
    std::array<double, 2> sample_range{0, 0};
    int n_samples = 0;
};

ExponentReport exponent_report(const YoungFunction& yf, int n_samples = 600);

/// phi(t) solving phi * g(t*phi) = f(t); strictly increasing in phi, so the
/// bracketed solve is unconditional. Requires f(t) > 0.
double phi_implicit(const YoungFunction& yf, const ScalarFn& f, double t);

/// varphi(t) = G^{-1}(t f(t)) / t.
double varphi(const YoungFunction& yf, const ScalarFn& f, double t);

struct PhiComparison {
    double k_minus_hat = 0;  // min phi/varphi over the grid
    double k_plus_hat = 0;   // max phi/varphi over the grid
};

PhiComparison phi_ratio_bounds(const YoungFunction& yf, const ScalarFn& f, double t_min,
                               double t_max, int n_samples = 200);

/// max over a 2D sample grid of g(t) s / (G(t) + G(s)).
double young_inequality_constant(const YoungFunction& yf, int n_samples = 160);

namespace detail {

/// Solves F(x) = target for increasing F on (0, x_cap), with bracket expansion
/// by doubling, bisection, and Newton polish when dF is supplied.
double solve_increasing(const ScalarFn& F, const ScalarFn* dF, double target, double guess,
                        double rel_tol = 1e-13, const char* what = "solve_increasing",
                        double x_cap = 1e300);

}  // namespace detail

}  // namespace glap
