#pragma once

#include <span>
#include <vector>

#include "glap/fixed_point.hpp"
#include "glap/solver.hpp"

namespace glap {

struct RescaleResult {
    bool case1 = true;
    double M_k = 0.0;   // sup of u
    Point x_k{0, 0};    // argmax of u
    double N_k = 0.0;   // scale: M_k (case 1) or f^{-1}(lambda_k) (case 2)
    Point y_k{0, 0};    // rescaling center
    double phi_Nk = 0.0;
    double mu_k = 0.0;  // lambda_k / f(N_k); exactly 1 in case 2
    double boundary_distance = 0.0;  // dist(y_k, boundary) in original coordinates
    bool centered_fallback = false;  // case 2 domain without interior origin
    Mesh rescaled_mesh;
    Field v;  // v(x) = u(y_k + x/phi(N_k)) / N_k
};

/// Zooms u around its max (case 1) or around the forcing scale (case 2) onto a
/// fresh mesh of the rescaled domain truncated to a box of the given
/// half-width. The rescaled origin is always a mesh vertex, so in case 1
/// sup v = v(0) = 1 up to roundoff.
RescaleResult rescale(const Field& u, const DiscreteProblem& dp, bool use_case2, double lambda_k,
                      double box_halfwidth = 10.0, int cells_per_axis = 0);

struct DeviationTable {
    std::vector<double> scale;      // the N values probed
    std::vector<double> deviation;  // sup distance to the limit profile per N
    double p_hat = 0.0;             // g_k: exponent of the comparison profile t^{p-1}
    double q_hat = 0.0;             // B_k: fitted profile exponent
    double b_hat = 0.0;             // B_k: fitted coefficient at the center
    double bound_ratio = 0.0;       // B_k: max |B_k| / (1 + f(Nt)/f(N) + h-part)
    bool plateau_flag = false;      // deviations stalled instead of shrinking
};

/// Deviation of g_k(t) = g(N phi(N) t)/g(N phi(N)) from t^{p_hat-1}, with
/// p_hat fitted by regular variation at the same scales N phi(N).
DeviationTable gk_limit_check(const YoungFunction& yf, const ScalarFunction& f,
                              std::span<const double> N_list, std::span<const double> t_grid);

/// Deviation of B_k(x,t,p) = B(0, N t, N phi(N) p)/f(N) from b(0) t^{q-1}.
DeviationTable bk_limit_check(const SourceTerm& st, const YoungFunction& yf,
                              std::span<const double> N_list, std::span<const double> t_grid,
                              std::span<const double> p_grid);

struct ContinuationRow {
    double lambda = 0.0;
    double sup_norm = 0.0;
    bool converged = false;
    int iterations = 0;
};

struct ContinuationTable {
    std::vector<ContinuationRow> rows;        // one per grid lambda, ascending
    std::vector<ContinuationRow> refinement;  // bisection probes after the first failure
    double lambda_star = 0.0;  // +inf when every row converged
    double max_bound_observed = 0.0;  // empirical C: max of sup + lambda over converged rows
};

/// Sweeps lambda with warm starts (multi-start at the first value), locates
/// the first failure bracket, and refines it by 6 bisection steps. A failure
/// means direct_solve did not converge from 4 warm/bump starts, which
/// deliberately conflates nonexistence with solver failure.
ContinuationTable lambda_continuation(const DiscreteProblem& dp_base,
                                      std::span<const double> lambda_grid,
                                      const FixedPointConfig& cfg);

struct LiouvilleProbe {
    std::vector<double> radii;
    std::vector<double> sups;
    std::vector<bool> converged;
    double slope = 0.0;  // log-log fit excluding the smallest radius
};

/// Solves the p-Laplace superlinear problem on disks of growing radius at
/// fixed interior resolution and fits log sup u_R against log R.
LiouvilleProbe liouville_scaling_probe(double p, double q, std::span<const double> radii,
                                       double h_target = 0.1, double tol = 1e-8);

}  // namespace glap
