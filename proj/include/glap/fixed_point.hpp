#pragma once

#include <utility>
#include <vector>

#include "glap/solver.hpp"

namespace glap {

struct FixedPointConfig {
    double omega = 0.5;       // damping of u <- (1-w) u + w Lambda(u)
    double homotopy_t = 0.0;  // H(t,u) = S(T(u) + t*lambda0)
    double lambda0 = 0.0;
    double r = 1e-2;          // inner exclusion radius
    double R = 1e2;           // outer escape radius
    int max_outer = 60;
    double tol_outer = 1e-8;
    double inner_tol = 1e-10;
    std::vector<double> amplitudes{0.1, 1.0, 3.0, 10.0};  // multi-start bump heights
    unsigned long long seed = 0;
    double jitter = 0.0;  // relative multi-start amplitude jitter (0 = exact)
};

void validate(const FixedPointConfig& cfg);

enum class Outcome { converged, escaped_R, collapsed_to_zero, max_iters };
const char* outcome_name(Outcome o);

struct IterationRecord {
    int iter = 0;
    double sup_norm = 0.0;
    double c1_norm = 0.0;
    double update_norm = 0.0;
    int inner_iterations = 0;
    bool inner_converged = true;
};

struct IterationTrace {
    std::vector<IterationRecord> records;
    Outcome outcome = Outcome::max_iters;
    bool inner_failure = false;
    int clip_count = 0;                 // cone-violation clips across the run
    double final_weak_residual = -1.0;  // direct weak-form residual at convergence
};

/// sup |u| + max element |grad u| (discrete C1 norm).
double c1_norm(const Mesh& mesh, const Field& u);

/// Positive bump vanishing on the boundary: product of axis sines on boxes,
/// paraboloid on disks, scaled to the requested height.
Field bump_field(const Mesh& mesh, double height);

/// T(u) = B(x, u, grad u) + L g(|u|) sgn(u), nodal.
Field apply_T(const DiscreteProblem& dp, const Field& u);

/// Lambda(u) = S(T(u) + homotopy_t * lambda0), clipped to the nonnegative cone
/// at -1e-10 (clips counted into *clip_count when given).
std::pair<Field, SolveReport> apply_Lambda(const DiscreteProblem& dp, const Field& u,
                                           const FixedPointConfig& cfg,
                                           int* clip_count = nullptr);

/// Damped fixed-point iteration u <- (1-w)u + w Lambda(u) with annulus
/// bookkeeping: stops on converged / escaped_R / collapsed_to_zero / max_iters.
std::pair<Field, IterationTrace> fixed_point_iterate(const DiscreteProblem& dp, const Field& u0,
                                                     const FixedPointConfig& cfg);

struct MultiStartResult {
    bool success = false;
    Field u;
    IterationTrace trace;          // trace of the winning start
    double amplitude = 0.0;        // winning bump height
    bool via_newton_fallback = false;
    SolveReport newton_report;
    std::vector<Outcome> outcomes;  // one per start, in amplitude order
};

/// Runs fixed_point_iterate from each bump amplitude (parallel across starts,
/// capped by GLAP_THREADS), picks the converged run with the smallest weak
/// residual, and falls back to direct Newton seeded by the best iterate.
MultiStartResult multi_start_fixed_point(const DiscreteProblem& dp, const FixedPointConfig& cfg);

}  // namespace glap
