#pragma once

#include <string>
#include <utility>
#include <vector>

#include "glap/mesh.hpp"
#include "glap/source.hpp"
#include "glap/young.hpp"

namespace glap {

struct SolverParams {
    double epsilon = 1e-6;        // gradient regularization |grad u|_eps
    double tol = 1e-8;            // residual dual norm target
    int max_newton = 80;
    double escape_sup = 1e6;      // direct mode: sup-norm divergence bound
    double escape_residual = 1e6;
    bool enforce_positive = false;
};

struct DiscreteProblem {
    Mesh mesh;
    YoungFunction yf;
    SourceTerm source;
    double lambda = 0.0;  // constant forcing of the full problem
    double L = 0.0;       // shift of the inner operator -div(...) + L g(u)
    SolverParams solver;
};

struct SolveReport {
    bool converged = false;
    bool escaped = false;
    int iterations = 0;
    std::vector<double> residual_history;
    std::vector<double> energy_history;  // inner mode only
    double final_residual = 0.0;
    double final_sup_norm = 0.0;
    double wall_time = 0.0;  // never serialized (artifact determinism)
    std::string message;
};

enum class ResidualMode { inner, direct };

/// Nodal weak-form residual. inner: <-div flux, v> + m_v (L g(|u|)sgn(u) - psi);
/// direct: <-div flux, v> - m_v (B(x_v, u_v, grad u_v) + lambda). Boundary rows
/// carry u_v itself. Flux is g(s_eps) grad u / s_eps per element.
Field residual(const DiscreteProblem& dp, const Field& u, const Field* psi, ResidualMode mode);

/// l2 norm over free (non-boundary) nodes.
double residual_dual_norm(const DiscreteProblem& dp, const Field& r);

/// Regularized convex energy driving inner_solve.
double energy(const DiscreteProblem& dp, const Field& u, const Field& psi);

/// Solution operator S: minimizes the convex energy of -div flux + L g(u) = psi
/// with zero boundary data, by damped Newton with Armijo backtracking.
std::pair<Field, SolveReport> inner_solve(const DiscreteProblem& dp, const Field& psi,
                                          double tol);

/// Damped Newton on the direct residual (line search on the residual norm).
/// No global convergence claim; divergence is reported via the escape flag.
std::pair<Field, SolveReport> direct_solve(const DiscreteProblem& dp, const Field& u0,
                                           double tol);

}  // namespace glap
