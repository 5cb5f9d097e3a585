#include "glap/fixed_point.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace glap {

namespace {

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

int thread_cap() {
    if (const char* env = std::getenv("GLAP_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 4u));
}

}  // namespace

void validate(const FixedPointConfig& cfg) {
    if (!(cfg.omega > 0.0) || cfg.omega > 1.0)
        throw std::invalid_argument("fixed_point: omega must lie in (0,1]");
    if (!(cfg.r > 0.0) || !(cfg.R > cfg.r))
        throw std::invalid_argument("fixed_point: need 0 < r < R");
    if (cfg.homotopy_t < 0.0 || cfg.homotopy_t > 1.0)
        throw std::invalid_argument("fixed_point: homotopy_t must lie in [0,1]");
    if (cfg.lambda0 < 0.0) throw std::invalid_argument("fixed_point: lambda0 must be >= 0");
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::converged: return "converged";
        case Outcome::escaped_R: return "escaped_R";
        case Outcome::collapsed_to_zero: return "collapsed_to_zero";
        case Outcome::max_iters: return "max_iters";
    }
    return "unknown";
}

double c1_norm(const Mesh& mesh, const Field& u) {
    double gmax = 0.0;
    for (const auto& g : gradient_per_element(mesh, u))
        gmax = std::max(gmax, std::hypot(g[0], g[1]));
    return sup_norm(u) + gmax;
}

Field bump_field(const Mesh& mesh, double height) {
    Field u(mesh.vertices.size(), 0.0);
    for (std::size_t v = 0; v < u.size(); ++v) {
        if (mesh.boundary[v]) continue;
        const auto& x = mesh.vertices[v];
        double b = 1.0;
        if (mesh.shape == MeshShape::disk) {
            const double r2 = (x[0] * x[0] + x[1] * x[1]) / (mesh.radius * mesh.radius);
            b = std::max(0.0, 1.0 - r2);
        } else {
            for (int ax = 0; ax < mesh.dimension; ++ax) {
                const double len = mesh.box_hi[ax] - mesh.box_lo[ax];
                b *= std::sin(M_PI * (x[ax] - mesh.box_lo[ax]) / len);
            }
        }
        u[v] = height * b;
    }
    return u;
}

Field apply_T(const DiscreteProblem& dp, const Field& u) {
    const Mesh& mesh = dp.mesh;
    if (u.size() != mesh.vertices.size())
        throw std::invalid_argument("apply_T: field size mismatch");
    const auto vg = vertex_gradients(mesh, u);
    Field t(u.size(), 0.0);
    for (std::size_t v = 0; v < u.size(); ++v) {
        const double B = evaluate_B(dp.source, mesh.vertices[v], u[v], vg[v]);
        t[v] = B + dp.L * evaluate(dp.yf, YoungEval::g, std::abs(u[v])) * sgn(u[v]);
        if (!std::isfinite(t[v]))
            throw std::runtime_error("apply_T: non-finite value at node " + std::to_string(v));
    }
    return t;
}

std::pair<Field, SolveReport> apply_Lambda(const DiscreteProblem& dp, const Field& u,
                                           const FixedPointConfig& cfg, int* clip_count) {
    Field psi = apply_T(dp, u);
    if (cfg.homotopy_t > 0.0)
        for (double& v : psi) v += cfg.homotopy_t * cfg.lambda0;
    auto [w, rep] = inner_solve(dp, psi, cfg.inner_tol);
    for (double& v : w)
        if (v < 0.0) {
            if (v < -1e-10 && clip_count) ++(*clip_count);
            v = 0.0;
        }
    return {std::move(w), rep};
}

std::pair<Field, IterationTrace> fixed_point_iterate(const DiscreteProblem& dp, const Field& u0,
                                                     const FixedPointConfig& cfg) {
    validate(cfg);
    const Mesh& mesh = dp.mesh;
    Field u = u0;
    for (std::size_t v = 0; v < u.size(); ++v)
        u[v] = mesh.boundary[v] ? 0.0 : std::max(u[v], 0.0);

    IterationTrace trace;
    for (int it = 0; it < cfg.max_outer; ++it) {
        Field lam;
        SolveReport inner_rep;
        try {
            std::tie(lam, inner_rep) = apply_Lambda(dp, u, cfg, &trace.clip_count);
        } catch (const std::runtime_error&) {
            trace.inner_failure = true;
            break;
        }
        if (!inner_rep.converged) {
            trace.inner_failure = true;
            trace.records.push_back({it, sup_norm(u), c1_norm(mesh, u), -1.0,
                                     inner_rep.iterations, false});
            break;
        }

        Field next(u.size());
        for (std::size_t v = 0; v < u.size(); ++v)
            next[v] = (1.0 - cfg.omega) * u[v] + cfg.omega * lam[v];
        Field delta(u.size());
        for (std::size_t v = 0; v < u.size(); ++v) delta[v] = next[v] - u[v];
        const double update = c1_norm(mesh, delta);
        const double sup = sup_norm(next);
        trace.records.push_back(
            {it, sup, c1_norm(mesh, next), update, inner_rep.iterations, true});
        u = std::move(next);

        if (sup > cfg.R) {
            trace.outcome = Outcome::escaped_R;
            return {u, trace};
        }
        if (sup < cfg.r * 1e-2) {
            trace.outcome = Outcome::collapsed_to_zero;
            return {u, trace};
        }
        if (update <= cfg.tol_outer) {
            trace.outcome = Outcome::converged;
            // measure against the problem the map actually targets
            DiscreteProblem dpr = dp;
            dpr.lambda = cfg.homotopy_t * cfg.lambda0;
            trace.final_weak_residual =
                residual_dual_norm(dpr, residual(dpr, u, nullptr, ResidualMode::direct));
            return {u, trace};
        }
    }
    trace.outcome = Outcome::max_iters;
    return {u, trace};
}

MultiStartResult multi_start_fixed_point(const DiscreteProblem& dp, const FixedPointConfig& cfg) {
    validate(cfg);
    const std::size_t n = cfg.amplitudes.size();
    if (n == 0) throw std::invalid_argument("multi_start_fixed_point: no amplitudes");

    std::vector<double> heights(cfg.amplitudes.begin(), cfg.amplitudes.end());
    if (cfg.jitter > 0.0)
        for (std::size_t i = 0; i < n; ++i) {
            std::mt19937_64 rng(cfg.seed + i);
            std::uniform_real_distribution<double> d(-cfg.jitter, cfg.jitter);
            heights[i] *= 1.0 + d(rng);
        }

    std::vector<Field> fields(n);
    std::vector<IterationTrace> traces(n);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (std::size_t i = cursor.fetch_add(1); i < n; i = cursor.fetch_add(1)) {
            auto [u, tr] = fixed_point_iterate(dp, bump_field(dp.mesh, heights[i]), cfg);
            fields[i] = std::move(u);
            traces[i] = std::move(tr);
        }
    };
    const int n_threads = std::min<int>(thread_cap(), static_cast<int>(n));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    MultiStartResult res;
    for (std::size_t i = 0; i < n; ++i) res.outcomes.push_back(traces[i].outcome);

    int best = -1;
    for (std::size_t i = 0; i < n; ++i) {
        if (traces[i].outcome != Outcome::converged) continue;
        if (best < 0 || traces[i].final_weak_residual < traces[best].final_weak_residual)
            best = static_cast<int>(i);
    }
    if (best >= 0) {
        res.success = true;
        res.u = fields[best];
        res.trace = traces[best];
        res.amplitude = heights[best];
        return res;
    }

    // Newton fallback seeded by the iterate with the smallest direct residual
    // among starts that stayed inside the annulus. The direct problem carries
    // the homotopy forcing, matching what the damped map iterates toward.
    DiscreteProblem dpr = dp;
    dpr.lambda = cfg.homotopy_t * cfg.lambda0;
    best = -1;
    double best_rn = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double sup = sup_norm(fields[i]);
        if (!(sup > cfg.r * 1e-2) || sup > 10.0 * cfg.R) continue;
        double rn;
        try {
            rn = residual_dual_norm(dpr, residual(dpr, fields[i], nullptr, ResidualMode::direct));
        } catch (const std::runtime_error&) {
            continue;
        }
        if (best < 0 || rn < best_rn) {
            best = static_cast<int>(i);
            best_rn = rn;
        }
    }
    DiscreteProblem dpn = dpr;
    dpn.solver.enforce_positive = true;
    res.via_newton_fallback = true;
    res.trace = best >= 0 ? traces[best] : IterationTrace{};

    std::vector<std::pair<double, Field>> seeds;
    if (best >= 0) seeds.emplace_back(heights[best], fields[best]);
    std::vector<double> tall(heights);
    std::sort(tall.rbegin(), tall.rend());  // big bumps sit above the pass
    for (double h : tall) seeds.emplace_back(h, bump_field(dp.mesh, h));

    for (auto& [amp, seed_field] : seeds) {
        auto [un, rep] = direct_solve(dpn, seed_field, dp.solver.tol);
        res.newton_report = rep;
        res.amplitude = amp;
        if (rep.converged && sup_norm(un) > cfg.r) {
            res.success = true;
            res.u = std::move(un);
            res.trace.final_weak_residual =
                residual_dual_norm(dpr, residual(dpr, res.u, nullptr, ResidualMode::direct));
            return res;
        }
    }
    res.u = best >= 0 ? fields[best] : Field(dp.mesh.vertices.size(), 0.0);
    return res;
}

}  // namespace glap
