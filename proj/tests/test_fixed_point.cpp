#include <cmath>
#include <cstring>
#include <stdexcept>

#include "doctest.h"

#include "glap/fixed_point.hpp"

using namespace glap;

namespace {

DiscreteProblem cubic_1d(int n_cells = 128) {
    DiscreteProblem dp;
    dp.mesh = build_interval(0.0, 1.0, n_cells);
    dp.yf = YoungFunction::make_power(2.0);
    dp.source.f = ScalarFunction::power(3.0);
    dp.L = 1.0;
    return dp;
}

}  // namespace

TEST_SUITE("fixed_point") {

TEST_CASE("config validation") {
    FixedPointConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.omega = 1.5;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.r = 200.0;  // r >= R
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = {};
    cfg.homotopy_t = 2.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

TEST_CASE("outcome names are stable") {
    CHECK(std::strcmp(outcome_name(Outcome::converged), "converged") == 0);
    CHECK(std::strcmp(outcome_name(Outcome::escaped_R), "escaped_R") == 0);
    CHECK(std::strcmp(outcome_name(Outcome::collapsed_to_zero), "collapsed_to_zero") == 0);
    CHECK(std::strcmp(outcome_name(Outcome::max_iters), "max_iters") == 0);
}

TEST_CASE("c1 norm of a linear profile") {
    const Mesh m = build_interval(0.0, 1.0, 16);
    Field u(m.vertices.size());
    for (std::size_t v = 0; v < u.size(); ++v) u[v] = 2.0 * m.vertices[v][0];
    CHECK(c1_norm(m, u) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("T composes source and shift nodally") {
    DiscreteProblem dp = cubic_1d(16);
    Field u(dp.mesh.vertices.size());
    for (std::size_t v = 0; v < u.size(); ++v) u[v] = 0.5 * dp.mesh.vertices[v][0];
    const Field t = apply_T(dp, u);
    const auto grads = vertex_gradients(dp.mesh, u);
    for (std::size_t v = 0; v < u.size(); ++v) {
        const double want =
            evaluate_B(dp.source, dp.mesh.vertices[v], u[v], grads[v]) + dp.L * g_of(dp.yf, u[v]);
        CHECK(t[v] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("solution operator output stays in the cone under Lambda") {
    DiscreteProblem dp = cubic_1d(32);
    FixedPointConfig cfg;
    const auto [lu, rep] = apply_Lambda(dp, bump_field(dp.mesh, 1.0), cfg);
    REQUIRE(rep.converged);
    for (double x : lu) CHECK(x >= -1e-10);
}

TEST_CASE("tiny starts collapse to zero") {
    DiscreteProblem dp = cubic_1d();
    FixedPointConfig cfg;
    const auto [u, trace] = fixed_point_iterate(dp, bump_field(dp.mesh, 1e-6), cfg);
    CHECK(trace.outcome == Outcome::collapsed_to_zero);
}

TEST_CASE("multi-start lands on the mountain-pass solution") {
    DiscreteProblem dp = cubic_1d();
    FixedPointConfig cfg;
    const MultiStartResult res = multi_start_fixed_point(dp, cfg);
    REQUIRE(res.success);
    CHECK(res.outcomes.size() == cfg.amplitudes.size());
    // independently computed ODE shooting value for sup of u'' + u^3 = 0
    CHECK(std::abs(sup_norm(res.u) - 3.7081493546) < 1e-3);
    const double weak =
        residual_dual_norm(dp, residual(dp, res.u, nullptr, ResidualMode::direct));
    CHECK(weak <= 1e-6);
    // trace rows carry the iteration bookkeeping
    for (const auto& rec : res.trace.records) {
        CHECK(rec.sup_norm >= 0.0);
        CHECK(rec.c1_norm >= rec.sup_norm);
    }
}

TEST_CASE("the damped map alone cannot hold the unstable solution") {
    // Picard iteration around a mountain-pass fixed point either collapses or
    // stalls; convergence is delivered by the Newton fallback instead.
    DiscreteProblem dp = cubic_1d();
    FixedPointConfig cfg;
    const MultiStartResult res = multi_start_fixed_point(dp, cfg);
    REQUIRE(res.success);
    CHECK(res.via_newton_fallback);
    CHECK(res.newton_report.converged);
}

TEST_CASE("homotopy forcing reaches the forced problem") {
    DiscreteProblem dp = cubic_1d(64);
    FixedPointConfig cfg;
    cfg.homotopy_t = 1.0;
    cfg.lambda0 = 5.0;
    const MultiStartResult res = multi_start_fixed_point(dp, cfg);
    REQUIRE(res.success);
    DiscreteProblem forced = dp;
    forced.lambda = 5.0;
    const double weak =
        residual_dual_norm(forced, residual(forced, res.u, nullptr, ResidualMode::direct));
    CHECK(weak <= 1e-6);
    CHECK(res.trace.final_weak_residual <= 1e-6);
    // the damped map settles on the stable lower branch of the forced problem,
    // strictly off zero (u = 0 no longer solves once lambda > 0)
    CHECK(sup_norm(res.u) < 3.7);
    CHECK(sup_norm(res.u) > 0.1);
}

TEST_CASE("homotopy forcing above the existence threshold never converges") {
    DiscreteProblem dp = cubic_1d(64);
    FixedPointConfig cfg;
    cfg.homotopy_t = 1.0;
    cfg.lambda0 = 25.0;  // the branch dies near 12 on this problem
    const auto [u, trace] = fixed_point_iterate(dp, bump_field(dp.mesh, 1.0), cfg);
    CHECK(trace.outcome != Outcome::converged);
    const MultiStartResult res = multi_start_fixed_point(dp, cfg);
    CHECK_FALSE(res.success);
}

}  // TEST_SUITE
