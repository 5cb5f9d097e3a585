// Acceptance gate: fourteen end-to-end checks, one [PASS]/[FAIL] line each.
// Usage: glap_acceptance [path-to-glap-cli] [scratch-dir]

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "glap/blowup.hpp"
#include "glap/gridutil.hpp"
#include "glap/io.hpp"

using namespace glap;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    if (!ok) ++g_failures;
    std::printf("[%s] %02d %-28s %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
}

void run_check(int id, const std::string& name,
               const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const auto [ok, detail] = body();
        report(id, name, ok, detail);
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

bool energy_monotone(const SolveReport& rep) {
    for (std::size_t i = 0; i + 1 < rep.energy_history.size(); ++i) {
        const double prev = rep.energy_history[i];
        if (rep.energy_history[i + 1] > prev + 1e-12 * std::abs(prev)) return false;
    }
    return true;
}

// ---- 01: closed-form Young algebra ------------------------------------------

std::pair<bool, std::string> check_young_algebra() {
    double worst = 0.0;
    for (double p : {1.5, 2.0, 2.7, 3.0}) {
        const auto yf = YoungFunction::make_power(p);
        const auto lb = lieberman_exponents(yf);
        if (std::abs(lb.p_minus_hat - p) > 1e-9 || std::abs(lb.p_plus_hat - p) > 1e-9)
            return {false, "lieberman exponents off at p=" + fmt(p)};
        if (std::abs(delta2_constant(yf) - std::pow(2.0, p)) > 1e-9)
            return {false, "doubling constant off at p=" + fmt(p)};
        const double pc = p / (p - 1.0);
        for (double t : logspace(1e-2, 1e2, 100)) {
            const double s = g_of(yf, t);
            const double want = std::pow(s, pc) / pc;
            const double err = std::abs(complementary(yf, s) - want) / std::max(1.0, want);
            worst = std::max(worst, err);
            if (err > 1e-8) return {false, "conjugate off at p=" + fmt(p) + ", t=" + fmt(t)};
        }
        const double rv = exponent_report(yf).regvar_p_hat;
        if (std::abs(rv - p) > 1e-6) return {false, "regular-variation exponent off at p=" + fmt(p)};
    }
    return {true, "p in {1.5,2,2.7,3}: exponents, doubling, conjugate (max rel err " +
                      fmt(worst) + "), regvar all exact"};
}

// ---- 02: tg/G band inside the derivative band --------------------------------

std::pair<bool, std::string> check_band_consistency() {
    const std::array<double, 2> dom{1e-6, 1e6};
    std::string detail;
    for (const auto& [name, yf] :
         {std::pair<std::string, YoungFunction>{"plog", YoungFunction::make_plog(2.0, 1.0, dom)},
          {"double_power", YoungFunction::make_double_power(2.0, 4.0, dom)}}) {
        const auto lb = lieberman_exponents(yf);
        if (lb.ratio2_min < lb.p_minus_hat - 1e-6 || lb.ratio2_max > lb.p_plus_hat + 1e-6)
            return {false, name + ": tg/G band [" + fmt(lb.ratio2_min) + "," + fmt(lb.ratio2_max) +
                               "] escapes [" + fmt(lb.p_minus_hat) + "," + fmt(lb.p_plus_hat) + "]"};
        detail += name + " [" + fmt(lb.ratio2_min) + "," + fmt(lb.ratio2_max) + "] in [" +
                  fmt(lb.p_minus_hat) + "," + fmt(lb.p_plus_hat) + "]  ";
    }
    return {true, detail};
}

// ---- 03: conjugate-pair inequality -------------------------------------------

std::pair<bool, std::string> check_young_inequality() {
    const std::vector<std::pair<std::string, YoungFunction>> fixtures{
        {"power1.5", YoungFunction::make_power(1.5)},
        {"power2", YoungFunction::make_power(2.0)},
        {"power2.7", YoungFunction::make_power(2.7)},
        {"power3", YoungFunction::make_power(3.0)},
        {"plog", YoungFunction::make_plog(2.0, 1.0)},
        {"double_power", YoungFunction::make_double_power(2.0, 4.0)}};
    double worst = 0.0;
    for (const auto& [name, yf] : fixtures) {
        const double c = young_inequality_constant(yf);
        if (!std::isfinite(c) || c <= 0.0) return {false, name + ": constant not finite"};
        for (double t : logspace(1e-1, 1e1, 100)) {
            const double s = g_of(yf, t);
            const double gap = std::abs(t * s - (G_of(yf, t) + complementary(yf, s)));
            const double rel = gap / std::max(1.0, t * s);
            worst = std::max(worst, rel);
            if (rel > 1e-8) return {false, name + ": equality case off by " + fmt(rel)};
        }
    }
    return {true, "constants finite on 6 fixtures; equality at s=g(t) within " + fmt(worst)};
}

// ---- 04: implicit vs explicit gradient scale ---------------------------------

std::pair<bool, std::string> check_phi_comparison() {
    const ScalarFn cubic = [](double t) { return t * t * t; };
    double worst = 0.0;
    for (double p : {1.5, 2.0, 2.7, 3.0}) {
        const auto yf = YoungFunction::make_power(p);
        const auto pc = phi_ratio_bounds(yf, cubic, 1e-2, 1e2);
        const double want = std::pow(p, -1.0 / p);
        const double err =
            std::max(std::abs(pc.k_minus_hat - want), std::abs(pc.k_plus_hat - want));
        worst = std::max(worst, err);
        if (err > 1e-8) return {false, "ratio drifts at p=" + fmt(p) + " by " + fmt(err)};
    }
    const auto band = phi_ratio_bounds(YoungFunction::make_plog(2.0, 1.0), cubic, 1e-2, 1e2);
    if (!(band.k_minus_hat > 0.0) || !std::isfinite(band.k_plus_hat))
        return {false, "plog band not finite"};
    return {true, "pure powers constant to " + fmt(worst) + "; plog band [" +
                      fmt(band.k_minus_hat) + "," + fmt(band.k_plus_hat) + "]"};
}

// ---- 05: luxemburg norms ------------------------------------------------------

std::pair<bool, std::string> check_luxemburg() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> amp(-3.0, 3.0);
    std::uniform_real_distribution<double> scl(0.1, 10.0);
    const Mesh m = build_interval(0.0, 1.0, 32);
    int violations = 0;
    double worst_eq = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double p = (i % 2 == 0) ? 2.0 : 3.0;
        const auto yf = YoungFunction::make_plog(p, 0.0);  // G = t^p exactly
        Field u(m.vertices.size(), 0.0);
        for (std::size_t v = 0; v < u.size(); ++v)
            if (!m.boundary[v]) u[v] = amp(rng);
        const double lux = luxemburg_norm(m, yf, u, false);
        const double lp = std::pow(modular(m, yf, u, false), 1.0 / p);
        worst_eq = std::max(worst_eq, std::abs(lux - lp) / std::max(1e-30, lp));
        if (std::abs(lux - lp) > 1e-8 * std::max(1e-30, lp)) ++violations;

        const double c = (i % 3 == 0 ? -1.0 : 1.0) * scl(rng);
        Field cu = u;
        for (auto& x : cu) x *= c;
        if (std::abs(luxemburg_norm(m, yf, cu, false) - std::abs(c) * lux) > 1e-10 * lux)
            ++violations;

        Field unit = u;
        for (auto& x : unit) x /= lux;
        if (modular(m, yf, unit, false) > 1.0) ++violations;
        Field pushed = u;
        for (auto& x : pushed) x /= lux * (1.0 - 1e-6);
        if (modular(m, yf, pushed, false) <= 1.0 - 1e-8) ++violations;
    }
    return {violations == 0, "1000 random fields, " + std::to_string(violations) +
                                 " violations; worst norm mismatch " + fmt(worst_eq)};
}

// ---- 06: inner solver against manufactured solutions --------------------------

std::pair<bool, std::string> check_inner_solver() {
    int energy_bad = 0;
    std::vector<double> errs;
    for (int n : {64, 128, 256}) {
        DiscreteProblem dp;
        dp.mesh = build_interval(0.0, 1.0, n);
        dp.yf = YoungFunction::make_power(2.0);
        dp.source.f = ScalarFunction::zero();
        Field psi(dp.mesh.vertices.size());
        for (std::size_t v = 0; v < psi.size(); ++v)
            psi[v] = M_PI * M_PI * std::sin(M_PI * dp.mesh.vertices[v][0]);
        const auto [u, rep] = inner_solve(dp, psi, 1e-10);
        if (!rep.converged) return {false, "sine case failed at n=" + std::to_string(n)};
        if (!energy_monotone(rep)) ++energy_bad;
        double err = 0.0;
        for (std::size_t v = 0; v < u.size(); ++v)
            err = std::max(err, std::abs(u[v] - std::sin(M_PI * dp.mesh.vertices[v][0])));
        errs.push_back(err);
    }
    const double ord1 = std::log2(errs[0] / errs[1]);
    const double ord2 = std::log2(errs[1] / errs[2]);
    if (ord1 < 1.8 || ord2 < 1.8)
        return {false, "sine orders " + fmt(ord1) + ", " + fmt(ord2) + " below 1.8"};

    DiscreteProblem dp3;
    dp3.mesh = build_interval(-1.0, 1.0, 1024);  // h = 1/512
    dp3.yf = YoungFunction::make_power(3.0);
    dp3.source.f = ScalarFunction::zero();
    const auto [u3, rep3] = inner_solve(dp3, Field(dp3.mesh.vertices.size(), 1.0), 1e-10);
    if (!rep3.converged) return {false, "p=3 case did not converge"};
    if (!energy_monotone(rep3)) ++energy_bad;
    const double e3 = std::abs(sup_norm(u3) - 2.0 / 3.0);
    if (e3 > 1e-3) return {false, "p=3 max off by " + fmt(e3)};

    if (energy_bad > 0)
        return {false, std::to_string(energy_bad) + " solves had an energy increase"};
    return {true, "sine orders " + fmt(ord1) + "/" + fmt(ord2) + "; p=3 max err " + fmt(e3) +
                      "; energy monotone in all accepted steps"};
}

// ---- 07: positivity of the solution operator ---------------------------------

std::pair<bool, std::string> check_positivity() {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> amp(0.0, 1.0);
    DiscreteProblem dp;
    dp.mesh = build_rectangle({0, 0}, {1, 1}, 16, 16);
    dp.yf = YoungFunction::make_power(2.0);
    dp.source.f = ScalarFunction::zero();
    dp.L = 1.0;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        Field psi(dp.mesh.vertices.size());
        for (auto& x : psi) x = amp(rng);
        const auto [u, rep] = inner_solve(dp, psi, 1e-9);
        if (!rep.converged) return {false, "solve " + std::to_string(i) + " did not converge"};
        for (double x : u) worst = std::min(worst, x);
    }
    if (worst < -1e-10) return {false, "min nodal value " + fmt(worst)};
    return {true, "50 random nonnegative sources; min nodal value " + fmt(worst)};
}

// ---- 08: fixed point vs an ODE shooting oracle --------------------------------

// u'' + u^3 = 0, u(0)=0, u'(0)=s, RK4; returns u(1) and the running max.
// (the L g(u) shift lives only inside the fixed-point map and cancels at the fixed point)
std::pair<double, double> shoot(double s) {
    const int n = 20000;
    const double dt = 1.0 / n;
    double u = 0.0, w = s, peak = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto f = [](double uu, double ww) { return std::pair{ww, -uu * uu * uu}; };
        const auto [k1u, k1w] = f(u, w);
        const auto [k2u, k2w] = f(u + 0.5 * dt * k1u, w + 0.5 * dt * k1w);
        const auto [k3u, k3w] = f(u + 0.5 * dt * k2u, w + 0.5 * dt * k2w);
        const auto [k4u, k4w] = f(u + dt * k3u, w + dt * k3w);
        u += dt / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
        w += dt / 6 * (k1w + 2 * k2w + 2 * k3w + k4w);
        peak = std::max(peak, u);
    }
    return {u, peak};
}

std::pair<bool, std::string> check_fixed_point() {
    // march the launch slope to the first sign change of u(1), then bisect there;
    // the first crossing is the positive ground state (half-period exactly 1)
    double lo = 1.0, hi = 0.0;
    for (double s = 1.5; s <= 400.0; s += 0.5) {
        if (shoot(s).first <= 0.0) {
            hi = s;
            break;
        }
        lo = s;
    }
    if (hi == 0.0) return {false, "no shooting bracket below slope 400"};
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (shoot(mid).first > 0.0 ? lo : hi) = mid;
    }
    const double oracle = shoot(0.5 * (lo + hi)).second;

    DiscreteProblem dp;
    dp.mesh = build_interval(0.0, 1.0, 128);
    dp.yf = YoungFunction::make_power(2.0);
    dp.source.f = ScalarFunction::power(3.0);
    dp.L = 1.0;
    FixedPointConfig cfg;
    const MultiStartResult res = multi_start_fixed_point(dp, cfg);
    if (!res.success) return {false, "multi-start did not converge"};
    const double weak = residual_dual_norm(dp, residual(dp, res.u, nullptr, ResidualMode::direct));
    if (weak > 1e-6) return {false, "weak residual " + fmt(weak)};
    const double gap = std::abs(sup_norm(res.u) - oracle);
    if (gap > 1e-3) return {false, "sup " + fmt(sup_norm(res.u)) + " vs oracle " + fmt(oracle)};

    const auto [utiny, trace] = fixed_point_iterate(dp, bump_field(dp.mesh, 1e-6), cfg);
    if (trace.outcome != Outcome::collapsed_to_zero)
        return {false, std::string("tiny start ended as ") + outcome_name(trace.outcome)};
    return {true, "sup " + fmt(sup_norm(res.u)) + " vs shooting " + fmt(oracle) + " (gap " +
                      fmt(gap) + "), weak residual " + fmt(weak) + ", tiny start collapses"};
}

// ---- 09: exact normalization in forcing-scaled zooms --------------------------

std::pair<bool, std::string> check_case2() {
    double worst = 0.0;
    const auto probe = [&](const DiscreteProblem& dp, const Field& u, double lambda_k) {
        const RescaleResult rr = rescale(u, dp, true, lambda_k);
        worst = std::max(worst, std::abs(rr.mu_k - 1.0));
    };
    DiscreteProblem d1;
    d1.mesh = build_interval(0.0, 1.0, 64);
    d1.yf = YoungFunction::make_power(2.0);
    d1.source.f = ScalarFunction::power(3.0);
    const Field u1 = bump_field(d1.mesh, 1.0);
    for (double lk : {8.0, 3.7, 0.125}) probe(d1, u1, lk);

    DiscreteProblem d2;
    d2.mesh = build_rectangle({-1, -1}, {1, 1}, 16, 16);
    d2.yf = YoungFunction::make_power(2.0);
    d2.source.f = ScalarFunction::power(2.5);
    const Field u2 = bump_field(d2.mesh, 1.0);
    for (double lk : {8.0, 3.7, 0.125}) probe(d2, u2, lk);

    DiscreteProblem d3 = d2;
    d3.source.f = ScalarFunction::expfn(1.0);
    for (double lk : {2.0, 9.5}) probe(d3, u2, lk);

    if (worst > 1e-12) return {false, "normalization off by " + fmt(worst)};
    return {true, "8 fixtures across f = t^3, t^2.5, e^t; max |mu - 1| = " + fmt(worst)};
}

// ---- 10: rescaled g approaches its power profile ------------------------------

std::pair<bool, std::string> check_gk_limit() {
    const auto yf = YoungFunction::make_plog(2.0, 1.0, {1e-6, 1e6});
    const auto t_grid = linspace(0.0, 2.0, 41);
    const auto ns = logspace(1e1, 1e5, 5);
    const auto tab = gk_limit_check(yf, ScalarFunction::power(3.0), ns, t_grid);
    for (std::size_t i = 0; i + 1 < tab.deviation.size(); ++i) {
        if (tab.deviation[i + 1] > tab.deviation[i] + 1e-15)
            return {false, "deviation rises between N=" + fmt(ns[i]) + " and " + fmt(ns[i + 1])};
    }
    if (!(tab.deviation.back() < 1e-2))
        return {false, "final deviation " + fmt(tab.deviation.back())};
    return {true, "deviations " + fmt(tab.deviation.front()) + " -> " + fmt(tab.deviation.back()) +
                      " non-increasing over N = 10..1e5"};
}

// ---- 11: rescaled B sheds its lower-order part at rate 1/N --------------------

std::pair<bool, std::string> check_bk_limit() {
    SourceTerm st;
    st.f = ScalarFunction::power(3.0);
    st.f0 = ScalarFunction::power(2.0);
    const auto yf = YoungFunction::make_power(2.0, {1e-9, 1e9});
    const auto t_grid = linspace(0.0, 2.0, 21);
    const auto ns = logspace(1e2, 1e5, 4);
    const double ps[] = {0.0, 0.5, 1.0};
    const auto tab = bk_limit_check(st, yf, ns, t_grid, ps);
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!(tab.deviation[i] > 0.0)) return {false, "degenerate deviation at N=" + fmt(ns[i])};
        lx.push_back(std::log(ns[i]));
        ly.push_back(std::log(tab.deviation[i]));
    }
    const double slope = lsq_fit(lx, ly).slope;
    if (std::abs(slope + 1.0) > 0.1) return {false, "decay slope " + fmt(slope)};
    return {true, "decay slope " + fmt(slope) + " (target -1 +/- 0.1), q_hat " + fmt(tab.q_hat)};
}

// ---- 12: continuation in the forcing strength ---------------------------------

std::pair<bool, std::string> check_continuation() {
    DiscreteProblem dp;
    dp.mesh = build_rectangle({0, 0}, {1, 1}, 64, 64);
    dp.yf = YoungFunction::make_power(2.0);
    dp.source.f = ScalarFunction::power(3.0);
    dp.L = 1.0;
    FixedPointConfig cfg;
    const auto grid = linspace(0.0, 50.0, 26);
    const ContinuationTable tab = lambda_continuation(dp, grid, cfg);

    if (!std::isfinite(tab.lambda_star)) return {false, "no finite threshold found"};
    if (tab.refinement.size() != 6)
        return {false, "expected 6 refinement rows, got " + std::to_string(tab.refinement.size())};
    for (const auto& row : tab.rows) {
        if (row.converged && row.sup_norm + row.lambda > tab.max_bound_observed + 1e-12)
            return {false, "bound violated at lambda=" + fmt(row.lambda)};
        if (row.converged && tab.lambda_star < row.lambda)
            return {false, "threshold below a converged row"};
    }
    if (tab.rows.empty() || tab.rows.front().lambda != 0.0 || !tab.rows.front().converged)
        return {false, "no converged zero-forcing row"};

    DiscreteProblem dp0 = dp;
    dp0.lambda = 0.0;
    const MultiStartResult res = multi_start_fixed_point(dp0, cfg);
    if (!res.success) return {false, "zero-forcing fixed point did not converge"};
    const double gap = std::abs(sup_norm(res.u) - tab.rows.front().sup_norm);
    if (gap > 1e-5) return {false, "zero-forcing rows disagree by " + fmt(gap)};
    return {true, "threshold " + fmt(tab.lambda_star) + ", bound " + fmt(tab.max_bound_observed) +
                      ", zero-forcing rows agree within " + fmt(gap)};
}

// ---- 13: sup-norm scaling across growing disks --------------------------------

std::pair<bool, std::string> check_liouville() {
    const double radii[] = {1.0, 2.0, 4.0, 8.0};
    const LiouvilleProbe probe = liouville_scaling_probe(2.0, 4.0, radii, 0.1);
    for (std::size_t i = 0; i < probe.converged.size(); ++i)
        if (!probe.converged[i]) return {false, "radius " + fmt(radii[i]) + " did not converge"};
    if (std::abs(probe.slope + 1.0) > 0.1) return {false, "slope " + fmt(probe.slope)};
    return {true, "slope " + fmt(probe.slope) + " (target -1 +/- 0.1), sup at R=1 " +
                      fmt(probe.sups.front())};
}

// ---- 14: byte-identical artifacts from repeated CLI runs ----------------------

int run_cli(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

bool same_bytes(const fs::path& a, const fs::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    if (!fa || !fb) return false;
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    return sa.str() == sb.str();
}

std::pair<bool, std::string> check_determinism(const std::string& cli, const fs::path& scratch) {
    if (cli.empty()) return {false, "no CLI binary path given"};
    fs::create_directories(scratch);
    const fs::path log = scratch / "cli_log.txt";

    std::ofstream(scratch / "p3.json") << R"({
        "mesh": {"shape": "interval", "a": -1.0, "b": 1.0, "h": 0.0078125},
        "young": {"kind": "power", "p": 3.0},
        "source": {"A": 0.0, "f": {"kind": "zero"}},
        "lambda": 1.0, "L": 0.0, "solver": {"tol": 1e-10}
    })";
    std::ofstream(scratch / "cubic.json") << R"({
        "mesh": {"shape": "interval", "a": 0.0, "b": 1.0, "h": 0.0078125},
        "young": {"kind": "power", "p": 2.0},
        "source": {"A": 1.0, "f": {"kind": "power", "e": 3.0}},
        "lambda": 0.0, "L": 1.0,
        "fixed_point": {"seed": 0}
    })";

    const auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
    int checked = 0;
    for (const auto& [tag, args] : {std::pair<std::string, std::string>
             {"solve", "solve --problem " + q(scratch / "p3.json")},
             {"fixed-point", "fixed-point --problem " + q(scratch / "cubic.json") + " --seed 42"}}) {
        const fs::path da = scratch / (tag + "_a"), db = scratch / (tag + "_b");
        for (const fs::path& d : {da, db}) {
            fs::remove_all(d);
            const int rc = run_cli("'" + cli + "' " + args + " --out " + q(d) + " >> " +
                                   q(log) + " 2>&1");
            if (rc != 0) return {false, tag + " exited with " + std::to_string(rc)};
        }
        for (const char* name : {"report.json", "field.csv", "trace.csv"}) {
            if (!same_bytes(da / name, db / name))
                return {false, tag + ": " + name + " differs between runs"};
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " artifacts byte-identical across repeated runs"};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const fs::path scratch =
        argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "glap_acceptance";

    run_check(1, "young-algebra-closed-forms", check_young_algebra);
    run_check(2, "derivative-band-consistency", check_band_consistency);
    run_check(3, "conjugate-pair-inequality", check_young_inequality);
    run_check(4, "gradient-scale-comparison", check_phi_comparison);
    run_check(5, "luxemburg-norms", check_luxemburg);
    run_check(6, "inner-solver-convergence", check_inner_solver);
    run_check(7, "solution-operator-positivity", check_positivity);
    run_check(8, "fixed-point-vs-shooting", check_fixed_point);
    run_check(9, "forcing-zoom-normalization", check_case2);
    run_check(10, "rescaled-g-limit", check_gk_limit);
    run_check(11, "rescaled-source-limit", check_bk_limit);
    run_check(12, "lambda-continuation", check_continuation);
    run_check(13, "disk-scaling-probe", check_liouville);
    run_check(14, "cli-determinism", [&] { return check_determinism(cli, scratch); });

    std::printf("acceptance: %d/14 passed\n", 14 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
