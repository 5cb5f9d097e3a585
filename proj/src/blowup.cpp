#include "glap/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "glap/gridutil.hpp"

namespace glap {

namespace {

double odd_pow(double t, double e) {
    if (t == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(t), e), t);
}

// Per-axis window of admissible centers, in original coordinates. Disks are
// clipped to the square inscribed in the boundary polygon so the truncated
// box never leaves the mesh.
std::array<std::array<double, 2>, 2> admissible_box(const Mesh& mesh) {
    if (mesh.shape == MeshShape::disk) {
        const double s =
            mesh.radius * std::cos(std::numbers::pi / mesh.sides) / std::numbers::sqrt2;
        return {{{-s, s}, {-s, s}}};
    }
    return {{{mesh.box_lo[0], mesh.box_hi[0]}, {mesh.box_lo[1], mesh.box_hi[1]}}};
}

}  // namespace

RescaleResult rescale(const Field& u, const DiscreteProblem& dp, bool use_case2, double lambda_k,
                      double box_halfwidth, int cells_per_axis) {
    const Mesh& mesh = dp.mesh;
    if (u.size() != mesh.vertices.size())
        throw std::invalid_argument("rescale: field size does not match mesh");
    if (!(box_halfwidth > 0.0))
        throw std::invalid_argument("rescale: box_halfwidth must be positive");

    RescaleResult rr;
    rr.case1 = !use_case2;
    const int vmax = argmax_abs(u);
    rr.M_k = std::abs(u[static_cast<std::size_t>(vmax)]);
    rr.x_k = mesh.vertices[static_cast<std::size_t>(vmax)];

    const auto box = admissible_box(mesh);
    if (use_case2) {
        rr.N_k = dp.source.f.inverse(lambda_k);
        bool origin_inside = true;
        for (int ax = 0; ax < mesh.dimension; ++ax)
            origin_inside = origin_inside && box[ax][0] < 0.0 && box[ax][1] > 0.0;
        if (origin_inside) {
            rr.y_k = {0.0, 0.0};
        } else {
            rr.centered_fallback = true;
            rr.y_k = {0.5 * (mesh.box_lo[0] + mesh.box_hi[0]),
                      0.5 * (mesh.box_lo[1] + mesh.box_hi[1])};
        }
    } else {
        if (!(rr.M_k > 0.0)) throw std::invalid_argument("rescale: field vanishes in case1");
        rr.N_k = rr.M_k;
        rr.y_k = rr.x_k;
    }
    if (!(rr.N_k > 0.0) || !std::isfinite(rr.N_k))
        throw std::runtime_error("rescale: scale N_k must be positive and finite");

    const double fN = dp.source.f(rr.N_k);
    if (!(fN > 0.0)) throw std::runtime_error("rescale: f(N_k) must be positive");
    rr.mu_k = lambda_k / fN;
    const ScalarFn f = [&src = dp.source](double t) { return src.f(t); };
    rr.phi_Nk = phi_implicit(dp.yf, f, rr.N_k);
    if (!(rr.phi_Nk > 0.0) || !std::isfinite(rr.phi_Nk))
        throw std::runtime_error("rescale: phi(N_k) not finite and positive");

    switch (mesh.shape) {
        case MeshShape::interval:
            rr.boundary_distance =
                std::min(rr.y_k[0] - mesh.box_lo[0], mesh.box_hi[0] - rr.y_k[0]);
            break;
        case MeshShape::rectangle:
            rr.boundary_distance =
                std::min(std::min(rr.y_k[0] - mesh.box_lo[0], mesh.box_hi[0] - rr.y_k[0]),
                         std::min(rr.y_k[1] - mesh.box_lo[1], mesh.box_hi[1] - rr.y_k[1]));
            break;
        case MeshShape::disk:
            rr.boundary_distance = mesh.radius - std::hypot(rr.y_k[0], rr.y_k[1]);
            break;
    }

    // Truncated rescaled window, snapped so the origin lands on a grid vertex
    // (this is what makes sup v = v(0) exact in case 1).
    const double sigma = rr.phi_Nk;
    const int cells = cells_per_axis > 0 ? cells_per_axis : (mesh.dimension == 1 ? 256 : 64);
    std::array<double, 2> lo{0.0, 0.0}, hi{0.0, 0.0};
    std::array<int, 2> nlo{0, 0}, nhi{0, 0};
    for (int ax = 0; ax < mesh.dimension; ++ax) {
        const double wlo = std::min(box_halfwidth, sigma * (rr.y_k[ax] - box[ax][0]));
        const double whi = std::min(box_halfwidth, sigma * (box[ax][1] - rr.y_k[ax]));
        if (!(wlo >= 0.0) || !(whi >= 0.0))
            throw std::runtime_error("rescale: center outside the admissible window");
        const double total = wlo + whi;
        if (!(total > 0.0)) throw std::runtime_error("rescale: empty rescaled window");
        const double h = total / cells;
        nlo[ax] = static_cast<int>(std::floor(wlo / h + 1e-9));
        nhi[ax] = static_cast<int>(std::floor(whi / h + 1e-9));
        if (nlo[ax] + nhi[ax] < 2) throw std::runtime_error("rescale: rescaled window collapsed");
        lo[ax] = -nlo[ax] * h;
        hi[ax] = nhi[ax] * h;
    }
    rr.rescaled_mesh = mesh.dimension == 1
                           ? build_interval(lo[0], hi[0], nlo[0] + nhi[0])
                           : build_rectangle(lo, hi, nlo[0] + nhi[0], nlo[1] + nhi[1]);

    std::vector<Point> pts(rr.rescaled_mesh.vertices.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] = {rr.y_k[0] + rr.rescaled_mesh.vertices[i][0] / sigma,
                  rr.y_k[1] + rr.rescaled_mesh.vertices[i][1] / sigma};
    }
    const auto vals = interpolate(mesh, u, pts);
    rr.v.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) rr.v[i] = vals[i].value / rr.N_k;
    return rr;
}

DeviationTable gk_limit_check(const YoungFunction& yf, const ScalarFunction& f,
                              std::span<const double> N_list, std::span<const double> t_grid) {
    if (N_list.empty() || t_grid.empty())
        throw std::invalid_argument("gk_limit_check: empty grids");
    const ScalarFn ff = [&f](double t) { return f(t); };
    DeviationTable tab;
    tab.scale.assign(N_list.begin(), N_list.end());
    std::vector<double> s_list;  // gradient scales N phi(N), where g_k lives
    s_list.reserve(N_list.size());
    for (double N : N_list) {
        if (!(N > 0.0)) throw std::invalid_argument("gk_limit_check: N must be positive");
        s_list.push_back(N * phi_implicit(yf, ff, N));
    }
    std::vector<double> t_pos;
    for (double t : t_grid)
        if (t > 0.0) t_pos.push_back(t);
    if (t_pos.size() < 2)
        throw std::invalid_argument("gk_limit_check: need at least two positive t samples");
    const RegVarResult rv = regvar_exponent(yf, s_list, t_pos);
    tab.p_hat = rv.p_hat;
    tab.deviation = rv.deviation_history;
    if (tab.deviation.size() >= 2)
        tab.plateau_flag =
            tab.deviation.back() > 1e-12 && tab.deviation.back() > 0.5 * tab.deviation.front();
    return tab;
}

DeviationTable bk_limit_check(const SourceTerm& st, const YoungFunction& yf,
                              std::span<const double> N_list, std::span<const double> t_grid,
                              std::span<const double> p_grid) {
    if (N_list.empty() || t_grid.empty() || p_grid.empty())
        throw std::invalid_argument("bk_limit_check: empty grids");
    const ScalarFn ff = [&st](double t) { return st.f(t); };
    // Offsets in rescaled coordinates; their originals x/phi(N) shrink to the
    // center, so the profile coefficient drifts to b(0).
    const std::array<Point, 5> offsets{{{0, 0}, {1, 0}, {5, 0}, {0, 1}, {1, 1}}};

    DeviationTable tab;
    for (double N : N_list) {
        if (!(N > 0.0)) throw std::invalid_argument("bk_limit_check: N must be positive");
        const double phi = phi_implicit(yf, ff, N);
        const double a = N * phi;  // gradient scale
        const double fN = st.f(N);
        if (!(fN > 0.0)) throw std::runtime_error("bk_limit_check: f(N) must be positive");
        tab.scale.push_back(N);
        double dev = 0.0;
        double ratio = 0.0;
        for (const Point& x : offsets) {
            const Point xo{x[0] / phi, x[1] / phi};
            const double bx = st.A * b_value(st, xo);
            for (double t : t_grid) {
                for (double p : p_grid) {
                    const Point grad{a * p, 0.0};
                    const double Bk = evaluate_B(st, xo, N * t, grad) / fN;
                    const double target = bx * odd_pow(t, st.q - 1.0);
                    dev = std::max(dev, std::abs(Bk - target));
                    const double denom = 1.0 + std::abs(st.f(std::abs(N * t))) / fN +
                                         std::abs(st.h(std::abs(a * p))) / fN;
                    ratio = std::max(ratio, std::abs(Bk) / denom);
                }
            }
        }
        tab.deviation.push_back(dev);
        tab.bound_ratio = std::max(tab.bound_ratio, ratio);
    }

    // Recovered exponent and coefficient at the largest scale, center, p = 0.
    {
        const double N = N_list.back();
        const double fN = st.f(N);
        std::vector<double> lt, lq, bs;
        for (double t : t_grid) {
            if (!(t > 0.0)) continue;
            const double Q = evaluate_B(st, {0.0, 0.0}, N * t, {0.0, 0.0}) / fN;
            if (Q > 0.0) {
                lt.push_back(std::log(t));
                lq.push_back(std::log(Q));
                bs.push_back(Q / (st.A * std::pow(t, st.q - 1.0)));
            }
        }
        if (lt.size() >= 2) tab.q_hat = lsq_fit(lt, lq).slope + 1.0;
        if (!bs.empty()) {
            double s = 0.0;
            for (double b : bs) s += b;
            tab.b_hat = s / static_cast<double>(bs.size());
        }
    }
    if (tab.deviation.size() >= 2)
        tab.plateau_flag =
            tab.deviation.back() > 1e-12 && tab.deviation.back() > 0.5 * tab.deviation.front();
    return tab;
}

namespace {

struct Attempt {
    ContinuationRow row;
    Field solution;
};

// One continuation step: up to 4 starts (warm first when available, then bump
// heights). Prefers a nontrivial converged solution; a run that collapses to
// the trivial branch still counts as converged when nothing better shows up.
Attempt continuation_attempt(const DiscreteProblem& dp_base, double lam, const Field* warm,
                             const FixedPointConfig& cfg) {
    DiscreteProblem dp = dp_base;
    dp.lambda = lam;
    dp.solver.enforce_positive = true;
    std::vector<Field> starts;
    if (warm) starts.push_back(*warm);
    for (std::size_t ai = 0; ai < cfg.amplitudes.size() && starts.size() < 4; ++ai)
        starts.push_back(bump_field(dp_base.mesh, cfg.amplitudes[ai]));

    Attempt att;
    att.row.lambda = lam;
    bool have_trivial = false;
    Field trivial;
    double trivial_sup = 0.0;
    int trivial_iters = 0;
    for (const Field& s0 : starts) {
        std::pair<Field, SolveReport> out;
        try {
            out = direct_solve(dp, s0, dp.solver.tol);
        } catch (const std::exception&) {
            continue;  // singular linearization or overflow: a failed start
        }
        att.row.iterations += out.second.iterations;
        if (!out.second.converged) continue;
        if (out.second.final_sup_norm > cfg.r) {
            att.row.converged = true;
            att.row.sup_norm = out.second.final_sup_norm;
            att.solution = std::move(out.first);
            return att;
        }
        if (!have_trivial) {
            have_trivial = true;
            trivial = std::move(out.first);
            trivial_sup = out.second.final_sup_norm;
            trivial_iters = att.row.iterations;
        }
    }
    if (have_trivial) {
        att.row.converged = true;
        att.row.sup_norm = trivial_sup;
        att.row.iterations = trivial_iters;
        att.solution = std::move(trivial);
    }
    return att;
}

}  // namespace

ContinuationTable lambda_continuation(const DiscreteProblem& dp_base,
                                      std::span<const double> lambda_grid,
                                      const FixedPointConfig& cfg) {
    if (lambda_grid.empty()) throw std::invalid_argument("lambda_continuation: empty grid");
    for (std::size_t i = 1; i < lambda_grid.size(); ++i)
        if (!(lambda_grid[i] > lambda_grid[i - 1]))
            throw std::invalid_argument("lambda_continuation: grid must be strictly increasing");
    validate(cfg);

    ContinuationTable tab;
    Field warm;
    bool have_warm = false;
    Field bracket_sol;
    int first_fail = -1;
    int last_ok_before_fail = -1;

    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        Attempt att =
            continuation_attempt(dp_base, lambda_grid[i], have_warm ? &warm : nullptr, cfg);
        if (att.row.converged) {
            warm = att.solution;
            have_warm = true;
            tab.max_bound_observed =
                std::max(tab.max_bound_observed, att.row.sup_norm + att.row.lambda);
            if (first_fail < 0) {
                last_ok_before_fail = static_cast<int>(i);
                bracket_sol = warm;
            }
        } else if (first_fail < 0) {
            first_fail = static_cast<int>(i);
        }
        tab.rows.push_back(att.row);
    }

    if (first_fail < 0) {
        tab.lambda_star = std::numeric_limits<double>::infinity();
        return tab;
    }
    if (last_ok_before_fail < 0) {
        tab.lambda_star = lambda_grid.front();  // nothing ever converged
        return tab;
    }

    double lam_ok = lambda_grid[static_cast<std::size_t>(last_ok_before_fail)];
    double lam_bad = lambda_grid[static_cast<std::size_t>(first_fail)];
    warm = bracket_sol;
    for (int step = 0; step < 6; ++step) {
        const double mid = 0.5 * (lam_ok + lam_bad);
        Attempt att = continuation_attempt(dp_base, mid, &warm, cfg);
        tab.refinement.push_back(att.row);
        if (att.row.converged) {
            lam_ok = mid;
            warm = att.solution;
            tab.max_bound_observed =
                std::max(tab.max_bound_observed, att.row.sup_norm + att.row.lambda);
        } else {
            lam_bad = mid;
        }
    }
    tab.lambda_star = 0.5 * (lam_ok + lam_bad);
    // Keep the estimate above every lambda that actually converged.
    for (const ContinuationRow& row : tab.rows)
        if (row.converged) tab.lambda_star = std::max(tab.lambda_star, row.lambda);
    return tab;
}

LiouvilleProbe liouville_scaling_probe(double p, double q, std::span<const double> radii,
                                       double h_target, double tol) {
    if (radii.size() < 2) throw std::invalid_argument("liouville probe: need at least two radii");
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]) || !(radii[0] > 0.0))
            throw std::invalid_argument("liouville probe: radii must be positive increasing");
    if (!(q > p)) throw std::invalid_argument("liouville probe: needs superlinear q > p");
    if (!(h_target > 0.0)) throw std::invalid_argument("liouville probe: h_target must be positive");

    const double t_hi = 1e6;
    DiscreteProblem dp;
    dp.yf = YoungFunction::make_power(p, {1e-6, t_hi});
    dp.source.f = ScalarFunction::power(q - 1.0);
    dp.source.q = q;
    dp.solver.enforce_positive = true;
    dp.solver.tol = tol;

    LiouvilleProbe probe;
    Mesh prev_mesh;
    Field prev_u;
    double prev_R = 0.0;
    bool have_prev = false;
    const double scale_exp = -p / (q - p);

    for (double R : radii) {
        const int rings = std::clamp(static_cast<int>(std::lround(R / h_target)), 6, 512);
        const int sides = std::clamp(
            static_cast<int>(std::lround(2.0 * std::numbers::pi * R / h_target)), 24, 768);
        dp.mesh = build_disk(R, rings, sides);

        Field u;
        SolveReport rep;
        if (have_prev) {
            // Exact continuum scaling map: u_R(x) = (R/R0)^{-p/(q-p)} u_{R0}(x R0/R).
            const double s = R / prev_R;
            const double amp = std::pow(s, scale_exp);
            std::vector<Point> pts(dp.mesh.vertices.size());
            for (std::size_t i = 0; i < pts.size(); ++i)
                pts[i] = {dp.mesh.vertices[i][0] / s, dp.mesh.vertices[i][1] / s};
            // Loose clamp: polygon boundaries of the two disks do not nest
            // exactly; the chord sagitta is ~1/(8 rings) in barycentric units.
            const auto vals = interpolate(prev_mesh, prev_u, pts, 5e-2);
            u.resize(pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i) u[i] = amp * vals[i].value;
            std::tie(u, rep) = direct_solve(dp, u, tol);
        } else {
            for (double amp : {1.0, 3.0, 5.0, 10.0}) {
                std::tie(u, rep) = direct_solve(dp, bump_field(dp.mesh, amp), tol);
                if (rep.converged && rep.final_sup_norm > 1e-2) break;
            }
        }
        probe.radii.push_back(R);
        probe.sups.push_back(rep.final_sup_norm);
        const bool ok = rep.converged && rep.final_sup_norm > 1e-2;
        probe.converged.push_back(ok);
        if (ok) {
            prev_mesh = dp.mesh;
            prev_u = u;
            prev_R = R;
            have_prev = true;
        }
    }

    // Fit excludes the smallest radius (boundary-layer pollution).
    std::vector<double> lx, ly;
    for (std::size_t i = 1; i < probe.radii.size(); ++i)
        if (probe.converged[i]) {
            lx.push_back(std::log(probe.radii[i]));
            ly.push_back(std::log(probe.sups[i]));
        }
    probe.slope = lx.size() >= 2 ? lsq_fit(lx, ly).slope : std::numeric_limits<double>::quiet_NaN();
    return probe;
}

}  // namespace glap
