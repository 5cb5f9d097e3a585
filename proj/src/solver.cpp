#include "glap/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace glap {

namespace {

double sgn(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

// Per-element P1 basis gradients (constant). 1D elements use slot [0..1].
struct ElemBasis {
    std::array<std::array<double, 2>, 3> gphi{};
    int nv = 3;
};

std::vector<ElemBasis> basis_gradients(const Mesh& mesh) {
    std::vector<ElemBasis> out(mesh.elements.size());
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& el = mesh.elements[e];
        ElemBasis b;
        if (mesh.dimension == 1) {
            const double h = mesh.vertices[el[1]][0] - mesh.vertices[el[0]][0];
            b.nv = 2;
            b.gphi[0] = {-1.0 / h, 0.0};
            b.gphi[1] = {1.0 / h, 0.0};
        } else {
            const double twoA = 2.0 * mesh.element_measures[e];
            for (int i = 0; i < 3; ++i) {
                const auto& pa = mesh.vertices[el[(i + 1) % 3]];
                const auto& pb = mesh.vertices[el[(i + 2) % 3]];
                b.gphi[i] = {(pa[1] - pb[1]) / twoA, (pb[0] - pa[0]) / twoA};
            }
        }
        out[e] = b;
    }
    return out;
}

void enforce_boundary(const Mesh& mesh, Field& u) {
    for (std::size_t v = 0; v < u.size(); ++v)
        if (mesh.boundary[v]) u[v] = 0.0;
}

void check_field(const Mesh& mesh, const Field& u, const char* what) {
    if (u.size() != mesh.vertices.size())
        throw std::invalid_argument(std::string(what) + ": field size mismatch");
    for (std::size_t v = 0; v < u.size(); ++v)
        if (!std::isfinite(u[v]))
            throw std::runtime_error(std::string(what) + ": non-finite value at node " +
                                     std::to_string(v));
}

using Sparse = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Gradient-part residual contribution into r, and (optionally) Hessian
// triplets for the flux Jacobian  c1 I + c2 w w^T.
void assemble_flux(const DiscreteProblem& dp, const std::vector<ElemBasis>& basis, const Field& u,
                   Field& r, std::vector<Triplet>* trips) {
    const Mesh& mesh = dp.mesh;
    const double eps = dp.solver.epsilon;
    const auto grads = gradient_per_element(mesh, u);
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& el = mesh.elements[e];
        const auto& b = basis[e];
        const double meas = mesh.element_measures[e];
        const auto& w = grads[e];
        const double s = std::sqrt(w[0] * w[0] + w[1] * w[1] + eps * eps);
        const double gs = evaluate(dp.yf, YoungEval::g, s);
        const double c1 = gs / s;
        for (int a = 0; a < b.nv; ++a)
            r[el[a]] += meas * c1 * (w[0] * b.gphi[a][0] + w[1] * b.gphi[a][1]);
        if (trips) {
            const double gps = evaluate(dp.yf, YoungEval::gprime, s);
            const double c2 = (gps - c1) / (s * s);
            for (int a = 0; a < b.nv; ++a) {
                const int va = el[a];
                if (mesh.boundary[va]) continue;
                const double Mwa = c1 * b.gphi[a][0] + c2 * w[0] *
                                       (w[0] * b.gphi[a][0] + w[1] * b.gphi[a][1]);
                const double Mwa2 = c1 * b.gphi[a][1] + c2 * w[1] *
                                        (w[0] * b.gphi[a][0] + w[1] * b.gphi[a][1]);
                for (int c = 0; c < b.nv; ++c) {
                    const int vc = el[c];
                    if (mesh.boundary[vc]) continue;
                    trips->emplace_back(
                        vc, va, meas * (Mwa * b.gphi[c][0] + Mwa2 * b.gphi[c][1]));
                }
            }
        }
    }
}

Field residual_impl(const DiscreteProblem& dp, const std::vector<ElemBasis>& basis, const Field& u,
                    const Field* psi, ResidualMode mode,
                    const std::vector<std::array<double, 2>>* vgrads) {
    const Mesh& mesh = dp.mesh;
    Field r(u.size(), 0.0);
    assemble_flux(dp, basis, u, r, nullptr);
    if (mode == ResidualMode::inner) {
        for (std::size_t v = 0; v < u.size(); ++v) {
            const double lg = dp.L * evaluate(dp.yf, YoungEval::g, std::abs(u[v])) * sgn(u[v]);
            r[v] += mesh.vertex_masses[v] * (lg - (psi ? (*psi)[v] : 0.0));
        }
    } else {
        std::vector<std::array<double, 2>> local;
        if (!vgrads) {
            local = vertex_gradients(mesh, u);
            vgrads = &local;
        }
        for (std::size_t v = 0; v < u.size(); ++v) {
            const double B =
                evaluate_B(dp.source, mesh.vertices[v], u[v], (*vgrads)[v]);
            r[v] -= mesh.vertex_masses[v] * (B + dp.lambda);
        }
    }
    for (std::size_t v = 0; v < u.size(); ++v)
        if (mesh.boundary[v]) r[v] = u[v];
    for (std::size_t v = 0; v < r.size(); ++v)
        if (!std::isfinite(r[v]))
            throw std::runtime_error("residual: non-finite entry at node " + std::to_string(v));
    return r;
}

struct LinearSolveResult {
    Field d;
    bool ok = false;
};

LinearSolveResult solve_spd(const Mesh& mesh, std::vector<Triplet>& trips, const Field& rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int v = 0; v < n; ++v)
        if (mesh.boundary[v]) trips.emplace_back(v, v, 1.0);
    Sparse H(n, n);
    H.setFromTriplets(trips.begin(), trips.end());
    Eigen::VectorXd b(n);
    for (int v = 0; v < n; ++v) b[v] = -rhs[v];

    LinearSolveResult res;
    double shift = 0.0;
    for (int attempt = 0; attempt < 6; ++attempt) {
        Sparse Hs = H;
        if (shift > 0.0) {
            Sparse I(n, n);
            I.setIdentity();
            Hs = H + shift * I;
        }
        Eigen::SimplicialLDLT<Sparse> ldlt(Hs);
        if (ldlt.info() == Eigen::Success) {
            Eigen::VectorXd x = ldlt.solve(b);
            if (ldlt.info() == Eigen::Success && x.allFinite()) {
                res.d.assign(x.data(), x.data() + n);
                res.ok = true;
                return res;
            }
        }
        shift = shift == 0.0 ? 1e-10 : shift * 100.0;
    }
    return res;
}

LinearSolveResult solve_lu(const Mesh& mesh, std::vector<Triplet>& trips, const Field& rhs) {
    const int n = static_cast<int>(rhs.size());
    for (int v = 0; v < n; ++v)
        if (mesh.boundary[v]) trips.emplace_back(v, v, 1.0);
    Sparse H(n, n);
    H.setFromTriplets(trips.begin(), trips.end());
    H.makeCompressed();
    Eigen::VectorXd b(n);
    for (int v = 0; v < n; ++v) b[v] = -rhs[v];

    LinearSolveResult res;
    Eigen::SparseLU<Sparse> lu;
    lu.analyzePattern(H);
    lu.factorize(H);
    if (lu.info() != Eigen::Success) return res;
    Eigen::VectorXd x = lu.solve(b);
    if (!x.allFinite()) return res;
    res.d.assign(x.data(), x.data() + n);
    res.ok = true;
    return res;
}

}  // namespace

Field residual(const DiscreteProblem& dp, const Field& u, const Field* psi, ResidualMode mode) {
    check_field(dp.mesh, u, "residual");
    Field uu = u;
    enforce_boundary(dp.mesh, uu);
    const auto basis = basis_gradients(dp.mesh);
    return residual_impl(dp, basis, uu, psi, mode, nullptr);
}

double residual_dual_norm(const DiscreteProblem& dp, const Field& r) {
    double acc = 0.0;
    for (std::size_t v = 0; v < r.size(); ++v)
        if (!dp.mesh.boundary[v]) acc += r[v] * r[v];
    return std::sqrt(acc);
}

double energy(const DiscreteProblem& dp, const Field& u, const Field& psi) {
    const Mesh& mesh = dp.mesh;
    const double eps = dp.solver.epsilon;
    const auto grads = gradient_per_element(mesh, u);
    double E = 0.0;
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& w = grads[e];
        const double s = std::sqrt(w[0] * w[0] + w[1] * w[1] + eps * eps);
        E += mesh.element_measures[e] * evaluate(dp.yf, YoungEval::G, s);
    }
    for (std::size_t v = 0; v < u.size(); ++v)
        E += mesh.vertex_masses[v] *
             (dp.L * evaluate(dp.yf, YoungEval::G, std::abs(u[v])) - psi[v] * u[v]);
    return E;
}

std::pair<Field, SolveReport> inner_solve(const DiscreteProblem& dp, const Field& psi,
                                          double tol) {
    const auto t_start = std::chrono::steady_clock::now();
    const Mesh& mesh = dp.mesh;
    check_field(mesh, psi, "inner_solve psi");
    const auto basis = basis_gradients(mesh);
    const double eps = dp.solver.epsilon;

    Field u(mesh.vertices.size(), 0.0);
    SolveReport rep;
    double E = energy(dp, u, psi);

    for (int it = 0; it < dp.solver.max_newton; ++it) {
        const Field r = residual_impl(dp, basis, u, &psi, ResidualMode::inner, nullptr);
        const double rn = residual_dual_norm(dp, r);
        rep.residual_history.push_back(rn);
        rep.energy_history.push_back(E);
        rep.iterations = it;
        if (rn <= tol) {
            rep.converged = true;
            break;
        }

        std::vector<Triplet> trips;
        trips.reserve(mesh.elements.size() * 9 + mesh.vertices.size());
        Field rg(u.size(), 0.0);
        assemble_flux(dp, basis, u, rg, &trips);
        for (std::size_t v = 0; v < u.size(); ++v) {
            if (mesh.boundary[v]) continue;
            const double d2 =
                dp.L * evaluate(dp.yf, YoungEval::gprime, std::hypot(u[v], eps));
            trips.emplace_back(static_cast<int>(v), static_cast<int>(v),
                               mesh.vertex_masses[v] * d2);
        }
        auto lin = solve_spd(mesh, trips, r);
        if (!lin.ok) {
            rep.message = "linear solve failed";
            break;
        }

        // r is the energy gradient and d solves H d = -r, so descent needs r.d < 0
        double slope = 0.0;
        for (std::size_t v = 0; v < u.size(); ++v) slope += r[v] * lin.d[v];
        if (slope >= 0.0) {
            rep.message = "no descent direction at numerical precision";
            break;
        }
        double step = 1.0;
        Field trial(u.size());
        bool accepted = false;
        while (step >= 1e-14) {
            for (std::size_t v = 0; v < u.size(); ++v) trial[v] = u[v] + step * lin.d[v];
            const double Et = energy(dp, trial, psi);
            if (Et <= E + 1e-4 * step * slope) {
                u = trial;
                E = Et;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            rep.message = "line search stalled";
            break;
        }
        double du = 0.0;
        for (std::size_t v = 0; v < u.size(); ++v) du = std::max(du, std::abs(step * lin.d[v]));
        if (du <= 1e-15 * std::max(1.0, sup_norm(u))) {
            rep.message = "update below numerical precision";
            break;
        }
    }
    rep.final_residual = rep.residual_history.empty() ? 0.0 : rep.residual_history.back();
    if (rep.converged && rep.residual_history.back() > tol) rep.converged = false;
    if (!rep.converged && rep.message.empty()) rep.message = "max Newton iterations reached";
    rep.final_sup_norm = sup_norm(u);
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                        .count();
    return {u, rep};
}

std::pair<Field, SolveReport> direct_solve(const DiscreteProblem& dp, const Field& u0,
                                           double tol) {
    const auto t_start = std::chrono::steady_clock::now();
    const Mesh& mesh = dp.mesh;
    check_field(mesh, u0, "direct_solve u0");
    const auto basis = basis_gradients(mesh);

    Field u = u0;
    enforce_boundary(mesh, u);
    if (dp.solver.enforce_positive)
        for (double& v : u) v = std::max(v, 0.0);

    SolveReport rep;
    auto vg = vertex_gradients(mesh, u);
    Field r = residual_impl(dp, basis, u, nullptr, ResidualMode::direct, &vg);
    double rn = residual_dual_norm(dp, r);

    for (int it = 0; it < dp.solver.max_newton; ++it) {
        rep.residual_history.push_back(rn);
        rep.iterations = it;
        if (rn <= tol) {
            rep.converged = true;
            break;
        }
        if (rn > dp.solver.escape_residual || sup_norm(u) > dp.solver.escape_sup) {
            rep.escaped = true;
            rep.message = "iterate escaped the trust region";
            break;
        }

        std::vector<Triplet> trips;
        trips.reserve(mesh.elements.size() * 9 + mesh.vertices.size());
        Field rg(u.size(), 0.0);
        assemble_flux(dp, basis, u, rg, &trips);
        // zeroth-order Jacobian: -m_v dB/dt (the dB/dp block is dropped; the
        // damped line search absorbs the model error)
        for (std::size_t v = 0; v < u.size(); ++v) {
            if (mesh.boundary[v]) continue;
            const double dB = dB_dt(dp.source, mesh.vertices[v], u[v], vg[v]);
            trips.emplace_back(static_cast<int>(v), static_cast<int>(v),
                               -mesh.vertex_masses[v] * dB);
        }
        auto lin = solve_lu(mesh, trips, r);
        if (!lin.ok) {
            rep.message = "linear solve failed";
            break;
        }

        double step = 1.0;
        Field trial(u.size());
        bool accepted = false;
        while (step >= 1e-14) {
            for (std::size_t v = 0; v < u.size(); ++v) trial[v] = u[v] + step * lin.d[v];
            if (dp.solver.enforce_positive)
                for (std::size_t v = 0; v < trial.size(); ++v) trial[v] = std::max(trial[v], 0.0);
            auto vg_t = vertex_gradients(mesh, trial);
            Field r_t;
            try {
                r_t = residual_impl(dp, basis, trial, nullptr, ResidualMode::direct, &vg_t);
            } catch (const std::runtime_error&) {
                step *= 0.5;
                continue;
            }
            const double rn_t = residual_dual_norm(dp, r_t);
            if (rn_t <= (1.0 - 1e-4 * step) * rn) {
                u = trial;
                vg = vg_t;
                r = r_t;
                rn = rn_t;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            rep.message = "line search stalled";
            break;
        }
    }
    rep.final_residual = rn;
    if (!rep.converged && rep.message.empty()) rep.message = "max Newton iterations reached";
    rep.final_sup_norm = sup_norm(u);
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
                        .count();
    return {u, rep};
}

}  // namespace glap
