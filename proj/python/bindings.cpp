#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "glap/io.hpp"

namespace py = pybind11;
using namespace glap;

namespace {

const std::array<double, 2> default_dom{1e-3, 1e3};

}  // namespace

PYBIND11_MODULE(_glap, m) {
    m.doc() = "Dirichlet problems driven by the g-Laplace operator";

    // ---- Young functions ----
    py::class_<YoungFunction>(m, "YoungFunction")
        .def_static("power", &YoungFunction::make_power, py::arg("p"),
                    py::arg("dom") = default_dom)
        .def_static("plog", &YoungFunction::make_plog, py::arg("p"), py::arg("alpha"),
                    py::arg("dom") = default_dom)
        .def_static("double_power", &YoungFunction::make_double_power, py::arg("p"), py::arg("q"),
                    py::arg("dom") = default_dom)
        .def_static("tabulated", &YoungFunction::make_tabulated, py::arg("t"), py::arg("g"),
                    py::arg("dom") = std::array<double, 2>{0, 0})
        .def_readonly("p", &YoungFunction::p)
        .def_readonly("alpha", &YoungFunction::alpha)
        .def_readonly("q", &YoungFunction::q)
        .def_readwrite("eval_domain", &YoungFunction::eval_domain)
        .def("G", [](const YoungFunction& yf, double t) { return G_of(yf, t); })
        .def("g", [](const YoungFunction& yf, double t) { return g_of(yf, t); })
        .def("gprime", [](const YoungFunction& yf, double t) { return gprime_of(yf, t); })
        .def("inverse_G", [](const YoungFunction& yf, double y) { return inverse_G(yf, y); })
        .def("complementary",
             [](const YoungFunction& yf, double t) { return complementary(yf, t); });

    m.def(
        "validate_young", [](const YoungFunction& yf, int n) { validate(yf, n); }, py::arg("yf"),
        py::arg("n_samples") = 64);

    py::class_<LiebermanBands>(m, "LiebermanBands")
        .def_readonly("p_minus_hat", &LiebermanBands::p_minus_hat)
        .def_readonly("p_plus_hat", &LiebermanBands::p_plus_hat)
        .def_readonly("ratio2_min", &LiebermanBands::ratio2_min)
        .def_readonly("ratio2_max", &LiebermanBands::ratio2_max);
    m.def("lieberman_exponents", &lieberman_exponents, py::arg("yf"), py::arg("n_samples") = 600);
    m.def("delta2_constant", &delta2_constant, py::arg("yf"), py::arg("n_samples") = 600);

    py::class_<RegVarResult>(m, "RegVarResult")
        .def_readonly("p_hat", &RegVarResult::p_hat)
        .def_readonly("deviation_history", &RegVarResult::deviation_history)
        .def_readonly("not_regularly_varying_warning",
                      &RegVarResult::not_regularly_varying_warning);
    m.def(
        "regvar_exponent",
        [](const YoungFunction& yf, std::vector<double> s, std::vector<double> t) {
            return regvar_exponent(yf, s, t);
        },
        py::arg("yf"), py::arg("s_list"), py::arg("t_grid"));

    py::class_<ExponentReport>(m, "ExponentReport")
        .def_readonly("p_minus_hat", &ExponentReport::p_minus_hat)
        .def_readonly("p_plus_hat", &ExponentReport::p_plus_hat)
        .def_readonly("delta2_constant", &ExponentReport::delta2_constant)
        .def_readonly("regvar_p_hat", &ExponentReport::regvar_p_hat)
        .def_readonly("sample_range", &ExponentReport::sample_range)
        .def_readonly("n_samples", &ExponentReport::n_samples);
    m.def("exponent_report", &exponent_report, py::arg("yf"), py::arg("n_samples") = 600);

    m.def("phi_implicit", &phi_implicit, py::arg("yf"), py::arg("f"), py::arg("t"));
    m.def("varphi", &varphi, py::arg("yf"), py::arg("f"), py::arg("t"));
    py::class_<PhiComparison>(m, "PhiComparison")
        .def_readonly("k_minus_hat", &PhiComparison::k_minus_hat)
        .def_readonly("k_plus_hat", &PhiComparison::k_plus_hat);
    m.def("phi_ratio_bounds", &phi_ratio_bounds, py::arg("yf"), py::arg("f"), py::arg("t_min"),
          py::arg("t_max"), py::arg("n_samples") = 200);
    m.def("young_inequality_constant", &young_inequality_constant, py::arg("yf"),
          py::arg("n_samples") = 160);

    // ---- scalar profiles and sources ----
    py::class_<ScalarFunction>(m, "ScalarFunction")
        .def_static("zero", &ScalarFunction::zero)
        .def_static("power", &ScalarFunction::power, py::arg("exponent"), py::arg("coef") = 1.0)
        .def_static("expfn", &ScalarFunction::expfn, py::arg("coef") = 1.0)
        .def_readonly("exponent", &ScalarFunction::exponent)
        .def_readonly("coef", &ScalarFunction::coef)
        .def("__call__", &ScalarFunction::operator())
        .def("derivative", &ScalarFunction::derivative)
        .def("inverse", &ScalarFunction::inverse)
        .def("is_zero", &ScalarFunction::is_zero);

    py::class_<SourceTerm>(m, "SourceTerm")
        .def(py::init<>())
        .def_readwrite("A", &SourceTerm::A)
        .def_readwrite("f", &SourceTerm::f)
        .def_readwrite("f0", &SourceTerm::f0)
        .def_readwrite("h", &SourceTerm::h)
        .def_readwrite("b_expr", &SourceTerm::b_expr)
        .def_readwrite("q", &SourceTerm::q)
        .def_readwrite("K", &SourceTerm::K)
        .def_readwrite("L", &SourceTerm::L)
        .def_readwrite("M0", &SourceTerm::M0)
        .def_readwrite("evaluate_override", &SourceTerm::evaluate_override);
    m.def("evaluate_B", &evaluate_B, py::arg("source"), py::arg("x"), py::arg("t"), py::arg("p"));
    m.def("b_value", &b_value, py::arg("source"), py::arg("x"));

    py::class_<ConditionReport>(m, "ConditionReport")
        .def_readonly("condition_id", &ConditionReport::condition_id)
        .def_readonly("passed", &ConditionReport::passed)
        .def_readonly("warning", &ConditionReport::warning)
        .def_readonly("details", &ConditionReport::details)
        .def_readonly("metrics", &ConditionReport::metrics)
        .def_readonly("witness", &ConditionReport::witness);
    m.def(
        "check_growth",
        [](const SourceTerm& st, const YoungFunction& yf) { return check_growth(st, yf); },
        py::arg("source"), py::arg("yf"));
    m.def(
        "check_fG",
        [](const SourceTerm& st, const YoungFunction& yf, std::vector<double> c,
           std::array<double, 2> t_range, int n_t) { return check_fG(st, yf, c, t_range, n_t); },
        py::arg("source"), py::arg("yf"), py::arg("C_list"),
        py::arg("t_range") = std::array<double, 2>{1e-3, 1e3}, py::arg("n_t") = 400);
    m.def("check_eti1", &check_eti1, py::arg("source"), py::arg("yf"), py::arg("s0"),
          py::arg("s_max") = 1e4, py::arg("n_s") = 25, py::arg("t_max") = 1e2,
          py::arg("n_t") = 41);
    m.def(
        "check_limit_profile",
        [](const SourceTerm& st, const YoungFunction& yf, std::vector<double> m_list,
           std::vector<double> t_grid, std::vector<double> p_grid, std::vector<Point> xs,
           double a_prefactor) {
            return check_limit_profile(st, yf, m_list, t_grid, p_grid, xs, a_prefactor);
        },
        py::arg("source"), py::arg("yf"), py::arg("M_list"), py::arg("t_grid"), py::arg("p_grid"),
        py::arg("x_samples"), py::arg("a_prefactor") = 1.0);
    m.def("check_PS", &check_PS, py::arg("source"), py::arg("yf"), py::arg("k_max") = 20,
          py::arg("x_samples") = std::vector<Point>{{0, 0}}, py::arg("s_threshold") = 1e-3);
    m.def("check_subcritical", &check_subcritical, py::arg("q"), py::arg("p"), py::arg("n"));

    // ---- meshes and fields ----
    py::class_<Mesh>(m, "Mesh")
        .def_readonly("dimension", &Mesh::dimension)
        .def_readonly("vertices", &Mesh::vertices)
        .def_readonly("elements", &Mesh::elements)
        .def_readonly("boundary", &Mesh::boundary)
        .def_readonly("element_measures", &Mesh::element_measures)
        .def_readonly("vertex_masses", &Mesh::vertex_masses)
        .def_readonly("box_lo", &Mesh::box_lo)
        .def_readonly("box_hi", &Mesh::box_hi)
        .def_readonly("radius", &Mesh::radius)
        .def_readonly("sides", &Mesh::sides);
    m.def("build_interval", &build_interval, py::arg("a"), py::arg("b"), py::arg("n_cells"));
    m.def("build_rectangle", &build_rectangle, py::arg("lo"), py::arg("hi"), py::arg("nx"),
          py::arg("ny"));
    m.def("build_disk", &build_disk, py::arg("radius"), py::arg("rings"), py::arg("sides"));
    m.def("modular", &modular, py::arg("mesh"), py::arg("yf"), py::arg("u"), py::arg("gradient"));
    m.def("luxemburg_norm", &luxemburg_norm, py::arg("mesh"), py::arg("yf"), py::arg("u"),
          py::arg("gradient"));
    m.def("sup_norm", &sup_norm, py::arg("u"));
    m.def(
        "interpolate",
        [](const Mesh& mesh, const Field& u, std::vector<Point> pts, double clamp_tol) {
            const auto vals = interpolate(mesh, u, pts, clamp_tol);
            std::vector<double> out;
            out.reserve(vals.size());
            bool clamped = false;
            for (const auto& v : vals) {
                out.push_back(v.value);
                clamped = clamped || v.clamped;
            }
            return py::make_tuple(out, clamped);
        },
        py::arg("mesh"), py::arg("u"), py::arg("points"), py::arg("clamp_tol") = 1e-6);

    // ---- solver ----
    py::class_<SolverParams>(m, "SolverParams")
        .def(py::init<>())
        .def_readwrite("epsilon", &SolverParams::epsilon)
        .def_readwrite("tol", &SolverParams::tol)
        .def_readwrite("max_newton", &SolverParams::max_newton)
        .def_readwrite("escape_sup", &SolverParams::escape_sup)
        .def_readwrite("escape_residual", &SolverParams::escape_residual)
        .def_readwrite("enforce_positive", &SolverParams::enforce_positive);
    py::class_<DiscreteProblem>(m, "DiscreteProblem")
        .def(py::init<>())
        .def_readwrite("mesh", &DiscreteProblem::mesh)
        .def_readwrite("yf", &DiscreteProblem::yf)
        .def_readwrite("source", &DiscreteProblem::source)
        .def_readwrite("lam", &DiscreteProblem::lambda)
        .def_readwrite("L", &DiscreteProblem::L)
        .def_readwrite("solver", &DiscreteProblem::solver);
    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("converged", &SolveReport::converged)
        .def_readonly("escaped", &SolveReport::escaped)
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("residual_history", &SolveReport::residual_history)
        .def_readonly("energy_history", &SolveReport::energy_history)
        .def_readonly("final_residual", &SolveReport::final_residual)
        .def_readonly("final_sup_norm", &SolveReport::final_sup_norm)
        .def_readonly("message", &SolveReport::message);
    m.def("energy", &energy, py::arg("dp"), py::arg("u"), py::arg("psi"));
    m.def("inner_solve", &inner_solve, py::arg("dp"), py::arg("psi"), py::arg("tol"));
    m.def("direct_solve", &direct_solve, py::arg("dp"), py::arg("u0"), py::arg("tol"));

    // ---- fixed point ----
    py::enum_<Outcome>(m, "Outcome")
        .value("converged", Outcome::converged)
        .value("escaped_R", Outcome::escaped_R)
        .value("collapsed_to_zero", Outcome::collapsed_to_zero)
        .value("max_iters", Outcome::max_iters);
    py::class_<FixedPointConfig>(m, "FixedPointConfig")
        .def(py::init<>())
        .def_readwrite("omega", &FixedPointConfig::omega)
        .def_readwrite("homotopy_t", &FixedPointConfig::homotopy_t)
        .def_readwrite("lambda0", &FixedPointConfig::lambda0)
        .def_readwrite("r", &FixedPointConfig::r)
        .def_readwrite("R", &FixedPointConfig::R)
        .def_readwrite("max_outer", &FixedPointConfig::max_outer)
        .def_readwrite("tol_outer", &FixedPointConfig::tol_outer)
        .def_readwrite("inner_tol", &FixedPointConfig::inner_tol)
        .def_readwrite("amplitudes", &FixedPointConfig::amplitudes)
        .def_readwrite("seed", &FixedPointConfig::seed)
        .def_readwrite("jitter", &FixedPointConfig::jitter);
    py::class_<IterationRecord>(m, "IterationRecord")
        .def_readonly("iter", &IterationRecord::iter)
        .def_readonly("sup_norm", &IterationRecord::sup_norm)
        .def_readonly("c1_norm", &IterationRecord::c1_norm)
        .def_readonly("update_norm", &IterationRecord::update_norm)
        .def_readonly("inner_iterations", &IterationRecord::inner_iterations)
        .def_readonly("inner_converged", &IterationRecord::inner_converged);
    py::class_<IterationTrace>(m, "IterationTrace")
        .def_readonly("records", &IterationTrace::records)
        .def_readonly("outcome", &IterationTrace::outcome)
        .def_readonly("inner_failure", &IterationTrace::inner_failure)
        .def_readonly("clip_count", &IterationTrace::clip_count)
        .def_readonly("final_weak_residual", &IterationTrace::final_weak_residual);
    py::class_<MultiStartResult>(m, "MultiStartResult")
        .def_readonly("success", &MultiStartResult::success)
        .def_readonly("u", &MultiStartResult::u)
        .def_readonly("trace", &MultiStartResult::trace)
        .def_readonly("amplitude", &MultiStartResult::amplitude)
        .def_readonly("via_newton_fallback", &MultiStartResult::via_newton_fallback)
        .def_readonly("newton_report", &MultiStartResult::newton_report)
        .def_readonly("outcomes", &MultiStartResult::outcomes);
    m.def("c1_norm", &c1_norm, py::arg("mesh"), py::arg("u"));
    m.def("bump_field", &bump_field, py::arg("mesh"), py::arg("height"));
    m.def("apply_T", &apply_T, py::arg("dp"), py::arg("u"));
    m.def("fixed_point_iterate", &fixed_point_iterate, py::arg("dp"), py::arg("u0"),
          py::arg("cfg"));
    m.def("multi_start_fixed_point", &multi_start_fixed_point, py::arg("dp"), py::arg("cfg"));

    // ---- blow-up probes ----
    py::class_<RescaleResult>(m, "RescaleResult")
        .def_readonly("case1", &RescaleResult::case1)
        .def_readonly("M_k", &RescaleResult::M_k)
        .def_readonly("x_k", &RescaleResult::x_k)
        .def_readonly("N_k", &RescaleResult::N_k)
        .def_readonly("y_k", &RescaleResult::y_k)
        .def_readonly("phi_Nk", &RescaleResult::phi_Nk)
        .def_readonly("mu_k", &RescaleResult::mu_k)
        .def_readonly("boundary_distance", &RescaleResult::boundary_distance)
        .def_readonly("centered_fallback", &RescaleResult::centered_fallback)
        .def_readonly("rescaled_mesh", &RescaleResult::rescaled_mesh)
        .def_readonly("v", &RescaleResult::v);
    m.def("rescale", &rescale, py::arg("u"), py::arg("dp"), py::arg("use_case2"),
          py::arg("lambda_k"), py::arg("box_halfwidth") = 10.0, py::arg("cells_per_axis") = 0);

    py::class_<DeviationTable>(m, "DeviationTable")
        .def_readonly("scale", &DeviationTable::scale)
        .def_readonly("deviation", &DeviationTable::deviation)
        .def_readonly("p_hat", &DeviationTable::p_hat)
        .def_readonly("q_hat", &DeviationTable::q_hat)
        .def_readonly("b_hat", &DeviationTable::b_hat)
        .def_readonly("bound_ratio", &DeviationTable::bound_ratio)
        .def_readonly("plateau_flag", &DeviationTable::plateau_flag);
    m.def(
        "gk_limit_check",
        [](const YoungFunction& yf, const ScalarFunction& f, std::vector<double> n_list,
           std::vector<double> t_grid) { return gk_limit_check(yf, f, n_list, t_grid); },
        py::arg("yf"), py::arg("f"), py::arg("N_list"), py::arg("t_grid"));
    m.def(
        "bk_limit_check",
        [](const SourceTerm& st, const YoungFunction& yf, std::vector<double> n_list,
           std::vector<double> t_grid, std::vector<double> p_grid) {
            return bk_limit_check(st, yf, n_list, t_grid, p_grid);
        },
        py::arg("source"), py::arg("yf"), py::arg("N_list"), py::arg("t_grid"), py::arg("p_grid"));

    py::class_<ContinuationRow>(m, "ContinuationRow")
        .def_readonly("lam", &ContinuationRow::lambda)
        .def_readonly("sup_norm", &ContinuationRow::sup_norm)
        .def_readonly("converged", &ContinuationRow::converged)
        .def_readonly("iterations", &ContinuationRow::iterations);
    py::class_<ContinuationTable>(m, "ContinuationTable")
        .def_readonly("rows", &ContinuationTable::rows)
        .def_readonly("refinement", &ContinuationTable::refinement)
        .def_readonly("lambda_star", &ContinuationTable::lambda_star)
        .def_readonly("max_bound_observed", &ContinuationTable::max_bound_observed);
    m.def(
        "lambda_continuation",
        [](const DiscreteProblem& dp, std::vector<double> grid, const FixedPointConfig& cfg) {
            return lambda_continuation(dp, grid, cfg);
        },
        py::arg("dp"), py::arg("lambda_grid"), py::arg("cfg"));

    py::class_<LiouvilleProbe>(m, "LiouvilleProbe")
        .def_readonly("radii", &LiouvilleProbe::radii)
        .def_readonly("sups", &LiouvilleProbe::sups)
        .def_readonly("converged", &LiouvilleProbe::converged)
        .def_readonly("slope", &LiouvilleProbe::slope);
    m.def(
        "liouville_scaling_probe",
        [](double p, double q, std::vector<double> radii, double h, double tol) {
            return liouville_scaling_probe(p, q, radii, h, tol);
        },
        py::arg("p"), py::arg("q"), py::arg("radii"), py::arg("h_target") = 0.1,
        py::arg("tol") = 1e-8);

    // ---- io ----
    m.def(
        "problem_from_json",
        [](const std::string& text) { return problem_from_json(json::parse(text)); },
        py::arg("bundle_text"), "Builds a DiscreteProblem from a JSON bundle string.");
}
