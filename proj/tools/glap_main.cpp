#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "glap/gridutil.hpp"
#include "glap/io.hpp"

namespace fs = std::filesystem;
using namespace glap;

namespace {

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open: " + path);
    return json::parse(f);
}

json load_with_overrides(const std::string& path, const std::vector<std::string>& sets) {
    json j = load_json(path);
    for (const auto& s : sets) apply_override(j, s);
    return j;
}

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const auto comma = csv.find(',', start);
        const std::string tok =
            csv.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!tok.empty()) out.push_back(std::stod(tok));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty numeric list: '" + csv + "'");
    return out;
}

// Direct Newton over bump starts; first nontrivial converged solution wins,
// a trivial converged one is kept as fallback.
std::pair<Field, SolveReport> direct_multi_start(const DiscreteProblem& dp,
                                                 const std::vector<double>& amplitudes) {
    Field best;
    SolveReport best_rep;
    for (double amp : amplitudes) {
        try {
            auto [u, rep] = direct_solve(dp, bump_field(dp.mesh, amp), dp.solver.tol);
            if (rep.converged && rep.final_sup_norm > 1e-2) return {std::move(u), rep};
            if (rep.converged && !best_rep.converged) {
                best = std::move(u);
                best_rep = rep;
            }
        } catch (const std::runtime_error&) {
            continue;
        }
    }
    return {std::move(best), best_rep};
}

int run_young_check(const std::string& spec, const std::vector<std::string>& sets,
                    const std::string& out) {
    json j;
    YoungFunction yf;
    try {
        j = load_with_overrides(spec, sets);
        yf = young_from_json(j);
    } catch (const std::exception& e) {
        std::cerr << "young check: " << e.what() << "\n";
        return 2;
    }
    const ExponentReport rep = exponent_report(yf);
    json report{{"command", "young check"},
                {"young", to_json(yf)},
                {"validated", true},
                {"exponents", to_json(rep)}};
    write_text(out_path(out, "report.json"), dump_json17(report));
    return 0;
}

int run_source_check(const std::string& spec, const std::vector<std::string>& sets,
                     const std::string& out) {
    SourceTerm st;
    YoungFunction yf;
    int dim = 2;
    try {
        const json j = load_with_overrides(spec, sets);
        if (!j.contains("source") || !j.contains("young"))
            throw std::invalid_argument("source check: spec needs 'source' and 'young'");
        st = source_from_json(j.at("source"));
        yf = young_from_json(j.at("young"));
        if (j.contains("n")) dim = j.at("n").get<int>();
    } catch (const std::exception& e) {
        std::cerr << "source check: " << e.what() << "\n";
        return 2;
    }

    std::vector<ConditionReport> reports;
    reports.push_back(check_growth(st, yf));
    const double c_list[] = {0.5, 1.0, 2.0};
    reports.push_back(check_fG(st, yf, c_list));
    reports.push_back(check_eti1(st, yf, 1.0));
    {
        const double m_list[] = {1e1, 1e2, 1e3, 1e4};
        const auto t_grid = linspace(0.0, 2.0, 21);
        const double p_grid[] = {0.0, 0.5, 1.0};
        const std::vector<Point> xs{{0, 0}, {0.5, 0.5}, {1, 0}};
        reports.push_back(check_limit_profile(st, yf, m_list, t_grid, p_grid, xs));
    }
    {
        auto [pos, sup] = check_PS(st, yf);
        reports.push_back(pos);
        reports.push_back(sup);
    }
    reports.push_back(check_subcritical(st.q, lieberman_exponents(yf).p_minus_hat, dim));

    bool all_passed = true;
    json arr = json::array();
    for (const auto& r : reports) {
        all_passed = all_passed && r.passed;
        arr.push_back(to_json(r));
    }
    json report{{"command", "source check"}, {"all_passed", all_passed}, {"conditions", arr}};
    write_text(out_path(out, "report.json"), dump_json17(report));
    return 0;
}

int run_solve(const std::string& problem, const std::string& h,
              const std::vector<std::string>& sets, double amp, const std::string& out,
              bool inner) {
    DiscreteProblem dp;
    try {
        json bundle = load_with_overrides(problem, sets);
        if (!h.empty()) apply_override(bundle, "mesh.h=" + h);
        dp = problem_from_json(bundle);
    } catch (const std::exception& e) {
        std::cerr << (inner ? "inner-solve: " : "solve: ") << e.what() << "\n";
        return 2;
    }

    Field u;
    SolveReport rep;
    try {
        if (inner) {
            Field psi(dp.mesh.vertices.size());
            for (std::size_t v = 0; v < psi.size(); ++v)
                psi[v] = evaluate_B(dp.source, dp.mesh.vertices[v], 0.0, {0, 0}) + dp.lambda;
            std::tie(u, rep) = inner_solve(dp, psi, dp.solver.tol);
        } else {
            std::tie(u, rep) = direct_solve(dp, bump_field(dp.mesh, amp), dp.solver.tol);
        }
    } catch (const std::exception& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    }

    json report{{"command", inner ? "inner-solve" : "solve"}, {"report", to_json(rep)}};
    write_text(out_path(out, "report.json"), dump_json17(report));
    write_field_csv(out_path(out, "field.csv"), dp.mesh, u);
    write_residual_csv(out_path(out, "trace.csv"), rep);
    if (dp.mesh.dimension == 1) {
        std::vector<double> xs(u.size());
        for (std::size_t v = 0; v < u.size(); ++v) xs[v] = dp.mesh.vertices[v][0];
        write_polyline_svg(out_path(out, "profile.svg"), xs, u, "u(x)");
    }
    return rep.converged ? 0 : 3;
}

int run_fixed_point(const std::string& problem, const std::vector<std::string>& sets,
                    long long seed, const std::string& out) {
    DiscreteProblem dp;
    FixedPointConfig cfg;
    try {
        json bundle = load_with_overrides(problem, sets);
        dp = problem_from_json(bundle);
        if (bundle.contains("fixed_point")) cfg = fixed_point_from_json(bundle.at("fixed_point"));
        if (seed >= 0) cfg.seed = static_cast<unsigned long long>(seed);
        // a bundle's lambda rides the homotopy unless the block sets it explicitly
        if (dp.lambda > 0.0 && cfg.homotopy_t == 0.0 && cfg.lambda0 == 0.0) {
            cfg.homotopy_t = 1.0;
            cfg.lambda0 = dp.lambda;
        }
    } catch (const std::exception& e) {
        std::cerr << "fixed-point: " << e.what() << "\n";
        return 2;
    }

    MultiStartResult res;
    try {
        res = multi_start_fixed_point(dp, cfg);
    } catch (const std::exception& e) {
        std::cerr << "fixed-point error: " << e.what() << "\n";
        return 3;
    }
    json report{{"command", "fixed-point"}, {"result", to_json(res)}};
    write_text(out_path(out, "report.json"), dump_json17(report));
    write_trace_csv(out_path(out, "trace.csv"), res.trace);
    if (res.success) write_field_csv(out_path(out, "field.csv"), dp.mesh, res.u);
    return res.success ? 0 : 3;
}

int run_rescale(const std::string& problem, const std::vector<std::string>& sets, bool case2,
                double lambda_k, double halfwidth, int cells, long long seed,
                const std::string& out) {
    DiscreteProblem dp;
    FixedPointConfig cfg;
    bool have_fp = false;
    try {
        json bundle = load_with_overrides(problem, sets);
        dp = problem_from_json(bundle);
        if (bundle.contains("fixed_point")) {
            cfg = fixed_point_from_json(bundle.at("fixed_point"));
            have_fp = true;
        }
        if (seed >= 0) cfg.seed = static_cast<unsigned long long>(seed);
    } catch (const std::exception& e) {
        std::cerr << "rescale: " << e.what() << "\n";
        return 2;
    }

    try {
        Field u;
        bool solved = false;
        if (have_fp) {
            MultiStartResult res = multi_start_fixed_point(dp, cfg);
            solved = res.success;
            u = std::move(res.u);
        } else {
            DiscreteProblem dpp = dp;
            dpp.solver.enforce_positive = true;
            auto [uu, rep] = direct_multi_start(dpp, cfg.amplitudes);
            solved = rep.converged;
            u = std::move(uu);
        }
        if (!solved) {
            std::cerr << "rescale: underlying solve did not converge\n";
            return 3;
        }
        const double lk = lambda_k >= 0.0 ? lambda_k : dp.lambda;
        const RescaleResult rr = rescale(u, dp, case2, lk, halfwidth, cells);
        json report{{"command", "rescale"}, {"result", to_json(rr)}};
        write_text(out_path(out, "report.json"), dump_json17(report));
        write_field_csv(out_path(out, "field.csv"), rr.rescaled_mesh, rr.v);
        if (rr.rescaled_mesh.dimension == 1) {
            std::vector<double> xs(rr.v.size());
            for (std::size_t v = 0; v < rr.v.size(); ++v) xs[v] = rr.rescaled_mesh.vertices[v][0];
            write_polyline_svg(out_path(out, "profile.svg"), xs, rr.v, "v(x)");
        }
    } catch (const std::exception& e) {
        std::cerr << "rescale error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

int run_probe_lambda(const std::string& problem, const std::vector<std::string>& sets,
                     double lmax, int steps, long long seed, const std::string& out) {
    DiscreteProblem dp;
    FixedPointConfig cfg;
    std::vector<double> grid;
    try {
        json bundle = load_with_overrides(problem, sets);
        dp = problem_from_json(bundle);
        if (bundle.contains("fixed_point")) cfg = fixed_point_from_json(bundle.at("fixed_point"));
        if (seed >= 0) cfg.seed = static_cast<unsigned long long>(seed);
        if (!(lmax > 0.0) || steps < 1)
            throw std::invalid_argument("probe-lambda: need lmax > 0 and steps >= 1");
        grid = linspace(0.0, lmax, steps + 1);
    } catch (const std::exception& e) {
        std::cerr << "probe-lambda: " << e.what() << "\n";
        return 2;
    }

    json report{{"command", "probe-lambda"}};
    try {
        const ContinuationTable tab = lambda_continuation(dp, grid, cfg);
        report["result"] = to_json(tab);
        write_branch_csv(out_path(out, "branch.csv"), tab.rows);
        write_branch_csv(out_path(out, "refinement.csv"), tab.refinement);
        std::vector<double> xs, ys;
        for (const auto& r : tab.rows)
            if (r.converged) {
                xs.push_back(r.lambda);
                ys.push_back(r.sup_norm);
            }
        write_polyline_svg(out_path(out, "branch.svg"), xs, ys, "sup |u| vs lambda");
    } catch (const std::exception& e) {
        report["error"] = std::string(e.what());  // probe failures are data
    }
    write_text(out_path(out, "report.json"), dump_json17(report));
    return 0;
}

int run_probe_liouville(double p, double q, const std::string& radii_csv, double h,
                        const std::string& out) {
    std::vector<double> radii;
    try {
        radii = parse_list(radii_csv);
    } catch (const std::exception& e) {
        std::cerr << "probe-liouville: " << e.what() << "\n";
        return 2;
    }
    json report{{"command", "probe-liouville"}};
    try {
        const LiouvilleProbe probe = liouville_scaling_probe(p, q, radii, h);
        report["result"] = to_json(probe);
        write_pairs_csv(out_path(out, "scaling.csv"), "R", "sup", probe.radii, probe.sups);
        write_polyline_svg(out_path(out, "scaling.svg"), probe.radii, probe.sups, "sup u_R vs R");
    } catch (const std::exception& e) {
        report["error"] = std::string(e.what());
    }
    write_text(out_path(out, "report.json"), dump_json17(report));
    return 0;
}

int run_gk_limit(const std::string& young_spec, const std::string& source_spec,
                 const std::vector<std::string>& sets, const std::string& n_csv, double tmax,
                 int nt, const std::string& out) {
    YoungFunction yf;
    ScalarFunction f = ScalarFunction::power(3.0);
    std::vector<double> n_list;
    std::vector<double> t_grid;
    try {
        yf = young_from_json(load_with_overrides(young_spec, sets));
        if (!source_spec.empty()) f = source_from_json(load_json(source_spec).at("source")).f;
        n_list = parse_list(n_csv);
        if (!(tmax > 0.0) || nt < 3)
            throw std::invalid_argument("gk-limit: need tmax > 0 and nt >= 3");
        t_grid = linspace(0.0, tmax, nt);
    } catch (const std::exception& e) {
        std::cerr << "gk-limit: " << e.what() << "\n";
        return 2;
    }

    json report{{"command", "gk-limit"}};
    try {
        const DeviationTable tab = gk_limit_check(yf, f, n_list, t_grid);
        report["result"] = to_json(tab);
        write_deviation_csv(out_path(out, "deviation.csv"), tab);
        write_polyline_svg(out_path(out, "deviation.svg"), tab.scale, tab.deviation,
                           "gk deviation vs N");
    } catch (const std::exception& e) {
        report["error"] = std::string(e.what());
    }
    write_text(out_path(out, "report.json"), dump_json17(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet problems driven by the g-Laplace operator: checks, solves, probes.\n"
                 "GLAP_THREADS caps internal parallelism."};
    app.require_subcommand(1);
    // long-only help everywhere so --h stays available for mesh spacing
    app.set_help_flag("--help", "print help and exit");
    auto sub = [](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* cmd = parent->add_subcommand(name, desc);
        cmd->set_help_flag("--help", "print help and exit");
        return cmd;
    };
    int rc = 0;

    std::string spec_file, problem_file, young_file, source_file, out_dir = ".";
    std::string h_override, radii_csv = "1,2,4,8", n_csv = "10,100,1000,10000,100000";
    std::vector<std::string> sets;
    long long seed = -1;
    double amp = 1.0, lambda_k = -1.0, halfwidth = 10.0, lmax = 50.0, p_exp = 2.0, q_exp = 4.0;
    double h_target = 0.1, tmax = 2.0;
    int steps = 25, cells = 0, nt = 41;
    bool case2 = false;

    auto add_common = [&](CLI::App* cmd, bool with_sets = true) {
        cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
        if (with_sets)
            cmd->add_option("--set", sets, "dotted override into the JSON spec (key.path=value)");
    };

    CLI::App* young = sub(&app, "young", "Young function tools");
    young->require_subcommand(1);
    CLI::App* young_check = sub(young, "check", "validate and report exponents");
    young_check->add_option("--spec", spec_file, "Young function JSON")->required();
    add_common(young_check);
    young_check->callback([&] { rc = run_young_check(spec_file, sets, out_dir); });

    CLI::App* source = sub(&app, "source", "source term tools");
    source->require_subcommand(1);
    CLI::App* source_check = sub(source, "check", "run structure-condition checks");
    source_check->add_option("--spec", spec_file, "JSON with 'source' and 'young'")->required();
    add_common(source_check);
    source_check->callback([&] { rc = run_source_check(spec_file, sets, out_dir); });

    CLI::App* solve = sub(&app, "solve", "direct Newton solve of the full problem");
    solve->add_option("--problem", problem_file, "problem bundle JSON")->required();
    solve->add_option("--h", h_override, "mesh spacing override (accepts fractions like 1/512)");
    solve->add_option("--amp", amp, "starting bump amplitude")->capture_default_str();
    add_common(solve);
    solve->callback([&] { rc = run_solve(problem_file, h_override, sets, amp, out_dir, false); });

    CLI::App* inner = sub(&app, "inner-solve", "apply the solution operator S once");
    inner->add_option("--problem", problem_file, "problem bundle JSON")->required();
    inner->add_option("--h", h_override, "mesh spacing override");
    add_common(inner);
    inner->callback([&] { rc = run_solve(problem_file, h_override, sets, amp, out_dir, true); });

    CLI::App* fp = sub(&app, "fixed-point", "multi-start damped fixed-point run");
    fp->add_option("--problem", problem_file, "problem bundle JSON")->required();
    fp->add_option("--seed", seed, "multi-start jitter seed");
    add_common(fp);
    fp->callback([&] { rc = run_fixed_point(problem_file, sets, seed, out_dir); });

    CLI::App* resc = sub(&app, "rescale", "solve, then zoom onto the blow-up scale");
    resc->add_option("--problem", problem_file, "problem bundle JSON")->required();
    resc->add_flag("--case2", case2, "scale by the forcing instead of the sup");
    resc->add_option("--lambda-k", lambda_k, "forcing value (default: bundle lambda)");
    resc->add_option("--halfwidth", halfwidth, "rescaled box half-width")->capture_default_str();
    resc->add_option("--cells", cells, "cells per axis of the rescaled mesh (0 = default)");
    resc->add_option("--seed", seed, "multi-start jitter seed");
    add_common(resc);
    resc->callback([&] {
        rc = run_rescale(problem_file, sets, case2, lambda_k, halfwidth, cells, seed, out_dir);
    });

    CLI::App* pl = sub(&app, "probe-lambda", "continuation in lambda with bisection");
    pl->add_option("--problem", problem_file, "problem bundle JSON")->required();
    pl->add_option("--lmax", lmax, "top of the lambda grid")->capture_default_str();
    pl->add_option("--steps", steps, "grid steps")->capture_default_str();
    pl->add_option("--seed", seed, "multi-start jitter seed");
    add_common(pl);
    pl->callback([&] { rc = run_probe_lambda(problem_file, sets, lmax, steps, seed, out_dir); });

    CLI::App* pliou = sub(&app, "probe-liouville", "sup-norm scaling on growing disks");
    pliou->add_option("--p", p_exp, "power of the operator")->capture_default_str();
    pliou->add_option("--q", q_exp, "superlinear source power")->capture_default_str();
    pliou->add_option("--radii", radii_csv, "comma list of radii")->capture_default_str();
    pliou->add_option("--h", h_target, "interior resolution")->capture_default_str();
    add_common(pliou, false);
    pliou->callback([&] { rc = run_probe_liouville(p_exp, q_exp, radii_csv, h_target, out_dir); });

    CLI::App* gk = sub(&app, "gk-limit", "rescaled-g deviation table");
    gk->add_option("--young", young_file, "Young function JSON")->required();
    gk->add_option("--source", source_file, "source spec JSON (for f; default t^3)");
    gk->add_option("--N", n_csv, "comma list of scales N")->capture_default_str();
    gk->add_option("--tmax", tmax, "top of the t grid")->capture_default_str();
    gk->add_option("--nt", nt, "t grid size")->capture_default_str();
    add_common(gk);
    gk->callback(
        [&] { rc = run_gk_limit(young_file, source_file, sets, n_csv, tmax, nt, out_dir); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems are validation failures
    }
    return rc;
}
