#include "glap/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace glap {

namespace {

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw std::invalid_argument(std::string(key) + ": expected a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<int>();
}

bool get_bool(const json& j, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<bool>();
}

std::array<double, 2> get_pair(const json& j, const char* key, std::array<double, 2> fallback) {
    if (!j.contains(key)) return fallback;
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 2)
        throw std::invalid_argument(std::string(key) + ": expected [lo, hi]");
    return {a[0].get<double>(), a[1].get<double>()};
}

}  // namespace

ScalarFunction scalar_from_json(const json& j) {
    if (j.is_null()) return ScalarFunction::zero();
    if (!j.is_object()) throw std::invalid_argument("scalar function: expected an object");
    const std::string kind = j.value("kind", "zero");
    if (kind == "zero") return ScalarFunction::zero();
    if (kind == "power")
        return ScalarFunction::power(get_num(j, "e", 1.0), get_num(j, "coef", 1.0));
    if (kind == "exp") return ScalarFunction::expfn(get_num(j, "coef", 1.0));
    throw std::invalid_argument("scalar function: unknown kind '" + kind + "'");
}

YoungFunction young_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("young: expected an object");
    const std::string kind = j.value("kind", "power");
    const std::array<double, 2> dom = get_pair(j, "eval_domain", {1e-3, 1e3});
    YoungFunction yf;
    if (kind == "power") {
        yf = YoungFunction::make_power(get_num(j, "p", 2.0), dom);
    } else if (kind == "plog") {
        yf = YoungFunction::make_plog(get_num(j, "p", 2.0), get_num(j, "alpha", 1.0), dom);
    } else if (kind == "double_power") {
        yf = YoungFunction::make_double_power(get_num(j, "p", 2.0), get_num(j, "q", 3.0), dom);
    } else if (kind == "tabulated") {
        if (!j.contains("t") || !j.contains("g"))
            throw std::invalid_argument("young: tabulated needs arrays t and g");
        auto t = j.at("t").get<std::vector<double>>();
        auto g = j.at("g").get<std::vector<double>>();
        yf = YoungFunction::make_tabulated(std::move(t), std::move(g),
                                           j.contains("eval_domain") ? dom
                                                                     : std::array<double, 2>{0, 0});
    } else {
        throw std::invalid_argument("young: unknown kind '" + kind + "'");
    }
    validate(yf);
    return yf;
}

SourceTerm source_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("source: expected an object");
    SourceTerm st;
    st.A = get_num(j, "A", st.A);
    if (j.contains("f")) st.f = scalar_from_json(j.at("f"));
    if (j.contains("f0")) st.f0 = scalar_from_json(j.at("f0"));
    if (j.contains("h")) st.h = scalar_from_json(j.at("h"));
    st.b_expr = j.value("b", st.b_expr);
    st.q = get_num(j, "q", st.q);
    st.K = get_num(j, "K", st.K);
    st.L = get_num(j, "L", st.L);
    st.M0 = get_num(j, "M0", st.M0);
    b_value(st, {0.0, 0.0});  // reject unsupported b expressions up front
    return st;
}

MeshSpec mesh_spec_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("mesh: expected an object");
    MeshSpec spec;
    const std::string shape = j.value("shape", "interval");
    if (shape == "interval") {
        spec.shape = MeshShape::interval;
        spec.a = get_num(j, "a", 0.0);
        spec.b = get_num(j, "b", 1.0);
    } else if (shape == "rectangle") {
        spec.shape = MeshShape::rectangle;
        spec.lo = get_pair(j, "lo", {0.0, 0.0});
        spec.hi = get_pair(j, "hi", {1.0, 1.0});
    } else if (shape == "disk") {
        spec.shape = MeshShape::disk;
        spec.radius = get_num(j, "radius", 1.0);
        spec.sides = get_int(j, "sides", 0);
    } else {
        throw std::invalid_argument("mesh: unknown shape '" + shape + "'");
    }
    spec.h = get_num(j, "h", spec.h);
    if (!(spec.h > 0.0)) throw std::invalid_argument("mesh: h must be positive");
    return spec;
}

Mesh build_mesh(const MeshSpec& spec) {
    constexpr double vertex_cap = 1e7;
    auto reject = [](double estimate) {
        if (estimate > vertex_cap)
            throw std::invalid_argument("mesh spec needs ~" + std::to_string(estimate) +
                                        " vertices (cap 10^7); coarsen h");
    };
    switch (spec.shape) {
        case MeshShape::interval: {
            if (!(spec.b > spec.a)) throw std::invalid_argument("mesh: need b > a");
            const int n = std::max(2, static_cast<int>(std::lround((spec.b - spec.a) / spec.h)));
            reject(static_cast<double>(n) + 1.0);
            return build_interval(spec.a, spec.b, n);
        }
        case MeshShape::rectangle: {
            if (!(spec.hi[0] > spec.lo[0]) || !(spec.hi[1] > spec.lo[1]))
                throw std::invalid_argument("mesh: need hi > lo componentwise");
            const int nx =
                std::max(1, static_cast<int>(std::lround((spec.hi[0] - spec.lo[0]) / spec.h)));
            const int ny =
                std::max(1, static_cast<int>(std::lround((spec.hi[1] - spec.lo[1]) / spec.h)));
            reject(double(nx + 1) * double(ny + 1) + double(nx) * double(ny));
            return build_rectangle(spec.lo, spec.hi, nx, ny);
        }
        case MeshShape::disk: {
            if (!(spec.radius > 0.0)) throw std::invalid_argument("mesh: radius must be positive");
            const int rings =
                std::max(1, static_cast<int>(std::lround(spec.radius / spec.h)));
            const int sides =
                spec.sides > 0
                    ? std::max(6, spec.sides)
                    : std::max(6, static_cast<int>(std::lround(
                                      2.0 * std::numbers::pi * spec.radius / spec.h)));
            reject(1.0 + double(sides) * (double(rings) + 1.0));
            return build_disk(spec.radius, rings, sides);
        }
    }
    throw std::logic_error("mesh: unreachable shape");
}

SolverParams solver_from_json(const json& j) {
    SolverParams sp;
    if (j.is_null()) return sp;
    if (!j.is_object()) throw std::invalid_argument("solver: expected an object");
    sp.epsilon = get_num(j, "epsilon", sp.epsilon);
    sp.tol = get_num(j, "tol", sp.tol);
    sp.max_newton = get_int(j, "max_newton", sp.max_newton);
    sp.escape_sup = get_num(j, "escape_sup", sp.escape_sup);
    sp.escape_residual = get_num(j, "escape_residual", sp.escape_residual);
    sp.enforce_positive = get_bool(j, "enforce_positive", sp.enforce_positive);
    if (!(sp.epsilon > 0.0) || !(sp.tol > 0.0) || sp.max_newton < 1)
        throw std::invalid_argument("solver: epsilon, tol must be positive, max_newton >= 1");
    return sp;
}

FixedPointConfig fixed_point_from_json(const json& j) {
    FixedPointConfig cfg;
    if (j.is_null()) return cfg;
    if (!j.is_object()) throw std::invalid_argument("fixed_point: expected an object");
    cfg.omega = get_num(j, "omega", cfg.omega);
    cfg.homotopy_t = get_num(j, "homotopy_t", cfg.homotopy_t);
    cfg.lambda0 = get_num(j, "lambda0", cfg.lambda0);
    cfg.r = get_num(j, "r", cfg.r);
    cfg.R = get_num(j, "R", cfg.R);
    cfg.max_outer = get_int(j, "max_outer", cfg.max_outer);
    cfg.tol_outer = get_num(j, "tol_outer", cfg.tol_outer);
    cfg.inner_tol = get_num(j, "inner_tol", cfg.inner_tol);
    if (j.contains("amplitudes")) cfg.amplitudes = j.at("amplitudes").get<std::vector<double>>();
    cfg.seed = j.value("seed", cfg.seed);
    cfg.jitter = get_num(j, "jitter", cfg.jitter);
    validate(cfg);
    return cfg;
}

DiscreteProblem problem_from_json(const json& bundle) {
    if (!bundle.is_object()) throw std::invalid_argument("problem bundle: expected an object");
    for (const char* key : {"mesh", "young", "source"})
        if (!bundle.contains(key))
            throw std::invalid_argument(std::string("problem bundle: missing '") + key + "'");
    DiscreteProblem dp;
    dp.mesh = build_mesh(mesh_spec_from_json(bundle.at("mesh")));
    dp.yf = young_from_json(bundle.at("young"));
    dp.source = source_from_json(bundle.at("source"));
    dp.lambda = get_num(bundle, "lambda", 0.0);
    dp.L = get_num(bundle, "L", dp.source.L);
    if (bundle.contains("solver")) dp.solver = solver_from_json(bundle.at("solver"));
    return dp;
}

// ---- serialization ----------------------------------------------------------

json to_json(const ScalarFunction& fn) {
    switch (fn.kind) {
        case ScalarFunction::Kind::zero:
            return json{{"kind", "zero"}};
        case ScalarFunction::Kind::power:
            return json{{"kind", "power"}, {"e", fn.exponent}, {"coef", fn.coef}};
        case ScalarFunction::Kind::expfn:
            return json{{"kind", "exp"}, {"coef", fn.coef}};
    }
    return json{};
}

json to_json(const YoungFunction& yf) {
    json j;
    switch (yf.kind) {
        case YoungKind::power:
            j["kind"] = "power";
            j["p"] = yf.p;
            break;
        case YoungKind::plog:
            j["kind"] = "plog";
            j["p"] = yf.p;
            j["alpha"] = yf.alpha;
            break;
        case YoungKind::double_power:
            j["kind"] = "double_power";
            j["p"] = yf.p;
            j["q"] = yf.q;
            break;
        case YoungKind::tabulated:
            j["kind"] = "tabulated";
            j["t"] = yf.table_t;
            j["g"] = yf.table_g;
            break;
    }
    j["eval_domain"] = {yf.eval_domain[0], yf.eval_domain[1]};
    return j;
}

json to_json(const ExponentReport& rep) {
    return json{{"p_minus_hat", rep.p_minus_hat},
                {"p_plus_hat", rep.p_plus_hat},
                {"delta2_constant", rep.delta2_constant},
                {"regvar_p_hat", rep.regvar_p_hat},
                {"sample_range", {rep.sample_range[0], rep.sample_range[1]}},
                {"n_samples", rep.n_samples}};
}

json to_json(const ConditionReport& rep) {
    json j{{"condition_id", rep.condition_id},
           {"passed", rep.passed},
           {"warning", rep.warning},
           {"details", rep.details}};
    json metrics = json::object();
    for (const auto& [k, v] : rep.metrics) metrics[k] = v;
    json witness = json::object();
    for (const auto& [k, v] : rep.witness) witness[k] = v;
    j["metrics"] = std::move(metrics);
    j["witness"] = std::move(witness);
    return j;
}

json to_json(const SolveReport& rep) {
    return json{{"converged", rep.converged},
                {"escaped", rep.escaped},
                {"iterations", rep.iterations},
                {"final_residual", rep.final_residual},
                {"final_sup_norm", rep.final_sup_norm},
                {"message", rep.message},
                {"residual_history", rep.residual_history},
                {"energy_history", rep.energy_history}};
}

json to_json(const IterationTrace& tr) {
    json records = json::array();
    for (const auto& r : tr.records) {
        records.push_back(json{{"iter", r.iter},
                               {"sup_norm", r.sup_norm},
                               {"c1_norm", r.c1_norm},
                               {"update_norm", r.update_norm},
                               {"inner_iterations", r.inner_iterations},
                               {"inner_converged", r.inner_converged}});
    }
    return json{{"outcome", outcome_name(tr.outcome)},
                {"inner_failure", tr.inner_failure},
                {"clip_count", tr.clip_count},
                {"final_weak_residual", tr.final_weak_residual},
                {"records", std::move(records)}};
}

json to_json(const MultiStartResult& res) {
    json outcomes = json::array();
    for (Outcome o : res.outcomes) outcomes.push_back(outcome_name(o));
    json j{{"success", res.success},
           {"amplitude", res.amplitude},
           {"via_newton_fallback", res.via_newton_fallback},
           {"outcomes", std::move(outcomes)},
           {"trace", to_json(res.trace)}};
    if (res.via_newton_fallback) j["newton_report"] = to_json(res.newton_report);
    return j;
}

json to_json(const RescaleResult& rr) {
    return json{{"case", rr.case1 ? "case1" : "case2"},
                {"M_k", rr.M_k},
                {"x_k", {rr.x_k[0], rr.x_k[1]}},
                {"N_k", rr.N_k},
                {"y_k", {rr.y_k[0], rr.y_k[1]}},
                {"phi_Nk", rr.phi_Nk},
                {"mu_k", rr.mu_k},
                {"boundary_distance", rr.boundary_distance},
                {"centered_fallback", rr.centered_fallback},
                {"rescaled_vertices", rr.rescaled_mesh.vertices.size()},
                {"sup_v", sup_norm(rr.v)}};
}

json to_json(const DeviationTable& tab) {
    return json{{"scale", tab.scale},
                {"deviation", tab.deviation},
                {"p_hat", tab.p_hat},
                {"q_hat", tab.q_hat},
                {"b_hat", tab.b_hat},
                {"bound_ratio", tab.bound_ratio},
                {"plateau_flag", tab.plateau_flag}};
}

namespace {

json rows_to_json(std::span<const ContinuationRow> rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(json{{"lambda", r.lambda},
                           {"sup_norm", r.sup_norm},
                           {"converged", r.converged},
                           {"iterations", r.iterations}});
    return arr;
}

}  // namespace

json to_json(const ContinuationTable& tab) {
    json j{{"rows", rows_to_json(tab.rows)}, {"refinement", rows_to_json(tab.refinement)}};
    const bool finite = std::isfinite(tab.lambda_star);
    j["lambda_star_finite"] = finite;
    if (finite)
        j["lambda_star"] = tab.lambda_star;
    else
        j["lambda_star"] = nullptr;
    j["C_emp"] = tab.max_bound_observed;
    // Failure here means "4 warm/multi starts did not converge", which cannot
    // distinguish nonexistence from solver failure; downstream readers should
    // treat lambda_star as an upper probe, not a certificate.
    j["failure_semantics"] = "non-convergence of all starts (solver failure conflated)";
    return j;
}

json to_json(const LiouvilleProbe& probe) {
    json conv = json::array();
    for (bool b : probe.converged) conv.push_back(b);
    return json{{"radii", probe.radii},
                {"sups", probe.sups},
                {"converged", std::move(conv)},
                {"slope", probe.slope}};
}

// ---- overrides ----------------------------------------------------------------

void apply_override(json& bundle, const std::string& dotted) {
    const auto eq = dotted.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("override '" + dotted + "': expected key.path=value");
    const std::string path = dotted.substr(0, eq);
    const std::string value = dotted.substr(eq + 1);

    json* cur = &bundle;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string part = path.substr(start, dot == std::string::npos ? dot : dot - start);
        if (part.empty()) throw std::invalid_argument("override '" + dotted + "': empty key part");
        if (dot == std::string::npos) {
            json parsed;
            try {
                parsed = json::parse(value);
            } catch (const json::parse_error&) {
                // fraction shorthand ("1/512"), else a bare string
                const auto slash = value.find('/');
                bool fraction = false;
                if (slash != std::string::npos && slash > 0) {
                    try {
                        const double num = std::stod(value.substr(0, slash));
                        const double den = std::stod(value.substr(slash + 1));
                        if (den != 0.0) {
                            parsed = num / den;
                            fraction = true;
                        }
                    } catch (const std::exception&) {
                    }
                }
                if (!fraction) parsed = value;
            }
            (*cur)[part] = std::move(parsed);
            return;
        }
        cur = &((*cur)[part]);
        start = dot + 1;
    }
}

// ---- deterministic emission ------------------------------------------------------

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void dump_rec(const json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    switch (j.type()) {
        case json::value_t::null:
            out += "null";
            return;
        case json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            return;
        case json::value_t::number_integer:
            out += std::to_string(j.get<long long>());
            return;
        case json::value_t::number_unsigned:
            out += std::to_string(j.get<unsigned long long>());
            return;
        case json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? fmt17(v) : "null";
            return;
        }
        case json::value_t::string:
            out += json(j.get<std::string>()).dump();
            return;
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                out += pad_in;
                dump_rec(j[i], out, indent, depth + 1);
                if (i + 1 < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "]";
            return;
        }
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            std::size_t i = 0;
            for (const auto& [k, v] : j.items()) {
                out += pad_in + json(k).dump() + ": ";
                dump_rec(v, out, indent, depth + 1);
                if (++i < j.size()) out += ",";
                out += "\n";
            }
            out += pad + "}";
            return;
        }
        default:
            throw std::logic_error("dump_json17: unsupported value type");
    }
}

}  // namespace

std::string dump_json17(const json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

void write_field_csv(const std::string& path, const Mesh& mesh, const Field& u) {
    if (u.size() != mesh.vertices.size())
        throw std::invalid_argument("write_field_csv: field size does not match mesh");
    std::string out = mesh.dimension == 1 ? "x,u\n" : "x,y,u\n";
    for (std::size_t v = 0; v < u.size(); ++v) {
        out += fmt17(mesh.vertices[v][0]);
        if (mesh.dimension == 2) {
            out += ",";
            out += fmt17(mesh.vertices[v][1]);
        }
        out += ",";
        out += fmt17(u[v]);
        out += "\n";
    }
    write_text(path, out);
}

void write_trace_csv(const std::string& path, const IterationTrace& tr) {
    std::string out = "iter,sup_norm,c1_norm,update,inner_iters\n";
    for (const auto& r : tr.records) {
        out += std::to_string(r.iter) + "," + fmt17(r.sup_norm) + "," + fmt17(r.c1_norm) + "," +
               fmt17(r.update_norm) + "," + std::to_string(r.inner_iterations) + "\n";
    }
    write_text(path, out);
}

void write_residual_csv(const std::string& path, const SolveReport& rep) {
    const bool with_energy = rep.energy_history.size() == rep.residual_history.size() &&
                             !rep.energy_history.empty();
    std::string out = with_energy ? "iter,residual,energy\n" : "iter,residual\n";
    for (std::size_t i = 0; i < rep.residual_history.size(); ++i) {
        out += std::to_string(i) + "," + fmt17(rep.residual_history[i]);
        if (with_energy) out += "," + fmt17(rep.energy_history[i]);
        out += "\n";
    }
    write_text(path, out);
}

void write_branch_csv(const std::string& path, std::span<const ContinuationRow> rows) {
    std::string out = "lambda,sup_norm,converged,iterations\n";
    for (const auto& r : rows) {
        out += fmt17(r.lambda) + "," + fmt17(r.sup_norm) + "," + (r.converged ? "1" : "0") + "," +
               std::to_string(r.iterations) + "\n";
    }
    write_text(path, out);
}

void write_deviation_csv(const std::string& path, const DeviationTable& tab) {
    write_pairs_csv(path, "N", "deviation", tab.scale, tab.deviation);
}

void write_pairs_csv(const std::string& path, const std::string& xname, const std::string& yname,
                     std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("write_pairs_csv: length mismatch");
    std::string out = xname + "," + yname + "\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += fmt17(xs[i]) + "," + fmt17(ys[i]) + "\n";
    write_text(path, out);
}

void write_polyline_svg(const std::string& path, std::span<const double> xs,
                        std::span<const double> ys, const std::string& title) {
    constexpr double width = 640, height = 420;
    constexpr double left = 60, right = 620, top = 40, bottom = 380;
    auto f6 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
    };

    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    bool any = false;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
        if (!any) {
            x_lo = x_hi = xs[i];
            y_lo = y_hi = ys[i];
            any = true;
        }
        x_lo = std::min(x_lo, xs[i]);
        x_hi = std::max(x_hi, xs[i]);
        y_lo = std::min(y_lo, ys[i]);
        y_hi = std::max(y_hi, ys[i]);
    }
    if (x_hi <= x_lo) x_hi = x_lo + 1;
    if (y_hi <= y_lo) y_hi = y_lo + 1;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
           "viewBox=\"0 0 640 420\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"420\" fill=\"white\"/>\n";
    out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"14\">" + title + "</text>\n";
    out += "<line x1=\"" + f6(left) + "\" y1=\"" + f6(bottom) + "\" x2=\"" + f6(right) +
           "\" y2=\"" + f6(bottom) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + f6(left) + "\" y1=\"" + f6(top) + "\" x2=\"" + f6(left) + "\" y2=\"" +
           f6(bottom) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + f6(left) + "\" y=\"" + f6(bottom + 16) +
           "\" font-family=\"monospace\" font-size=\"11\">" + f6(x_lo) + "</text>\n";
    out += "<text x=\"" + f6(right) + "\" y=\"" + f6(bottom + 16) +
           "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" + f6(x_hi) +
           "</text>\n";
    out += "<text x=\"" + f6(left - 4) + "\" y=\"" + f6(bottom) +
           "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" + f6(y_lo) +
           "</text>\n";
    out += "<text x=\"" + f6(left - 4) + "\" y=\"" + f6(top + 4) +
           "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">" + f6(y_hi) +
           "</text>\n";

    std::string pts;
    for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
        const double px = left + (right - left) * (xs[i] - x_lo) / (x_hi - x_lo);
        const double py = bottom - (bottom - top) * (ys[i] - y_lo) / (y_hi - y_lo);
        if (!pts.empty()) pts += " ";
        pts += f6(px) + "," + f6(py);
    }
    if (!pts.empty())
        out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"" + pts +
               "\"/>\n";
    out += "</svg>\n";
    write_text(path, out);
}

}  // namespace glap
