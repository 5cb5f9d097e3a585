#pragma once

#include <span>
#include <string>

#include "json.hpp"

#include "glap/blowup.hpp"

namespace glap {

using json = nlohmann::ordered_json;

// ---- spec JSON -> objects --------------------------------------------------

ScalarFunction scalar_from_json(const json& j);
YoungFunction young_from_json(const json& j);
SourceTerm source_from_json(const json& j);

struct MeshSpec {
    MeshShape shape = MeshShape::interval;
    double a = 0.0, b = 1.0;                    // interval
    std::array<double, 2> lo{0, 0}, hi{1, 1};   // rectangle
    double radius = 1.0;                        // disk
    int sides = 0;                              // disk boundary polygon; 0 = derive from h
    double h = 1.0 / 64.0;                      // target spacing
};

MeshSpec mesh_spec_from_json(const json& j);

/// Builds the mesh for a spec, refusing anything above 10^7 vertices.
Mesh build_mesh(const MeshSpec& spec);

SolverParams solver_from_json(const json& j);
FixedPointConfig fixed_point_from_json(const json& j);

/// Full problem bundle {"mesh","young","source","lambda","L","solver",...}.
DiscreteProblem problem_from_json(const json& bundle);

// ---- objects -> report JSON -------------------------------------------------

json to_json(const ScalarFunction& fn);
json to_json(const YoungFunction& yf);
json to_json(const ExponentReport& rep);
json to_json(const ConditionReport& rep);
json to_json(const SolveReport& rep);  // wall_time deliberately omitted
json to_json(const IterationTrace& tr);
json to_json(const MultiStartResult& res);
json to_json(const RescaleResult& rr);  // mesh and field go to CSV, not here
json to_json(const DeviationTable& tab);
json to_json(const ContinuationTable& tab);
json to_json(const LiouvilleProbe& probe);

/// Applies one dotted override "solver.epsilon=1e-7" into a JSON bundle.
/// The value is parsed as a JSON literal when possible, else kept as string.
void apply_override(json& bundle, const std::string& dotted);

// ---- deterministic emission --------------------------------------------------

/// %.17g; every float in emitted artifacts goes through this.
std::string fmt17(double v);

/// JSON text with all floats at 17 significant digits (non-finite -> null),
/// object keys in insertion order.
std::string dump_json17(const json& j, int indent = 2);

void write_text(const std::string& path, const std::string& content);

void write_field_csv(const std::string& path, const Mesh& mesh, const Field& u);
void write_trace_csv(const std::string& path, const IterationTrace& tr);
void write_residual_csv(const std::string& path, const SolveReport& rep);
void write_branch_csv(const std::string& path, std::span<const ContinuationRow> rows);
void write_deviation_csv(const std::string& path, const DeviationTable& tab);
void write_pairs_csv(const std::string& path, const std::string& xname, const std::string& yname,
                     std::span<const double> xs, std::span<const double> ys);

/// Minimal polyline chart; axes plus one line.
void write_polyline_svg(const std::string& path, std::span<const double> xs,
                        std::span<const double> ys, const std::string& title);

}  // namespace glap
