#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "glap/young.hpp"

namespace glap {

enum class MeshShape { interval, rectangle, disk };

/// Simplicial P1 mesh in 1D (segments) or 2D (CCW triangles). 1D elements
/// store -1 in the third slot.
struct Mesh {
    MeshShape shape = MeshShape::interval;
    int dimension = 1;
    std::array<double, 2> box_lo{0, 0};  // bounding box
    std::array<double, 2> box_hi{0, 0};
    double radius = 0.0;  // disk only
    int sides = 0;        // disk only: boundary polygon vertex count

    std::vector<std::array<double, 2>> vertices;
    std::vector<std::array<int, 3>> elements;
    std::vector<std::uint8_t> boundary;  // 1 on the Dirichlet boundary
    std::vector<double> element_measures;
    std::vector<double> vertex_masses;  // lumped (row-sum) mass
};

using Field = std::vector<double>;

Mesh build_interval(double a, double b, int n_cells);

/// Criss-cross mesh: each grid cell is split into 4 triangles around its
/// center vertex. With square cells every triangle is right isosceles, which
/// keeps the P1 stiffness matrix an M-matrix.
Mesh build_rectangle(std::array<double, 2> lo, std::array<double, 2> hi, int nx, int ny);

/// Polygonal disk: `rings` concentric vertex rings stitched with triangles;
/// ring j carries about sides*j/rings vertices, the outermost exactly `sides`.
Mesh build_disk(double radius, int rings, int sides);

std::vector<std::array<double, 2>> gradient_per_element(const Mesh& mesh, const Field& u);

/// Measure-weighted average of incident element gradients.
std::vector<std::array<double, 2>> vertex_gradients(const Mesh& mesh, const Field& u);

/// Phi_G(u) = sum_v mass_v G(|u_v|)  (lumped vertex quadrature), or with
/// gradient=true  Phi_{1,G}(u) = sum_e |e| G(|grad u|_e).
double modular(const Mesh& mesh, const YoungFunction& yf, const Field& u, bool gradient);

/// Luxemburg norm inf{ lam > 0 : modular(u/lam) <= 1 }. Returns the upper end
/// of the final bisection bracket, so the unit-ball property holds exactly.
double luxemburg_norm(const Mesh& mesh, const YoungFunction& yf, const Field& u, bool gradient);

struct InterpValue {
    double value = 0.0;
    bool clamped = false;  // point fell (slightly) outside and was projected
};

/// P1 interpolation with a uniform-bin point locator. Points within
/// `clamp_tol` (relative to the mesh diameter) outside the mesh are evaluated
/// on the nearest element with barycentric clamping; farther points throw.
std::vector<InterpValue> interpolate(const Mesh& mesh, const Field& u,
                                     const std::vector<std::array<double, 2>>& points,
                                     double clamp_tol = 1e-6);

InterpValue interpolate_one(const Mesh& mesh, const Field& u, std::array<double, 2> point,
                            double clamp_tol = 1e-6);

double sup_norm(const Field& u);
int argmax_abs(const Field& u);

}  // namespace glap
