#include "glap/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace glap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double cross2(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return a[0] * b[1] - a[1] * b[0];
}

std::array<double, 2> diff(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return {a[0] - b[0], a[1] - b[1]};
}

// Append a CCW triangle, swapping if handed the clockwise order.
void push_tri(Mesh& mesh, int a, int b, int c) {
    const auto e1 = diff(mesh.vertices[b], mesh.vertices[a]);
    const auto e2 = diff(mesh.vertices[c], mesh.vertices[a]);
    const double s = cross2(e1, e2);
    if (s == 0.0) throw std::logic_error("mesh: degenerate triangle");
    if (s > 0.0)
        mesh.elements.push_back({a, b, c});
    else
        mesh.elements.push_back({a, c, b});
}

void finalize(Mesh& mesh) {
    const std::size_t nv = mesh.vertices.size();
    mesh.element_measures.assign(mesh.elements.size(), 0.0);
    mesh.vertex_masses.assign(nv, 0.0);
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& el = mesh.elements[e];
        double meas;
        if (mesh.dimension == 1) {
            meas = std::abs(mesh.vertices[el[1]][0] - mesh.vertices[el[0]][0]);
            mesh.element_measures[e] = meas;
            mesh.vertex_masses[el[0]] += meas / 2.0;
            mesh.vertex_masses[el[1]] += meas / 2.0;
        } else {
            const auto e1 = diff(mesh.vertices[el[1]], mesh.vertices[el[0]]);
            const auto e2 = diff(mesh.vertices[el[2]], mesh.vertices[el[0]]);
            meas = 0.5 * cross2(e1, e2);
            if (!(meas > 0.0)) throw std::logic_error("mesh: non-positive element area");
            mesh.element_measures[e] = meas;
            for (int k = 0; k < 3; ++k) mesh.vertex_masses[el[k]] += meas / 3.0;
        }
    }
}

}  // namespace

Mesh build_interval(double a, double b, int n_cells) {
    if (!(b > a)) throw std::invalid_argument("build_interval: requires b > a");
    if (n_cells < 2) throw std::invalid_argument("build_interval: need at least 2 cells");
    Mesh mesh;
    mesh.shape = MeshShape::interval;
    mesh.dimension = 1;
    mesh.box_lo = {a, 0.0};
    mesh.box_hi = {b, 0.0};
    const double h = (b - a) / n_cells;
    mesh.vertices.reserve(n_cells + 1);
    for (int i = 0; i <= n_cells; ++i) mesh.vertices.push_back({a + h * i, 0.0});
    mesh.vertices.back() = {b, 0.0};
    for (int i = 0; i < n_cells; ++i) mesh.elements.push_back({i, i + 1, -1});
    mesh.boundary.assign(n_cells + 1, 0);
    mesh.boundary.front() = 1;
    mesh.boundary.back() = 1;
    finalize(mesh);
    return mesh;
}

Mesh build_rectangle(std::array<double, 2> lo, std::array<double, 2> hi, int nx, int ny) {
    if (!(hi[0] > lo[0]) || !(hi[1] > lo[1]))
        throw std::invalid_argument("build_rectangle: requires hi > lo");
    if (nx < 1 || ny < 1) throw std::invalid_argument("build_rectangle: need nx, ny >= 1");
    Mesh mesh;
    mesh.shape = MeshShape::rectangle;
    mesh.dimension = 2;
    mesh.box_lo = lo;
    mesh.box_hi = hi;
    const double hx = (hi[0] - lo[0]) / nx, hy = (hi[1] - lo[1]) / ny;
    const int n_grid = (nx + 1) * (ny + 1);
    mesh.vertices.reserve(n_grid + nx * ny);
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            mesh.vertices.push_back({lo[0] + hx * i, lo[1] + hy * j});
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            mesh.vertices.push_back({lo[0] + hx * (i + 0.5), lo[1] + hy * (j + 0.5)});

    mesh.boundary.assign(mesh.vertices.size(), 0);
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            if (i == 0 || i == nx || j == 0 || j == ny)
                mesh.boundary[j * (nx + 1) + i] = 1;

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int v00 = j * (nx + 1) + i;
            const int v10 = v00 + 1;
            const int v01 = v00 + (nx + 1);
            const int v11 = v01 + 1;
            const int c = n_grid + j * nx + i;
            push_tri(mesh, v00, v10, c);
            push_tri(mesh, v10, v11, c);
            push_tri(mesh, v11, v01, c);
            push_tri(mesh, v01, v00, c);
        }
    finalize(mesh);
    return mesh;
}

Mesh build_disk(double radius, int rings, int sides) {
    if (!(radius > 0.0)) throw std::invalid_argument("build_disk: radius must be positive");
    if (rings < 1 || sides < 6)
        throw std::invalid_argument("build_disk: need rings >= 1 and sides >= 6");
    Mesh mesh;
    mesh.shape = MeshShape::disk;
    mesh.dimension = 2;
    mesh.radius = radius;
    mesh.sides = sides;
    mesh.box_lo = {-radius, -radius};
    mesh.box_hi = {radius, radius};

    mesh.vertices.push_back({0.0, 0.0});
    std::vector<int> ring_start(rings + 1, 0), ring_count(rings + 1, 0);
    ring_start[0] = 0;  // "ring 0" is the center vertex
    ring_count[0] = 1;
    int prev_n = 6;
    for (int j = 1; j <= rings; ++j) {
        int n = j == rings ? sides
                           : std::max<int>(6, static_cast<int>(std::llround(
                                                  static_cast<double>(sides) * j / rings)));
        n = std::max(n, prev_n);
        prev_n = n;
        ring_start[j] = static_cast<int>(mesh.vertices.size());
        ring_count[j] = n;
        const double r = radius * j / rings;
        for (int k = 0; k < n; ++k) {
            const double a = 2.0 * M_PI * k / n;
            mesh.vertices.push_back({r * std::cos(a), r * std::sin(a)});
        }
    }

    // center fan
    for (int k = 0; k < ring_count[1]; ++k)
        push_tri(mesh, 0, ring_start[1] + k, ring_start[1] + (k + 1) % ring_count[1]);

    // stitch consecutive rings by an angle walk
    for (int j = 1; j < rings; ++j) {
        const int ni = ring_count[j], no = ring_count[j + 1];
        const int si = ring_start[j], so = ring_start[j + 1];
        int i = 0, o = 0;
        while (i < ni || o < no) {
            bool advance_outer;
            if (i == ni)
                advance_outer = true;
            else if (o == no)
                advance_outer = false;
            else
                advance_outer = (o + 1.0) / no <= (i + 1.0) / ni;
            if (advance_outer) {
                push_tri(mesh, so + o % no, so + (o + 1) % no, si + i % ni);
                ++o;
            } else {
                push_tri(mesh, si + i % ni, si + (i + 1) % ni, so + o % no);
                ++i;
            }
        }
    }

    mesh.boundary.assign(mesh.vertices.size(), 0);
    for (int k = 0; k < ring_count[rings]; ++k) mesh.boundary[ring_start[rings] + k] = 1;
    finalize(mesh);
    return mesh;
}

std::vector<std::array<double, 2>> gradient_per_element(const Mesh& mesh, const Field& u) {
    if (u.size() != mesh.vertices.size())
        throw std::invalid_argument("gradient_per_element: field size mismatch");
    std::vector<std::array<double, 2>> grads(mesh.elements.size(), {0.0, 0.0});
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& el = mesh.elements[e];
        if (mesh.dimension == 1) {
            grads[e][0] = (u[el[1]] - u[el[0]]) /
                          (mesh.vertices[el[1]][0] - mesh.vertices[el[0]][0]);
        } else {
            const auto& p0 = mesh.vertices[el[0]];
            const auto& p1 = mesh.vertices[el[1]];
            const auto& p2 = mesh.vertices[el[2]];
            const double du1 = u[el[1]] - u[el[0]], du2 = u[el[2]] - u[el[0]];
            const double twoA = 2.0 * mesh.element_measures[e];
            grads[e][0] = (du1 * (p2[1] - p0[1]) + du2 * (p0[1] - p1[1])) / twoA;
            grads[e][1] = (du1 * (p0[0] - p2[0]) + du2 * (p1[0] - p0[0])) / twoA;
        }
    }
    return grads;
}

std::vector<std::array<double, 2>> vertex_gradients(const Mesh& mesh, const Field& u) {
    const auto grads = gradient_per_element(mesh, u);
    std::vector<std::array<double, 2>> out(mesh.vertices.size(), {0.0, 0.0});
    std::vector<double> weight(mesh.vertices.size(), 0.0);
    for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
        const auto& el = mesh.elements[e];
        const double w = mesh.element_measures[e];
        const int nv = mesh.dimension == 1 ? 2 : 3;
        for (int k = 0; k < nv; ++k) {
            out[el[k]][0] += w * grads[e][0];
            out[el[k]][1] += w * grads[e][1];
            weight[el[k]] += w;
        }
    }
    for (std::size_t v = 0; v < out.size(); ++v)
        if (weight[v] > 0.0) {
            out[v][0] /= weight[v];
            out[v][1] /= weight[v];
        }
    return out;
}

double modular(const Mesh& mesh, const YoungFunction& yf, const Field& u, bool gradient) {
    if (u.size() != mesh.vertices.size()) throw std::invalid_argument("modular: field size mismatch");
    double acc = 0.0;
    if (gradient) {
        const auto grads = gradient_per_element(mesh, u);
        for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
            const double s = std::hypot(grads[e][0], grads[e][1]);
            acc += mesh.element_measures[e] * evaluate(yf, YoungEval::G, s);
        }
    } else {
        for (std::size_t v = 0; v < u.size(); ++v)
            acc += mesh.vertex_masses[v] * evaluate(yf, YoungEval::G, std::abs(u[v]));
    }
    return acc;
}

double luxemburg_norm(const Mesh& mesh, const YoungFunction& yf, const Field& u, bool gradient) {
    double scale = 0.0;
    if (gradient) {
        for (const auto& gr : gradient_per_element(mesh, u))
            scale = std::max(scale, std::hypot(gr[0], gr[1]));
    } else {
        scale = sup_norm(u);
    }
    if (scale == 0.0) return 0.0;

    Field scaled(u.size());
    auto mod_at = [&](double lam) {
        for (std::size_t i = 0; i < u.size(); ++i) scaled[i] = u[i] / lam;
        try {
            return modular(mesh, yf, scaled, gradient);
        } catch (const std::domain_error&) {
            return kInf;  // tabulated kind pushed beyond its range: huge modular
        }
    };

    double lo, hi;
    if (mod_at(scale) > 1.0) {
        lo = scale;
        hi = scale;
        int k = 0;
        do {
            hi *= 2.0;
            if (++k > 2100) throw std::runtime_error("luxemburg_norm: no upper bracket");
        } while (mod_at(hi) > 1.0);
    } else {
        hi = scale;
        lo = scale;
        int k = 0;
        do {
            lo *= 0.5;
            if (++k > 2100 || lo < 1e-300) return hi;  // modular <= 1 all the way down
        } while (mod_at(lo) <= 1.0);
    }
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (mod_at(mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-13 * hi) break;
    }
    return hi;
}

namespace {

// Uniform-bin accelerator for point location.
struct Locator {
    const Mesh& mesh;
    int K = 1;
    std::array<double, 2> lo{0, 0};
    std::array<double, 2> span{1, 1};
    std::vector<std::vector<int>> bins;

    explicit Locator(const Mesh& m) : mesh(m) {
        K = std::clamp(static_cast<int>(std::sqrt(static_cast<double>(mesh.elements.size()))), 1,
                       128);
        lo = mesh.box_lo;
        span = {std::max(mesh.box_hi[0] - lo[0], 1e-300),
                std::max(mesh.box_hi[1] - lo[1], 1e-300)};
        bins.resize(static_cast<std::size_t>(K) * K);
        for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
            double bx0 = kInf, bx1 = -kInf, by0 = kInf, by1 = -kInf;
            for (int k = 0; k < 3; ++k) {
                const int v = mesh.elements[e][k];
                if (v < 0) continue;
                bx0 = std::min(bx0, mesh.vertices[v][0]);
                bx1 = std::max(bx1, mesh.vertices[v][0]);
                by0 = std::min(by0, mesh.vertices[v][1]);
                by1 = std::max(by1, mesh.vertices[v][1]);
            }
            const int i0 = cell(bx0, 0), i1 = cell(bx1, 0);
            const int j0 = cell(by0, 1), j1 = cell(by1, 1);
            for (int j = j0; j <= j1; ++j)
                for (int i = i0; i <= i1; ++i)
                    bins[static_cast<std::size_t>(j) * K + i].push_back(static_cast<int>(e));
        }
    }

    int cell(double x, int axis) const {
        const int c = static_cast<int>((x - lo[axis]) / span[axis] * K);
        return std::clamp(c, 0, K - 1);
    }
};

std::array<double, 3> bary_coords(const Mesh& mesh, int e, std::array<double, 2> q) {
    const auto& el = mesh.elements[e];
    const auto& p0 = mesh.vertices[el[0]];
    const double twoA = 2.0 * mesh.element_measures[e];
    const auto e1 = diff(mesh.vertices[el[1]], p0);
    const auto e2 = diff(mesh.vertices[el[2]], p0);
    const auto d = diff(q, p0);
    const double l1 = cross2(d, e2) / twoA;
    const double l2 = cross2(e1, d) / twoA;
    return {1.0 - l1 - l2, l1, l2};
}

}  // namespace

std::vector<InterpValue> interpolate(const Mesh& mesh, const Field& u,
                                     const std::vector<std::array<double, 2>>& points,
                                     double clamp_tol) {
    if (u.size() != mesh.vertices.size())
        throw std::invalid_argument("interpolate: field size mismatch");
    std::vector<InterpValue> out(points.size());

    if (mesh.dimension == 1) {
        const double a = mesh.box_lo[0], b = mesh.box_hi[0];
        const double diam = b - a;
        for (std::size_t q = 0; q < points.size(); ++q) {
            double x = points[q][0];
            bool clamped = false;
            if (x < a || x > b) {
                const double dist = std::max(a - x, x - b);
                if (dist > clamp_tol * diam)
                    throw std::domain_error("interpolate: point outside mesh");
                x = std::clamp(x, a, b);
                clamped = true;
            }
            // vertices are sorted ascending in x
            auto it = std::upper_bound(mesh.vertices.begin(), mesh.vertices.end(), x,
                                       [](double v, const std::array<double, 2>& p) {
                                           return v < p[0];
                                       });
            std::size_t i = static_cast<std::size_t>(std::distance(mesh.vertices.begin(), it));
            i = std::clamp<std::size_t>(i, 1, mesh.vertices.size() - 1) - 1;
            const double x0 = mesh.vertices[i][0], x1 = mesh.vertices[i + 1][0];
            const double s = (x - x0) / (x1 - x0);
            out[q] = {u[i] * (1.0 - s) + u[i + 1] * s, clamped};
        }
        return out;
    }

    const Locator loc(mesh);
    const double diam = std::hypot(mesh.box_hi[0] - mesh.box_lo[0],
                                   mesh.box_hi[1] - mesh.box_lo[1]);
    const double eps_in = 1e-12;
    const double eps_clamp = clamp_tol;  // in barycentric units (shape-regular meshes)

    for (std::size_t q = 0; q < points.size(); ++q) {
        const auto p = points[q];
        int best_e = -1;
        double best_min = -kInf;
        std::array<double, 3> best_l{0, 0, 0};

        auto consider = [&](int e) {
            const auto l = bary_coords(mesh, e, p);
            const double mn = std::min({l[0], l[1], l[2]});
            if (mn > best_min) {
                best_min = mn;
                best_e = e;
                best_l = l;
            }
        };

        const int ci = loc.cell(p[0], 0), cj = loc.cell(p[1], 1);
        for (int e : loc.bins[static_cast<std::size_t>(cj) * loc.K + ci]) consider(e);
        if (best_min < -eps_in) {
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const int i = ci + di, j = cj + dj;
                    if (i < 0 || i >= loc.K || j < 0 || j >= loc.K) continue;
                    for (int e : loc.bins[static_cast<std::size_t>(j) * loc.K + i]) consider(e);
                }
        }
        if (best_min < -eps_clamp) {  // widen to the whole mesh before giving up
            for (std::size_t e = 0; e < mesh.elements.size(); ++e) consider(static_cast<int>(e));
        }
        if (best_e < 0 || best_min < -eps_clamp) {
            throw std::domain_error("interpolate: point outside mesh (distance " +
                                    std::to_string(-best_min) + " in barycentric units, diam " +
                                    std::to_string(diam) + ")");
        }
        auto l = best_l;
        bool clamped = false;
        if (best_min < 0.0) {
            clamped = true;
            for (double& c : l) c = std::max(c, 0.0);
            const double s = l[0] + l[1] + l[2];
            for (double& c : l) c /= s;
        }
        const auto& el = mesh.elements[best_e];
        out[q] = {l[0] * u[el[0]] + l[1] * u[el[1]] + l[2] * u[el[2]], clamped};
    }
    return out;
}

InterpValue interpolate_one(const Mesh& mesh, const Field& u, std::array<double, 2> point,
                            double clamp_tol) {
    return interpolate(mesh, u, {point}, clamp_tol)[0];
}

double sup_norm(const Field& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

int argmax_abs(const Field& u) {
    int best = 0;
    double bv = -1.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (std::abs(u[i]) > bv) {
            bv = std::abs(u[i]);
            best = static_cast<int>(i);
        }
    return best;
}

}  // namespace glap
