#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "glap/fixed_point.hpp"
#include "glap/mesh.hpp"

using namespace glap;

namespace {

double total_measure(const Mesh& m) {
    return std::accumulate(m.element_measures.begin(), m.element_measures.end(), 0.0);
}

double total_mass(const Mesh& m) {
    return std::accumulate(m.vertex_masses.begin(), m.vertex_masses.end(), 0.0);
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("interval mesh bookkeeping") {
    const Mesh m = build_interval(0.0, 1.0, 8);
    CHECK(m.dimension == 1);
    CHECK(m.vertices.size() == 9);
    CHECK(m.elements.size() == 8);
    CHECK(m.boundary.front() == 1);
    CHECK(m.boundary.back() == 1);
    CHECK(std::count(m.boundary.begin(), m.boundary.end(), 1) == 2);
    for (double w : m.element_measures) CHECK(w == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(total_mass(m) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("criss-cross rectangle bookkeeping") {
    const Mesh m = build_rectangle({0, 0}, {1, 1}, 4, 4);
    CHECK(m.dimension == 2);
    CHECK(m.vertices.size() == 5 * 5 + 4 * 4);  // grid + cell centers
    CHECK(m.elements.size() == 4 * 16);
    CHECK(std::count(m.boundary.begin(), m.boundary.end(), 1) == 16);
    CHECK(total_measure(m) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(total_mass(m) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("disk mesh covers the inscribed polygon") {
    const int sides = 24;
    const Mesh m = build_disk(2.0, 4, sides);
    CHECK(m.dimension == 2);
    CHECK(std::count(m.boundary.begin(), m.boundary.end(), 1) == sides);
    const double poly = 0.5 * sides * 4.0 * std::sin(2 * std::numbers::pi / sides);
    CHECK(total_measure(m) == doctest::Approx(poly).epsilon(1e-12));
    CHECK(m.vertices[0][0] == 0.0);  // center vertex first
    CHECK(m.vertices[0][1] == 0.0);
}

TEST_CASE("gradients are exact on linear fields") {
    const Mesh m2 = build_rectangle({0, 0}, {2, 1}, 5, 3);
    Field u(m2.vertices.size());
    for (std::size_t v = 0; v < u.size(); ++v)
        u[v] = 3.0 * m2.vertices[v][0] + 2.0 * m2.vertices[v][1] - 1.0;
    for (const auto& grad : gradient_per_element(m2, u)) {
        CHECK(grad[0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(grad[1] == doctest::Approx(2.0).epsilon(1e-12));
    }
    const Mesh m1 = build_interval(-1.0, 1.0, 7);
    Field w(m1.vertices.size());
    for (std::size_t v = 0; v < w.size(); ++v) w[v] = 3.0 * m1.vertices[v][0];
    for (const auto& grad : gradient_per_element(m1, w)) {
        CHECK(grad[0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(grad[1] == 0.0);
    }
}

TEST_CASE("luxemburg norm equals the discrete Lp norm for G = t^p") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> amp(-2.0, 2.0);
    for (double p : {2.0, 3.0}) {
        const auto yf = YoungFunction::make_plog(p, 0.0);  // exactly t^p
        const Mesh m = build_interval(0.0, 1.0, 32);
        for (int rep = 0; rep < 50; ++rep) {
            Field u(m.vertices.size());
            for (std::size_t v = 0; v < u.size(); ++v) u[v] = m.boundary[v] ? 0.0 : amp(rng);
            const double lux = luxemburg_norm(m, yf, u, false);
            const double lp = std::pow(modular(m, yf, u, false), 1.0 / p);
            CHECK(std::abs(lux - lp) <= 1e-8 * std::max(1e-30, lp));
        }
    }
}

TEST_CASE("luxemburg homogeneity and unit ball") {
    const auto yf = YoungFunction::make_plog(2.0, 1.0);  // non-power, so nothing cancels
    const Mesh m = build_interval(0.0, 1.0, 16);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> amp(-3.0, 3.0);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    for (int rep = 0; rep < 200; ++rep) {
        Field u(m.vertices.size());
        for (std::size_t v = 0; v < u.size(); ++v) u[v] = m.boundary[v] ? 0.0 : amp(rng);
        const double lux = luxemburg_norm(m, yf, u, false);
        REQUIRE(lux > 0.0);
        // unit ball: the returned norm lands on the feasible side of the bracket
        Field scaled = u;
        for (auto& x : scaled) x /= lux;
        CHECK(modular(m, yf, scaled, false) <= 1.0);
        Field pushed = u;
        for (auto& x : pushed) x /= lux * (1.0 - 1e-6);
        CHECK(modular(m, yf, pushed, false) > 1.0 - 1e-8);
        // homogeneity
        const double c = (rep % 2 == 0 ? 1.0 : -1.0) * scale(rng);
        Field cu = u;
        for (auto& x : cu) x *= c;
        CHECK(luxemburg_norm(m, yf, cu, false) ==
              doctest::Approx(std::abs(c) * lux).epsilon(1e-10));
    }
}

TEST_CASE("gradient modular and norm on a linear field") {
    const auto yf = YoungFunction::make_plog(2.0, 0.0);
    const Mesh m = build_rectangle({0, 0}, {1, 1}, 6, 6);
    Field u(m.vertices.size());
    for (std::size_t v = 0; v < u.size(); ++v) u[v] = 1.5 * m.vertices[v][0];
    // |grad u| = 1.5 everywhere, |domain| = 1
    CHECK(modular(m, yf, u, true) == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(luxemburg_norm(m, yf, u, true) == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("interpolation reproduces linear fields") {
    const Mesh m = build_rectangle({0, 0}, {1, 1}, 8, 8);
    Field u(m.vertices.size());
    for (std::size_t v = 0; v < u.size(); ++v)
        u[v] = 2.0 * m.vertices[v][0] - 0.5 * m.vertices[v][1] + 0.25;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    std::vector<std::array<double, 2>> pts;
    for (int i = 0; i < 40; ++i) pts.push_back({pos(rng), pos(rng)});
    for (const auto& [pt, val] : [&] {
             std::vector<std::pair<std::array<double, 2>, InterpValue>> out;
             const auto vals = interpolate(m, u, pts);
             for (std::size_t i = 0; i < pts.size(); ++i) out.emplace_back(pts[i], vals[i]);
             return out;
         }()) {
        CHECK(val.value == doctest::Approx(2.0 * pt[0] - 0.5 * pt[1] + 0.25).epsilon(1e-12));
        CHECK_FALSE(val.clamped);
    }
    // slightly outside: clamped; far outside: throws
    const auto near = interpolate_one(m, u, {1.0 + 1e-9, 0.5});
    CHECK(near.clamped);
    CHECK_THROWS_AS(interpolate_one(m, u, {3.0, 0.5}), std::domain_error);
}

TEST_CASE("sup norm and argmax") {
    const Field u{0.0, -3.0, 2.0, 0.5};
    CHECK(sup_norm(u) == 3.0);
    CHECK(argmax_abs(u) == 1);
    CHECK(sup_norm(Field{}) == 0.0);
}

TEST_CASE("bump fields vanish on the boundary and hit their height") {
    for (const Mesh& m : {build_interval(0.0, 1.0, 32), build_rectangle({0, 0}, {1, 1}, 8, 8),
                          build_disk(1.0, 6, 24)}) {
        const Field b = bump_field(m, 2.5);
        double mx = 0.0;
        for (std::size_t v = 0; v < b.size(); ++v) {
            if (m.boundary[v]) {
                CHECK(b[v] == 0.0);
            } else {
                CHECK(b[v] >= 0.0);
            }
            mx = std::max(mx, b[v]);
        }
        CHECK(mx == doctest::Approx(2.5).epsilon(1e-12));
    }
}

}  // TEST_SUITE
