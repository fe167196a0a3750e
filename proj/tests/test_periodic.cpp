#include <doctest.h>

#include <algorithm>

#include "mss/canonical.hpp"
#include "mss/catalog.hpp"
#include "mss/periodic.hpp"
#include "oracles.hpp"

using namespace mss;

namespace {

PeriodicOrbit fake_saddle(double ls, double lu, int period) {
    PeriodicOrbit o;
    o.kind = OrbitKind::Saddle;
    o.period = period;
    o.eigenvalues = {ls, lu};
    o.orientation = lu > 0 ? 1 : -1;
    return o;
}

}  // namespace

TEST_CASE("canonical saddles") {
    for (int nu : {1, -1}) {
        CAPTURE(nu);
        auto orbits = find_periodic_points(canonical_map_spec(nu), 1, 32);
        REQUIRE(orbits.size() == 1);
        const auto& o = orbits[0];
        CHECK(o.kind == OrbitKind::Saddle);
        CHECK(norm(o.points[0].coords) < 1e-9);
        CHECK(std::abs(o.lambda_s() - 0.5 * nu) < 1e-9);
        CHECK(std::abs(o.lambda_u() - 2.0 * nu) < 1e-9);
        CHECK(orientation_type(o) == nu);
        CHECK(std::abs(std::abs(o.eigenvectors[0][0].x) - 1.0) < 1e-9);
        CHECK(std::abs(std::abs(o.eigenvectors[0][1].y) - 1.0) < 1e-9);
    }
}

TEST_CASE("orientation_type and separatrix_period") {
    CHECK(orientation_type(fake_saddle(0.2, 3.7, 1)) == 1);
    CHECK(separatrix_period(fake_saddle(0.5, 2.0, 1), Branch::UnstablePlus) == 1);
    CHECK(separatrix_period(fake_saddle(-0.5, -2.0, 1), Branch::UnstablePlus) == 2);
    CHECK(separatrix_period(fake_saddle(-0.5, -2.0, 1), Branch::StableMinus) == 2);
    CHECK(separatrix_period(fake_saddle(0.5, 2.0, 3), Branch::UnstableMinus) == 3);
    CHECK(separatrix_period(fake_saddle(-0.5, 2.0, 2), Branch::StablePlus) == 4);
}

TEST_CASE("north-south sphere has one sink and one source") {
    MapSpec m = north_south_sphere_map();
    auto orbits = find_periodic_points(m, 1, 32);
    REQUIRE(orbits.size() == 2);
    int sinks = 0, sources = 0;
    for (const auto& o : orbits) {
        sinks += o.kind == OrbitKind::Sink;
        sources += o.kind == OrbitKind::Source;
    }
    CHECK(sinks == 1);
    CHECK(sources == 1);

    // Grid oracle in both charts: each chart sees exactly its own fixed point.
    for (int chart = 0; chart < 2; ++chart) {
        auto residual = [&](Vec2 p) {
            SurfacePoint x{chart, p};
            return m.surface.distance(apply_map(m, x, 1), x);
        };
        auto fixed = oracle::grid_fixed_points(residual, {-1.5, -1.5}, {1.5, 1.5}, 30, 1e-9);
        REQUIRE(fixed.size() == 1);
        CHECK(norm(fixed[0]) < 1e-8);
    }
}

TEST_CASE("gradient torus agrees with the grid oracle") {
    MapSpec m = gradient_torus_map(0.5);
    auto orbits = find_periodic_points(m, 1, 32);
    auto residual = [&](Vec2 p) {
        SurfacePoint x = m.surface.normalize({0, p});
        return m.surface.distance(apply_map(m, x, 1), x);
    };
    std::vector<SurfacePoint> fixed;
    for (Vec2 f : oracle::grid_fixed_points(residual, {-0.05, -0.05}, {0.95, 0.95}, 40, 1e-9)) {
        SurfacePoint x = m.surface.normalize({0, f});
        bool dup = false;
        for (const auto& y : fixed) dup |= m.surface.distance(x, y) < 1e-6;
        if (!dup) fixed.push_back(x);
    }
    REQUIRE(fixed.size() == orbits.size());
    CHECK(orbits.size() == 4);
    for (const auto& x : fixed) {
        double best = 1e9;
        for (const auto& o : orbits) best = std::min(best, m.surface.distance(o.points[0], x));
        CHECK(best < 1e-7);
    }
}

TEST_CASE("catalog orbits satisfy the orbit invariants") {
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        MapSpec m = e.build();
        auto orbits = find_periodic_points(m, e.defaults.max_period, e.defaults.grid_density);
        int sinks = 0, saddles = 0, sources = 0;
        for (const auto& o : orbits) {
            size_t n = o.points.size();
            REQUIRE(n == static_cast<size_t>(o.period));
            for (size_t i = 0; i < n; ++i)
                CHECK(m.surface.distance(apply_map(m, o.points[i], 1), o.points[(i + 1) % n]) < 1e-9);
            double a = std::abs(o.eigenvalues[0]), b = std::abs(o.eigenvalues[1]);
            CHECK(std::abs(a - 1.0) > 1e-6);
            CHECK(std::abs(b - 1.0) > 1e-6);
            if (o.kind == OrbitKind::Saddle) {
                ++saddles;
                CHECK(a < 1.0);
                CHECK(b > 1.0);
                CHECK(o.real_eigenvalues);
                CHECK(orientation_type(o) == (o.lambda_u() > 0 ? 1 : -1));
            } else if (o.kind == OrbitKind::Sink) {
                ++sinks;
                CHECK(b < 1.0);
            } else {
                ++sources;
                CHECK(a > 1.0);
            }
        }
        CHECK(sinks == e.expected.sinks);
        CHECK(saddles == e.expected.saddles);
        CHECK(sources == e.expected.sources);
    }
}

TEST_CASE("orbit list is stable under doubling the grid") {
    for (const char* name : {"gradient-torus-4pt", "nonorientable-chain", "rotating-sink-3", "flip-saddle"}) {
        CAPTURE(name);
        const auto& e = find_catalog_entry(name);
        MapSpec m = e.build();
        auto a = find_periodic_points(m, e.defaults.max_period, 32);
        auto b = find_periodic_points(m, e.defaults.max_period, 64);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].kind == b[i].kind);
            CHECK(m.surface.distance(a[i].points[0], b[i].points[0]) < 1e-6);
        }
    }
}

TEST_CASE("period-3 saddle orbit of the rotating composite") {
    const auto& e = find_catalog_entry("rotating-sink-3");
    auto orbits = find_periodic_points(e.build(), 3, 32);
    auto it = std::find_if(orbits.begin(), orbits.end(), [](const auto& o) { return o.kind == OrbitKind::Saddle; });
    REQUIRE(it != orbits.end());
    CHECK(it->period == 3);
    CHECK(separatrix_period(*it, Branch::UnstablePlus) == 3);
    CHECK(separatrix_period(*it, Branch::UnstableMinus) == 3);
}
