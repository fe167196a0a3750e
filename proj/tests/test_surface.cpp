#include <doctest.h>

#include <random>

#include "mss/canonical.hpp"
#include "mss/catalog.hpp"
#include "mss/error.hpp"
#include "mss/surface.hpp"

using namespace mss;

namespace {

MapSpec torus_translation(Vec2 t) {
    MapSpec m;
    m.name = "translation";
    m.surface = SurfaceModel::torus();
    m.forward = {[t](Vec2 p) { return p + t; }};
    m.inverse = {[t](Vec2 p) { return p - t; }};
    return m;
}

MapSpec plane_map(ChartFn f, ChartFn inv = nullptr, double bound = 1e6) {
    MapSpec m;
    m.surface = SurfaceModel::plane(bound);
    m.forward = {std::move(f)};
    if (inv) m.inverse = {std::move(inv)};
    return m;
}

// Random valid points inside the search region of a map.
std::vector<SurfacePoint> sample_points(const MapSpec& m, int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<SurfacePoint> out;
    auto boxes = m.search_boxes();
    for (int i = 0; i < n; ++i) {
        size_t k = static_cast<size_t>(i) % boxes.size();
        const Box& b = boxes[k];
        Vec2 p{b.lo.x + (b.hi.x - b.lo.x) * u(rng), b.lo.y + (b.hi.y - b.lo.y) * u(rng)};
        int chart = m.surface.chart_count() == 2 ? static_cast<int>(k % 2) : 0;
        out.push_back(m.surface.normalize({chart, p}));
    }
    return out;
}

}  // namespace

TEST_CASE("apply_map examples") {
    MapSpec a1 = canonical_map_spec(1);
    SurfacePoint y = apply_map(a1, {0, {1, 1}}, 1);
    CHECK(y.coords.x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(y.coords.y == doctest::Approx(2.0).epsilon(1e-15));

    SurfacePoint x{0, {0.123456789, -3.5}};
    SurfacePoint same = apply_map(a1, x, 0);
    CHECK(same.coords == x.coords);
    CHECK(same.chart == x.chart);

    MapSpec tr = torus_translation({0.4, 0.0});
    SurfacePoint w = apply_map(tr, {0, {0.9, 0.5}}, 1);
    CHECK(w.coords.x == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(w.coords.y == doctest::Approx(0.5).epsilon(1e-12));
    SurfacePoint back = apply_map(tr, w, -1);
    CHECK(back.coords.x == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("apply_map errors") {
    MapSpec no_inv = plane_map([](Vec2 p) { return p * 0.5; });
    CHECK_THROWS_AS(apply_map(no_inv, {0, {1, 1}}, -1), Error);
    try {
        apply_map(no_inv, {0, {1, 1}}, -1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoInverse);
    }
    MapSpec grow = plane_map([](Vec2 p) { return p * 2.0; }, [](Vec2 p) { return p * 0.5; }, 10.0);
    try {
        apply_map(grow, {0, {6, 0}}, 1);
        FAIL("expected ChartEscape");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ChartEscape);
        CHECK(e.out_of_scope());
    }
}

TEST_CASE("apply_jacobian examples") {
    Mat2 j1 = apply_jacobian(canonical_map_spec(1), {0, {0.3, -7}});
    CHECK(j1.a == 0.5);
    CHECK(j1.d == 2.0);
    CHECK(j1.b == 0.0);
    CHECK(j1.c == 0.0);
    Mat2 jm = apply_jacobian(canonical_map_spec(-1), {0, {2, 1}});
    CHECK(jm.a == -0.5);
    CHECK(jm.d == -2.0);
    CHECK(jm.det() == doctest::Approx(1.0));

    MapSpec id = plane_map([](Vec2 p) { return p; });
    Mat2 ji = apply_jacobian(id, {0, {1.5, -2.5}});
    CHECK((ji - Mat2::identity()).max_abs() < 1e-8);

    MapSpec flip = plane_map([](Vec2 p) { return Vec2{p.x, -p.y}; });
    try {
        apply_jacobian(flip, {0, {0, 0}});
        FAIL("expected NonOrientationPreserving");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonOrientationPreserving);
    }
}

TEST_CASE("frame_sign examples") {
    SurfaceModel p = SurfaceModel::plane();
    SurfacePoint x{0, {0.2, 0.3}};
    CHECK(frame_sign(p, x, {1, 0}, {0, 1}) == 1);
    CHECK(frame_sign(p, x, {0, 1}, {1, 0}) == -1);
    CHECK(frame_sign(p, x, {1, 0}, {2, 0}) == 0);
}

TEST_CASE("sphere transitions are mutually inverse and frame_sign is chart independent") {
    SurfaceModel s = SurfaceModel::sphere();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> rad(0.3, 3.0), ang(0.0, 6.283185307179586), comp(-1.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        double r = rad(rng), t = ang(rng);
        Vec2 z{r * std::cos(t), r * std::sin(t)};
        auto w = s.transition(0, 1, z);
        REQUIRE(w);
        auto z2 = s.transition(1, 0, *w);
        REQUIRE(z2);
        CHECK(norm(*z2 - z) < 1e-10);

        Mat2 j = s.transition_jacobian(0, 1, z);
        // Oriented atlas once chart 1's orientation convention is applied.
        CHECK(j.det() * s.orientation(0) * s.orientation(1) > 0);
        Mat2 back = s.transition_jacobian(1, 0, *w) * j;
        CHECK((back - Mat2::identity()).max_abs() < 1e-9);

        Vec2 u{comp(rng), comp(rng)}, v{comp(rng), comp(rng)};
        if (std::abs(cross(u, v)) < 1e-6) continue;
        CHECK(s.frame_sign({0, z}, u, v) == s.frame_sign({1, *w}, j * u, j * v));
        ++checked;
    }
    CHECK(checked > 90);
}

TEST_CASE("torus points are normalized into the unit square") {
    SurfaceModel t = SurfaceModel::torus();
    SurfacePoint p = t.normalize({0, {-0.25, 3.75}});
    CHECK(p.coords.x == doctest::Approx(0.75));
    CHECK(p.coords.y == doctest::Approx(0.75));
    CHECK(t.valid(p));
    CHECK(t.distance({0, {0.95, 0.5}}, {0, {0.05, 0.5}}) == doctest::Approx(0.1));
}

TEST_CASE("catalog maps preserve orientation and invert to 1e-9") {
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        MapSpec m = e.build();
        for (const auto& x : sample_points(m, 1000, 11)) {
            Mat2 j = apply_jacobian(m, x);
            CHECK(j.det() > 0);
        }
        for (const auto& x : sample_points(m, 200, 12)) {
            SurfacePoint y = apply_map(m, apply_map(m, x, 1), -1);
            CHECK(m.surface.distance(x, y) < 1e-9);
        }
    }
}

TEST_CASE("newton_inverse inverts a nonlinear plane map") {
    ChartFn f = [](Vec2 p) { return Vec2{0.5 * p.x + 0.2 * p.y * p.y, 2.0 * p.y + 0.1 * std::sin(p.x)}; };
    ChartFn g = newton_inverse(f, nullptr, false);
    for (Vec2 p : {Vec2{0.3, -0.2}, Vec2{1.5, 0.7}, Vec2{-2.0, 1.1}}) CHECK(norm(f(g(p)) - p) < 1e-10);
}
