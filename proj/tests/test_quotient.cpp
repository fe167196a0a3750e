#include <doctest.h>

#include <random>

#include "mss/catalog.hpp"
#include "mss/error.hpp"
#include "mss/pipeline.hpp"
#include "mss/quotient.hpp"

using namespace mss;

namespace {

MapSpec halving() {
    MapSpec m;
    m.name = "halving";
    m.surface = SurfaceModel::plane();
    m.forward = {[](Vec2 p) { return p * 0.5; }};
    m.inverse = {[](Vec2 p) { return p * 2.0; }};
    return m;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::IoError;
}

const QuotientSummary& only_quotient(const AnalysisReport& r) {
    REQUIRE(r.quotients.size() == 1);
    return r.quotients[0];
}

}  // namespace

TEST_CASE("linear sink x/2") {
    MapSpec m = halving();
    PeriodicOrbit sink = classify_orbit(m, {0, {0, 0}}, 1);
    QuotientChart q = build_sink_quotient(m, sink, 1.0);
    CHECK(q.period == 1);
    CHECK(q.components == 1);
    AnnulusPoint a = project_point(m, q, {0, {0.1, 0}});
    // 0.1 -> 0.2 -> 0.4 -> 0.8: three steps of f^-1.
    CHECK(a.level == -3);
    CHECK(a.representative.coords.x == doctest::Approx(0.8));
    CHECK(a.theta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(kind_of([&] { project_point(m, q, {0, {0, 0}}); }) == ErrorKind::NotInBasin);
}

TEST_CASE("exactly one level per basin point") {
    MapSpec m = halving();
    PeriodicOrbit sink = classify_orbit(m, {0, {0, 0}}, 1);
    QuotientChart q = build_sink_quotient(m, sink, 1.0);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0), e(-12.0, 3.0);
    for (int i = 0; i < 1000; ++i) {
        Vec2 dir{u(rng), u(rng)};
        if (norm(dir) < 1e-3) continue;
        Vec2 x = normalized(dir) * std::pow(2.0, e(rng));
        int hits = 0, hit_level = -1000;
        Vec2 y = x;
        for (int k = 0; k < 40; ++k, y = y * 0.5) {
            double r = norm(y);
            if (r > 0.5 && r <= 1.0) {
                ++hits;
                hit_level = k;
            }
        }
        // Points deep inside D reach the annulus under f^-1.
        y = x * 2.0;
        for (int k = -1; k > -40; --k, y = y * 2.0) {
            double r = norm(y);
            if (r > 0.5 && r <= 1.0) {
                ++hits;
                hit_level = k;
            }
        }
        CHECK(hits == 1);
        AnnulusPoint a = project_point(m, q, {0, x});
        CHECK(a.level == hit_level);
    }
}

TEST_CASE("projection is constant along orbits") {
    for (const char* name : {"saddle-sink-composite", "rotating-sink-3", "flip-saddle"}) {
        CAPTURE(name);
        const auto& e = find_catalog_entry(name);
        MapSpec m = e.build();
        AnalysisOptions o = e.defaults;
        o.boundary_curves = false;
        AnalysisReport r = run_analyze(m, o);
        const QuotientSummary& qs = only_quotient(r);
        REQUIRE(qs.error.empty());
        const QuotientChart& q = qs.chart;
        std::mt19937 rng(4);
        std::uniform_real_distribution<double> u(-0.3, 0.3);
        int mv = q.period;
        for (int i = 0; i < 200; ++i) {
            SurfacePoint x{0, q.center.coords + Vec2{u(rng), u(rng)}};
            if (q.rho(m.surface, x) < 1e-3) continue;
            AnnulusPoint a = project_point(m, q, x);
            AnnulusPoint b = project_point(m, q, apply_map(m, x, mv));
            CHECK(std::abs(a.s - b.s) < 1e-9);
            double dt = std::abs(a.theta - b.theta);
            CHECK(std::min(dt, 1.0 - dt) < 1e-9);
        }
    }
}

TEST_CASE("period-2 sink orbit records two components") {
    const auto& e = find_catalog_entry("flip-saddle");
    AnalysisReport r = run_analyze(e.build(), e.defaults);
    const QuotientSummary& q = only_quotient(r);
    CHECK(q.chart.period == 2);
    CHECK(q.chart.components == 2);
    for (const auto& c : q.curves) {
        CHECK(c.m_gamma == 2);
        CHECK(c.curve.closed);
        CHECK(c.curve.winding == 1);
    }
}

TEST_CASE("separatrix circles close and wind m_gamma / m_omega times") {
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        AnalysisReport r = run_analyze(e.build(), e.defaults);
        for (const auto& q : r.quotients) {
            CHECK(q.error.empty());
            for (const auto& c : q.curves) {
                CAPTURE(c.separatrix);
                CHECK(c.error.empty());
                CHECK(c.curve.closed);
                CHECK(c.curve.closure_gap < 1e-6);
                CHECK(c.curve.winding == c.m_gamma / q.chart.period);
                CHECK(c.curve.winding == e.expected.winding);
                CHECK(static_cast<int>(c.curve.gluing_thetas.size()) == c.curve.winding);
                // Boundary curves of the saddle neighborhood are homotopic to the circle.
                for (const auto& b : c.boundary) {
                    CHECK(b.closed);
                    CHECK(b.winding == c.curve.winding);
                }
            }
        }
    }
}

TEST_CASE("quotient errors") {
    MapSpec m = halving();
    PeriodicOrbit sink = classify_orbit(m, {0, {0, 0}}, 1);
    CHECK(kind_of([&] { build_sink_quotient(m, sink, -1.0); }) == ErrorKind::InvalidArgument);

    // Radial map r -> r/2 + r^3: trapping only for small circles.
    MapSpec cubic;
    cubic.surface = SurfaceModel::plane();
    ChartFn f = [](Vec2 p) { return p * (0.5 + dot(p, p)); };
    cubic.forward = {f};
    cubic.inverse = {newton_inverse(f, nullptr, false)};
    PeriodicOrbit s2 = classify_orbit(cubic, {0, {0, 0}}, 1);
    CHECK(kind_of([&] { build_sink_quotient(cubic, s2, 1.0); }) == ErrorKind::NotTrapping);
    CHECK_NOTHROW(build_sink_quotient(cubic, s2, 0.25));

    const auto& e = find_catalog_entry("canonical-plus");
    MapSpec a1 = e.build();
    PeriodicOrbit saddle = classify_orbit(a1, {0, {0, 0}}, 1);
    CHECK(kind_of([&] { build_sink_quotient(a1, saddle, 1.0); }) == ErrorKind::InvalidArgument);

    // Outside the basin: orbits of the cubic map with r > 1/sqrt(2) run off to infinity.
    QuotientChart q2 = build_sink_quotient(cubic, s2, 0.25);
    CHECK(kind_of([&] { project_point(cubic, q2, {0, {2, 0}}); }) == ErrorKind::NotInBasin);
    Separatrix st = grow_separatrix(a1, saddle, Stability::Stable, 1, 2.0);
    CHECK(kind_of([&] { project_curve(cubic, q2, st); }) == ErrorKind::InvalidArgument);
}
