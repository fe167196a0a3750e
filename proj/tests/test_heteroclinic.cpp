#include <doctest.h>

#include <map>
#include <random>

#include "mss/canonical.hpp"
#include "mss/catalog.hpp"
#include "mss/heteroclinic.hpp"
#include "mss/pipeline.hpp"
#include "oracles.hpp"

using namespace mss;

namespace {

std::vector<SurfacePoint> polyline(const SurfaceModel& s, std::vector<Vec2> pts) {
    std::vector<SurfacePoint> out;
    for (Vec2 p : pts) out.push_back(s.normalize({0, p}));
    return out;
}

std::vector<SurfacePoint> random_walk(const SurfaceModel& s, std::mt19937& rng, int n, double step) {
    std::uniform_real_distribution<double> u(0.0, 1.0), d(-step, step);
    Vec2 p{u(rng), u(rng)};
    std::vector<Vec2> pts{p};
    for (int i = 0; i < n; ++i) {
        p += Vec2{d(rng), d(rng)};
        pts.push_back(p);
    }
    return polyline(s, pts);
}

HeteroclinicPoint at(Vec2 p, double param_s) {
    HeteroclinicPoint h;
    h.location = h.refined_location = {0, p};
    h.from_saddle = 1;
    h.to_saddle = 0;
    h.param_s = param_s;
    return h;
}

}  // namespace

TEST_CASE("perpendicular axes cross once with sign -1") {
    SurfaceModel s = SurfaceModel::plane();
    auto u = polyline(s, {{0, -1}, {0, 1}});
    auto v = polyline(s, {{-1, 0}, {1, 0}});
    auto c = find_crossings(s, u, v);
    REQUIRE(c.size() == 1);
    CHECK(norm(c[0].point) < 1e-15);
    CHECK(frame_sign(s, {0, c[0].point}, {0, 1}, {1, 0}) == -1);
    CHECK(find_crossings(s, u, polyline(s, {{2, 0}, {3, 0}})).empty());
}

TEST_CASE("segment intersection is half-open") {
    double tu, ts;
    CHECK(segment_intersection({0, 0}, {1, 0}, {0.5, -1}, {0.5, 1}, tu, ts));
    CHECK(tu == doctest::Approx(0.5));
    CHECK(ts == doctest::Approx(0.5));
    CHECK(segment_intersection({0, 0}, {1, 0}, {0, -1}, {0, 1}, tu, ts));
    CHECK_FALSE(segment_intersection({0, 0}, {1, 0}, {1, -1}, {1, 1}, tu, ts));
    CHECK_FALSE(segment_intersection({0, 0}, {1, 0}, {0, 1}, {1, 1}, tu, ts));
}

TEST_CASE("sweep matches the all-pairs oracle on random polylines") {
    std::mt19937 rng(17);
    for (SurfaceModel s : {SurfaceModel::plane(), SurfaceModel::torus()}) {
        for (int trial = 0; trial < 40; ++trial) {
            auto u = random_walk(s, rng, 200, 0.08);
            auto v = random_walk(s, rng, 200, 0.08);
            auto fast = find_crossings(s, u, v);
            auto slow = oracle::all_pairs_crossings(s, u, v);
            REQUIRE(fast.size() == slow.size());
            for (size_t i = 0; i < fast.size(); ++i) {
                CHECK(fast[i].seg_u == slow[i].seg_u);
                CHECK(fast[i].seg_s == slow[i].seg_s);
                CHECK(s.distance({0, fast[i].point}, s.normalize({0, slow[i].point})) < 1e-9);
            }
        }
    }
}

TEST_CASE("dedup_by_orbit") {
    MapSpec m = canonical_map_spec(1);
    std::vector<HeteroclinicPoint> none;
    CHECK(dedup_by_orbit(none, m, 12).empty());

    Vec2 x{0.8, 0.3};
    std::vector<HeteroclinicPoint> chain{at(x, 2.0), at(canonical_apply({1}, x), 1.0),
                                         at(canonical_apply({1}, canonical_apply({1}, x)), 0.0)};
    auto reps = dedup_by_orbit(chain, m, 12);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].param_s == 0.0);
    CHECK(chain[0].orbit_id == chain[2].orbit_id);

    std::vector<HeteroclinicPoint> sides{at({0.3, 0.7}, 0.0), at({-0.3, 0.7}, 0.0)};
    CHECK(dedup_by_orbit(sides, m, 12).size() == 2);
    CHECK(sides[0].orbit_id != sides[1].orbit_id);
}

TEST_CASE("classify_orientability") {
    auto with_signs = [](std::vector<int> signs) {
        std::vector<HeteroclinicPoint> v;
        for (int s : signs) {
            HeteroclinicPoint h;
            h.sign = s;
            v.push_back(h);
        }
        return v;
    };
    CHECK(classify_orientability(with_signs({1, 1, 1})) == Orientability::Orientable);
    CHECK(classify_orientability(with_signs({-1, -1})) == Orientability::Orientable);
    CHECK(classify_orientability(with_signs({1, -1})) == Orientability::NonOrientable);
    CHECK(classify_orientability({}) == Orientability::Vacuous);
}

TEST_CASE("catalog crossings: oracle count, location, tangents and f-invariant signs") {
    for (const auto& e : catalog()) {
        CAPTURE(e.name);
        AnalysisOptions o = e.defaults;
        o.boundary_curves = false;
        MapSpec m = e.build();
        AnalysisReport r = run_analyze(m, o);
        size_t oracle_total = 0;
        for (const auto& su : r.separatrices) {
            if (su.stability != Stability::Unstable) continue;
            for (const auto& ss : r.separatrices) {
                if (ss.stability != Stability::Stable || ss.owner == su.owner) continue;
                auto slow = oracle::all_pairs_crossings(m.surface, su.polyline(), ss.polyline());
                auto fast = find_crossings(m.surface, su.polyline(), ss.polyline());
                CHECK(fast.size() == slow.size());
                oracle_total += slow.size();
            }
        }
        CHECK(r.crossings.size() == oracle_total);

        std::map<int, int> sign_of_orbit;
        for (const auto& h : r.crossings) {
            CHECK(h.sign != 0);
            CHECK(h.sign == frame_sign(m.surface, h.refined_location, h.v_u, h.v_s));
            const auto& su = r.separatrices[static_cast<size_t>(h.unstable_separatrix)];
            const auto& ss = r.separatrices[static_cast<size_t>(h.stable_separatrix)];
            CHECK(distance_to_polyline(m.surface, h.location, su.polyline()) < 1e-9);
            CHECK(distance_to_polyline(m.surface, h.location, ss.polyline()) < 1e-9);
            // v_u points toward f^{m_u}(x) along W^u, v_s toward f^{m_s}(x) along W^s.
            CHECK(su.stability == Stability::Unstable);
            auto [pu, tu] = curve_tangent(m, su.seed(), h.param_u, 1e-6);
            auto [ps, ts] = curve_tangent(m, ss.seed(), h.param_s, 1e-6);
            CHECK(dot(tu, h.v_u) > 0);
            CHECK(dot(ts, h.v_s) < 0);
            auto [it, fresh] = sign_of_orbit.emplace(h.orbit_id, h.sign);
            if (!fresh) CHECK(it->second == h.sign);
        }
        CHECK(sign_of_orbit.size() == r.heteroclinic_orbits.size());
    }
}

TEST_CASE("default k_max scales with period and budget") {
    CHECK(default_k_max(1, 4.0) == 12);
    CHECK(default_k_max(2, 2.5) == 18);
}
