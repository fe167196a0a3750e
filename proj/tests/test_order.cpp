#include <doctest.h>

#include <algorithm>
#include <random>

#include "mss/error.hpp"
#include "mss/order.hpp"
#include "oracles.hpp"

using namespace mss;

namespace {

std::vector<PeriodicOrbit> orbits_of(std::vector<OrbitKind> kinds) {
    std::vector<PeriodicOrbit> v;
    for (size_t i = 0; i < kinds.size(); ++i) {
        PeriodicOrbit o;
        o.id = static_cast<int>(i);
        o.kind = kinds[i];
        v.push_back(o);
    }
    return v;
}

std::vector<Witness> witnesses(const std::vector<std::pair<int, int>>& edges) {
    std::vector<Witness> w;
    int k = 0;
    for (auto [a, b] : edges) w.push_back({a, b, k++});
    return w;
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("single witness gives one saddle edge and beh 1") {
    auto g = build_order_graph(orbits_of({OrbitKind::Saddle, OrbitKind::Saddle}), witnesses({{1, 0}}), {});
    CHECK(g.saddle_edge_count() == 1);
    CHECK(g.beh == 1);
    CHECK(compute_beh(g) == 1);
}

TEST_CASE("no saddle edges") {
    auto g = build_order_graph(orbits_of({OrbitKind::Sink, OrbitKind::Saddle, OrbitKind::Saddle, OrbitKind::Source}),
                               {}, witnesses({{1, 0}, {2, 0}, {3, 1}, {3, 2}}));
    CHECK(g.beh == 0);
    REQUIRE(g.layers.size() == 3);
    CHECK(g.layers[0] == std::vector<int>{0});
    CHECK(sorted(g.layers[1]) == std::vector<int>{1, 2});
    CHECK(g.layers[2] == std::vector<int>{3});
    CHECK(g.saddle_edge_count() == 0);
}

TEST_CASE("three-saddle chain") {
    auto g = build_order_graph(orbits_of({OrbitKind::Saddle, OrbitKind::Saddle, OrbitKind::Saddle}),
                               witnesses({{2, 1}, {1, 0}}), {});
    CHECK(g.beh == 2);
    REQUIRE(g.layers.size() == 5);
    CHECK(g.layers[1] == std::vector<int>{0});
    CHECK(g.layers[2] == std::vector<int>{1});
    CHECK(g.layers[3] == std::vector<int>{2});
    CHECK(beh_relative(g, 2, {0}) == 2);
    CHECK(beh_relative(g, 0, {2}) == 0);
}

TEST_CASE("diamond layering and transitive edges") {
    // 3 -> {1, 2} -> 0, plus the implied 3 -> 0.
    auto g = build_order_graph(orbits_of(std::vector<OrbitKind>(4, OrbitKind::Saddle)),
                               witnesses({{3, 1}, {3, 2}, {1, 0}, {2, 0}, {3, 0}}), {});
    CHECK(g.beh == 2);
    CHECK(g.layers[1] == std::vector<int>{0});
    CHECK(sorted(g.layers[2]) == std::vector<int>{1, 2});
    CHECK(g.layers[3] == std::vector<int>{3});
    CHECK(g.saddle_edge_count(true) == 5);
    CHECK(g.saddle_edge_count(false) == 4);
    std::string dot = to_dot(g, "diamond");
    CHECK(dot.find("O3 -> O0") != std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
}

TEST_CASE("cycles are rejected") {
    try {
        build_order_graph(orbits_of({OrbitKind::Saddle, OrbitKind::Saddle}), witnesses({{1, 0}, {0, 1}}), {});
        FAIL("expected CycleDetected");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CycleDetected);
    }
}

TEST_CASE("beh matches exhaustive path enumeration on random saddle DAGs") {
    std::mt19937 rng(2024);
    int mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 10);
        double p = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
        // Random topological order so edge direction is not tied to ids.
        std::vector<int> order(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (std::bernoulli_distribution(p)(rng))
                    edges.push_back({order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]});
        auto g = build_order_graph(orbits_of(std::vector<OrbitKind>(static_cast<size_t>(n), OrbitKind::Saddle)),
                                   witnesses(edges), {});
        int expect = oracle::longest_path_exhaustive(n, edges);
        if (g.beh != expect) ++mismatches;
        CHECK(g.beh == expect);
        CHECK(static_cast<int>(g.layers.size()) == expect + 3);
        auto lay = oracle::longest_path_layers(n, edges);
        for (int v = 0; v < n; ++v) {
            const auto& L = g.layers[static_cast<size_t>(lay[static_cast<size_t>(v)])];
            CHECK(std::find(L.begin(), L.end(), v) != L.end());
        }
        for (auto [a, b] : edges) CHECK(lay[static_cast<size_t>(a)] > lay[static_cast<size_t>(b)]);
    }
    CHECK(mismatches == 0);
}
