#pragma once

#include <string>
#include <vector>

#include "mss/periodic.hpp"

namespace mss {

enum class EdgeKind { Heteroclinic, Basin };

struct OrderNode {
    int orbit = -1;
    OrbitKind kind = OrbitKind::Saddle;
    int period = 1;
};

// Edge from -> to means O_to < O_from, i.e. W^u(O_from) meets W^s(O_to).
struct OrderEdge {
    int from = -1;
    int to = -1;
    EdgeKind kind = EdgeKind::Heteroclinic;
    std::vector<int> witnesses;  // heteroclinic orbit ids or separatrix ids
    // Saddle edge implied by a longer saddle chain.
    bool transitive = false;
};

struct Witness {
    int from = -1;
    int to = -1;
    int evidence = -1;
};

struct OrderGraph {
    std::vector<OrderNode> nodes;
    std::vector<OrderEdge> edges;
    int beh = 0;
    // layers[0] = sinks, layers[1..L] = saddle layers, layers.back() = sources.
    std::vector<std::vector<int>> layers;

    const OrderNode* node(int orbit) const;
    bool is_saddle(int orbit) const;
    int saddle_edge_count(bool include_transitive = true) const;
};

OrderGraph build_order_graph(const std::vector<PeriodicOrbit>& orbits, const std::vector<Witness>& heteroclinic,
                             const std::vector<Witness>& basin);

// Longest saddle-to-saddle chain, in edges; 0 without saddle connections.
int compute_beh(const OrderGraph& g);

// Longest chain (over all orbits) from `orbit` down to some member of P.
int beh_relative(const OrderGraph& g, int orbit, const std::vector<int>& P);

std::vector<std::vector<int>> decompose_layers(const OrderGraph& g);

// Graphviz text; transitive saddle edges are drawn dashed.
std::string to_dot(const OrderGraph& g, const std::string& name);

}  // namespace mss
