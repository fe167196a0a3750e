#include "mss/order.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

#include "mss/error.hpp"

namespace mss {

const OrderNode* OrderGraph::node(int orbit) const {
    for (const auto& n : nodes)
        if (n.orbit == orbit) return &n;
    return nullptr;
}

bool OrderGraph::is_saddle(int orbit) const {
    const OrderNode* n = node(orbit);
    return n && n->kind == OrbitKind::Saddle;
}

int OrderGraph::saddle_edge_count(bool include_transitive) const {
    int c = 0;
    for (const auto& e : edges)
        if (is_saddle(e.from) && is_saddle(e.to) && (include_transitive || !e.transitive)) ++c;
    return c;
}

namespace {

using Adjacency = std::map<int, std::vector<int>>;

Adjacency adjacency(const OrderGraph& g, bool saddles_only) {
    Adjacency adj;
    for (const auto& n : g.nodes)
        if (!saddles_only || n.kind == OrbitKind::Saddle) adj[n.orbit];
    for (const auto& e : g.edges) {
        if (saddles_only && !(g.is_saddle(e.from) && g.is_saddle(e.to))) continue;
        adj[e.from].push_back(e.to);
    }
    return adj;
}

void check_acyclic(const Adjacency& adj) {
    std::map<int, int> color;
    std::vector<int> stack;
    std::function<void(int)> visit = [&](int u) {
        color[u] = 1;
        stack.push_back(u);
        auto it = adj.find(u);
        if (it != adj.end()) {
            for (int v : it->second) {
                if (color[v] == 1) {
                    std::ostringstream msg;
                    msg << "cycle through orbits";
                    auto pos = std::find(stack.begin(), stack.end(), v);
                    for (; pos != stack.end(); ++pos) msg << " O" << *pos;
                    msg << " O" << v;
                    throw Error(ErrorKind::CycleDetected, msg.str());
                }
                if (color[v] == 0) visit(v);
            }
        }
        stack.pop_back();
        color[u] = 2;
    };
    for (const auto& [u, _] : adj)
        if (color[u] == 0) visit(u);
}

// Longest path (in edges) starting at each node.
std::map<int, int> longest_down(const Adjacency& adj) {
    std::map<int, int> memo;
    std::function<int(int)> go = [&](int u) {
        auto m = memo.find(u);
        if (m != memo.end()) return m->second;
        int best = 0;
        auto it = adj.find(u);
        if (it != adj.end())
            for (int v : it->second) best = std::max(best, 1 + go(v));
        memo[u] = best;
        return best;
    };
    for (const auto& [u, _] : adj) go(u);
    return memo;
}

bool reachable(const Adjacency& adj, int from, int to) {
    std::vector<int> todo{from};
    std::map<int, bool> seen;
    while (!todo.empty()) {
        int u = todo.back();
        todo.pop_back();
        if (u == to) return true;
        if (seen[u]) continue;
        seen[u] = true;
        auto it = adj.find(u);
        if (it != adj.end())
            for (int v : it->second) todo.push_back(v);
    }
    return false;
}

}  // namespace

OrderGraph build_order_graph(const std::vector<PeriodicOrbit>& orbits, const std::vector<Witness>& heteroclinic,
                             const std::vector<Witness>& basin) {
    OrderGraph g;
    for (const auto& o : orbits) g.nodes.push_back({o.id, o.kind, o.period});
    std::sort(g.nodes.begin(), g.nodes.end(), [](const OrderNode& a, const OrderNode& b) { return a.orbit < b.orbit; });
    std::map<std::tuple<int, int, int>, std::vector<int>> merged;
    for (const auto& w : heteroclinic) merged[{w.from, w.to, 0}].push_back(w.evidence);
    for (const auto& w : basin) merged[{w.from, w.to, 1}].push_back(w.evidence);
    for (auto& [key, ev] : merged) {
        auto [from, to, kind] = key;
        if (!g.node(from) || !g.node(to)) throw Error(ErrorKind::InvalidArgument, "witness refers to unknown orbit");
        std::sort(ev.begin(), ev.end());
        ev.erase(std::unique(ev.begin(), ev.end()), ev.end());
        g.edges.push_back({from, to, kind == 0 ? EdgeKind::Heteroclinic : EdgeKind::Basin, ev, false});
    }
    check_acyclic(adjacency(g, false));
    Adjacency sad = adjacency(g, true);
    for (auto& e : g.edges) {
        if (!(g.is_saddle(e.from) && g.is_saddle(e.to))) continue;
        for (int w : sad[e.from]) {
            if (w != e.to && reachable(sad, w, e.to)) {
                e.transitive = true;
                break;
            }
        }
    }
    g.beh = compute_beh(g);
    g.layers = decompose_layers(g);
    return g;
}

int compute_beh(const OrderGraph& g) {
    Adjacency sad = adjacency(g, true);
    check_acyclic(sad);
    int best = 0;
    for (const auto& [u, len] : longest_down(sad)) best = std::max(best, len);
    return best;
}

int beh_relative(const OrderGraph& g, int orbit, const std::vector<int>& P) {
    Adjacency adj = adjacency(g, false);
    check_acyclic(adj);
    // Longest path from u to any member of P; -1 when none is reachable.
    std::map<int, int> memo;
    std::function<int(int)> go = [&](int u) {
        auto m = memo.find(u);
        if (m != memo.end()) return m->second;
        int best = -1;
        for (int v : adj[u]) {
            if (std::find(P.begin(), P.end(), v) != P.end()) best = std::max(best, 1);
            int sub = go(v);
            if (sub >= 0) best = std::max(best, 1 + sub);
        }
        memo[u] = best;
        return best;
    };
    return std::max(0, go(orbit));
}

std::vector<std::vector<int>> decompose_layers(const OrderGraph& g) {
    Adjacency sad = adjacency(g, true);
    check_acyclic(sad);
    auto down = longest_down(sad);
    int top = 0;
    for (const auto& [u, d] : down) top = std::max(top, d + 1);
    std::vector<std::vector<int>> layers(static_cast<size_t>(top) + 2);
    for (const auto& n : g.nodes) {
        if (n.kind == OrbitKind::Sink) layers.front().push_back(n.orbit);
        else if (n.kind == OrbitKind::Source) layers.back().push_back(n.orbit);
        else layers[static_cast<size_t>(down[n.orbit] + 1)].push_back(n.orbit);
    }
    return layers;
}

std::string to_dot(const OrderGraph& g, const std::string& name) {
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n";
    out << "  rankdir=BT;\n";
    for (const auto& n : g.nodes) {
        const char* shape = n.kind == OrbitKind::Saddle ? "box" : (n.kind == OrbitKind::Sink ? "circle" : "doublecircle");
        out << "  O" << n.orbit << " [label=\"O" << n.orbit << "\\n" << orbit_kind_name(n.kind) << " m=" << n.period
            << "\", shape=" << shape << ", kind=" << orbit_kind_name(n.kind) << "];\n";
    }
    for (const auto& e : g.edges) {
        bool saddle_edge = g.is_saddle(e.from) && g.is_saddle(e.to);
        out << "  O" << e.from << " -> O" << e.to << " [label=\"" << e.witnesses.size() << "\", type=";
        out << (saddle_edge ? "saddle" : "basin");
        if (e.transitive) out << ", style=dashed, transitive=true";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace mss
