#include "spni/graph.hpp"

#include <limits>
#include <queue>

namespace spni {

namespace {

constexpr Length kInf = std::numeric_limits<Length>::max();

void check_interdicted(const ProblemInstance& inst, const InterdictionSet& interdicted) {
    const int arc_count = static_cast<int>(inst.network.arcs.size());
    for (ArcId k : interdicted.ids()) {
        if (k < 0 || k >= arc_count)
            throw InputError("interdiction set references arc id " + std::to_string(k) +
                             " outside [0, " + std::to_string(arc_count) + ")");
    }
}

std::vector<std::vector<ArcId>> out_adjacency(const Network& net) {
    std::vector<std::vector<ArcId>> out(net.node_count);
    for (ArcId k = 0; k < static_cast<int>(net.arcs.size()); ++k)
        out[net.arcs[k].tail].push_back(k);
    return out;
}

// Dijkstra from s under effective lengths. Pops are ordered by (dist, node),
// so the settle order is deterministic; settle_rank records it for the
// tie-broken path reconstruction.
std::vector<Length> dijkstra(const ProblemInstance& inst, const InterdictionSet& interdicted,
                             std::vector<int>* settle_rank = nullptr) {
    const Network& net = inst.network;
    const auto out = out_adjacency(net);
    std::vector<Length> dist(net.node_count, kInf);
    if (settle_rank) settle_rank->assign(net.node_count, -1);
    using Item = std::pair<Length, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[inst.source] = 0;
    heap.emplace(0, inst.source);
    int rank = 0;
    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du != dist[u]) continue;
        if (settle_rank && (*settle_rank)[u] < 0) (*settle_rank)[u] = rank++;
        for (ArcId k : out[u]) {
            const Arc& a = net.arcs[k];
            const Length w = a.c + (interdicted.contains(k) ? a.d : 0);
            if (dist[u] + w < dist[a.head]) {
                dist[a.head] = dist[u] + w;
                heap.emplace(dist[a.head], a.head);
            }
        }
    }
    return dist;
}

} // namespace

PathLength calc_length(const ProblemInstance& inst, const InterdictionSet& interdicted) {
    check_interdicted(inst, interdicted);
    const auto dist = dijkstra(inst, interdicted);
    if (dist[inst.sink] == kInf) return std::nullopt;
    return dist[inst.sink];
}

std::vector<NodeId> calc_path(const ProblemInstance& inst, const InterdictionSet& interdicted) {
    check_interdicted(inst, interdicted);
    std::vector<int> settle_rank;
    const auto dist = dijkstra(inst, interdicted, &settle_rank);
    if (dist[inst.sink] == kInf)
        throw UnreachableError("calc_path: sink is unreachable from source");

    const Network& net = inst.network;
    std::vector<std::vector<ArcId>> in(net.node_count);
    for (ArcId k = 0; k < static_cast<int>(net.arcs.size()); ++k)
        in[net.arcs[k].head].push_back(k);

    // Walk back from the sink. At each node take the smallest predecessor id
    // among arcs that realize the shortest distance; restricting to
    // predecessors settled earlier keeps the walk acyclic on zero-length ties.
    std::vector<NodeId> nodes;
    NodeId cur = inst.sink;
    nodes.push_back(cur);
    while (cur != inst.source) {
        NodeId best = -1;
        for (ArcId k : in[cur]) {
            const Arc& a = net.arcs[k];
            const Length w = a.c + (interdicted.contains(k) ? a.d : 0);
            if (dist[a.tail] == kInf || dist[a.tail] + w != dist[cur]) continue;
            if (settle_rank[a.tail] < 0 || settle_rank[a.tail] >= settle_rank[cur]) continue;
            if (best < 0 || a.tail < best) best = a.tail;
        }
        if (best < 0)
            throw Error("calc_path: no predecessor found (internal invariant)");
        cur = best;
        nodes.push_back(cur);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    return nodes;
}

Length pi_upper_bound(const ProblemInstance& inst) {
    Length max_w = 0;
    for (const Arc& a : inst.network.arcs) max_w = std::max(max_w, a.c + a.d);
    return static_cast<Length>(inst.network.node_count) * max_w;
}

std::vector<Length> all_labels(const ProblemInstance& inst, const InterdictionSet& interdicted) {
    check_interdicted(inst, interdicted);
    auto dist = dijkstra(inst, interdicted);
    const Length sentinel = pi_upper_bound(inst);
    for (Length& v : dist)
        if (v == kInf) v = sentinel;
    return dist;
}

bool is_weakly_connected(const Network& net, const std::vector<NodeId>& nodes) {
    if (nodes.empty()) return false;
    std::vector<char> in_set(net.node_count, 0);
    for (NodeId v : nodes) {
        if (v < 0 || v >= net.node_count)
            throw InputError("is_weakly_connected: node id out of range");
        in_set[v] = 1;
    }
    std::vector<std::vector<NodeId>> adj(net.node_count);
    for (const Arc& a : net.arcs) {
        if (in_set[a.tail] && in_set[a.head]) {
            adj[a.tail].push_back(a.head);
            adj[a.head].push_back(a.tail);
        }
    }
    std::vector<char> seen(net.node_count, 0);
    std::vector<NodeId> stack{nodes.front()};
    seen[nodes.front()] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    // nodes may contain duplicates; count distinct members instead.
    std::size_t distinct = 0;
    for (NodeId v = 0; v < net.node_count; ++v)
        if (in_set[v]) ++distinct;
    return reached == distinct;
}

} // namespace spni
