#include "spni/partition.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace spni {

namespace {

std::vector<std::vector<NodeId>> undirected_adjacency(const Network& net) {
    std::vector<std::vector<NodeId>> adj(net.node_count);
    for (const Arc& a : net.arcs) {
        if (a.tail == a.head) continue;
        adj[a.tail].push_back(a.head);
        adj[a.head].push_back(a.tail);
    }
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return adj;
}

// Split one oversized block along a spanning-tree edge so that both sides
// are connected and land within [lo, hi]. Returns false when no tree edge
// gives a valid balance (the block is kept whole).
bool split_block(const std::vector<std::vector<NodeId>>& adj, std::vector<NodeId>& block,
                 std::size_t lo, std::size_t hi, std::vector<NodeId>& out_other) {
    const std::size_t m = block.size();
    // Local indices over the block, BFS spanning tree from block.front().
    std::vector<NodeId> nodes = block;
    std::sort(nodes.begin(), nodes.end());
    auto local = [&nodes](NodeId v) {
        return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
    };
    auto in_block = [&nodes](NodeId v) {
        return std::binary_search(nodes.begin(), nodes.end(), v);
    };
    std::vector<int> parent(m, -1), order;
    std::vector<char> seen(m, 0);
    std::queue<int> q;
    seen[0] = 1;
    q.push(0);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        order.push_back(u);
        for (NodeId w : adj[nodes[u]]) {
            if (!in_block(w)) continue;
            const int lw = local(w);
            if (!seen[lw]) {
                seen[lw] = 1;
                parent[lw] = u;
                q.push(lw);
            }
        }
    }
    if (order.size() != m) return false; // disconnected: leave to the caller
    std::vector<std::size_t> subtree(m, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) subtree[parent[*it]] += subtree[*it];
    int cut = -1;
    for (int v = 1; v < static_cast<int>(m); ++v) {
        const std::size_t a = subtree[v], b = m - subtree[v];
        if (a >= lo && a <= hi && b >= lo && b <= hi) {
            cut = v;
            break;
        }
    }
    if (cut < 0) return false;
    // Collect the cut subtree. BFS order lists parents before children, so
    // one forward pass marks all descendants.
    std::vector<char> below(m, 0);
    below[cut] = 1;
    for (int u : order)
        if (parent[u] >= 0 && below[parent[u]]) below[u] = 1;
    std::vector<NodeId> keep, other;
    for (std::size_t v = 0; v < m; ++v)
        (below[v] ? other : keep).push_back(nodes[v]);
    block = std::move(keep);
    out_other = std::move(other);
    return true;
}

} // namespace

Partitioning partition(const Network& net, int n, SplitMix64& rng) {
    if (n < 1) throw InputError("partition: n must be >= 1");
    const int node_count = net.node_count;
    Partitioning result;
    result.node_count = node_count;
    if (node_count == 0) return result;

    const auto adj = undirected_adjacency(net);

    // Fisher-Yates visit order.
    std::vector<NodeId> order(node_count);
    std::iota(order.begin(), order.end(), 0);
    for (int i = node_count - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(order[i], order[j]);
    }

    // Region growing: BFS from each unassigned seed, capped at n nodes.
    std::vector<int> block_of(node_count, -1);
    std::vector<std::vector<NodeId>> blocks;
    std::vector<char> enqueued(node_count, 0);
    for (NodeId seed_node : order) {
        if (block_of[seed_node] >= 0) continue;
        const int b = static_cast<int>(blocks.size());
        std::vector<NodeId> block;
        std::queue<NodeId> frontier;
        frontier.push(seed_node);
        enqueued[seed_node] = 1;
        std::vector<NodeId> touched{seed_node};
        while (!frontier.empty() && static_cast<int>(block.size()) < n) {
            const NodeId u = frontier.front();
            frontier.pop();
            block_of[u] = b;
            block.push_back(u);
            for (NodeId w : adj[u]) {
                if (block_of[w] < 0 && !enqueued[w]) {
                    enqueued[w] = 1;
                    touched.push_back(w);
                    frontier.push(w);
                }
            }
        }
        for (NodeId v : touched) enqueued[v] = 0;
        blocks.push_back(std::move(block));
    }

    // Merge undersized blocks into adjacent ones. Targets that keep the
    // merged size within 2n are preferred; a rare overshoot is split back
    // along a spanning-tree edge.
    const std::size_t lo = static_cast<std::size_t>((n + 1) / 2);
    const std::size_t hi = static_cast<std::size_t>(2) * static_cast<std::size_t>(n);
    bool changed = true;
    while (changed) {
        changed = false;
        int victim = -1;
        for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
            if (!blocks[b].empty() && blocks[b].size() < lo) {
                victim = b;
                break;
            }
        }
        if (victim < 0) break;

        std::vector<int> neighbors;
        for (NodeId v : blocks[victim])
            for (NodeId w : adj[v]) {
                const int bw = block_of[w];
                if (bw != victim && !blocks[bw].empty()) neighbors.push_back(bw);
            }
        std::sort(neighbors.begin(), neighbors.end());
        neighbors.erase(std::unique(neighbors.begin(), neighbors.end()), neighbors.end());
        if (neighbors.empty()) {
            // The block is a whole weak component; mark it as final by
            // moving it out of the undersized scan.
            result.blocks.push_back(std::move(blocks[victim]));
            blocks[victim].clear();
            changed = true;
            continue;
        }
        std::vector<int> fitting;
        for (int c : neighbors)
            if (blocks[victim].size() + blocks[c].size() <= hi) fitting.push_back(c);
        const auto& pool = fitting.empty() ? neighbors : fitting;
        const int target = pool[rng.next_below(pool.size())];

        for (NodeId v : blocks[victim]) block_of[v] = target;
        blocks[target].insert(blocks[target].end(), blocks[victim].begin(), blocks[victim].end());
        blocks[victim].clear();
        if (blocks[target].size() > hi) {
            std::vector<NodeId> other;
            if (split_block(adj, blocks[target], lo, hi, other)) {
                const int nb = static_cast<int>(blocks.size());
                for (NodeId v : other) block_of[v] = nb;
                blocks.push_back(std::move(other));
            }
        }
        changed = true;
    }

    for (auto& block : blocks)
        if (!block.empty()) result.blocks.push_back(std::move(block));

    for (auto& block : result.blocks) std::sort(block.begin(), block.end());
    std::sort(result.blocks.begin(), result.blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return result;
}

Partitioning partition(const Network& net, int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return partition(net, n, rng);
}

int find_block(const Partitioning& p, NodeId v) {
    if (v < 0 || v >= p.node_count)
        throw InputError("find_block: node id " + std::to_string(v) + " out of range");
    for (int b = 0; b < static_cast<int>(p.blocks.size()); ++b)
        if (std::binary_search(p.blocks[b].begin(), p.blocks[b].end(), v)) return b;
    throw Error("find_block: node " + std::to_string(v) + " is unassigned (malformed partitioning)");
}

} // namespace spni
