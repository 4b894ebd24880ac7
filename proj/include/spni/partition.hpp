#ifndef SPNI_PARTITION_HPP
#define SPNI_PARTITION_HPP

#include <vector>

#include "spni/graph.hpp"
#include "spni/rng.hpp"

namespace spni {

// Disjoint node blocks covering the whole network. Each block is weakly
// connected; block sizes stay in [ceil(n/2), 2n] unless a weakly-connected
// component of the graph is itself smaller. Canonical form: blocks sorted
// internally, block list ordered by smallest member.
struct Partitioning {
    int node_count = 0;
    std::vector<std::vector<NodeId>> blocks;

    friend bool operator==(const Partitioning&, const Partitioning&) = default;
};

// Randomized region growing: nodes are shuffled into a visit order, each
// unassigned node seeds a breadth-first block capped at n nodes, then
// undersized leftovers merge into adjacent blocks (splitting in the rare
// case a merge overshoots 2n). Pure function of (net, n, rng state), and
// different seeds produce different partitionings with high probability,
// which is what keeps the refinement from revisiting one decomposition.
Partitioning partition(const Network& net, int n, SplitMix64& rng);
Partitioning partition(const Network& net, int n, std::uint64_t seed);

// Index of the block containing v. Throws InputError for out-of-range v and
// Error if the partitioning does not cover v (malformed input).
int find_block(const Partitioning& p, NodeId v);

} // namespace spni

#endif
