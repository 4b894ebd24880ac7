#ifndef SPNI_GRAPH_HPP
#define SPNI_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "spni/error.hpp"

namespace spni {

using NodeId = int;
using ArcId = int;
using Length = std::int64_t;

// Arc weights are integers by construction; every distance in this library
// is exact integer arithmetic.
struct Arc {
    NodeId tail = 0;
    NodeId head = 0;
    Length c = 0; // base length
    Length d = 0; // added length when interdicted

    friend bool operator==(const Arc&, const Arc&) = default;
};

// Directed network. Arc identity is the index into `arcs`; the order is
// stable and preserved by serialization. Parallel arcs are permitted.
struct Network {
    int node_count = 0;
    std::vector<Arc> arcs;

    friend bool operator==(const Network&, const Network&) = default;
};

struct ProblemInstance {
    Network network;
    NodeId source = 0;
    NodeId sink = 0;
    int budget = 0; // r0, number of arcs that may be interdicted

    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

// A set of interdicted arc ids, kept sorted. Comparison is lexicographic on
// the sorted id sequence, which is the tie-break order used by the exact
// solvers.
class InterdictionSet {
public:
    InterdictionSet() = default;
    explicit InterdictionSet(std::vector<ArcId> ids) : ids_(std::move(ids)) {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }

    bool contains(ArcId k) const {
        return std::binary_search(ids_.begin(), ids_.end(), k);
    }
    void insert(ArcId k) {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), k);
        if (it == ids_.end() || *it != k) ids_.insert(it, k);
    }
    void erase(ArcId k) {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), k);
        if (it != ids_.end() && *it == k) ids_.erase(it);
    }
    int size() const { return static_cast<int>(ids_.size()); }
    bool empty() const { return ids_.empty(); }
    const std::vector<ArcId>& ids() const { return ids_; }

    friend bool operator==(const InterdictionSet&, const InterdictionSet&) = default;
    friend bool operator<(const InterdictionSet& a, const InterdictionSet& b) {
        return a.ids_ < b.ids_;
    }

private:
    std::vector<ArcId> ids_; // sorted, unique
};

// Shortest s-t distance; nullopt means t is unreachable. The sentinel is
// never mixed into arithmetic.
using PathLength = std::optional<Length>;

// Shortest s-t distance where arc k has effective length c_k + d_k when
// k is interdicted.
PathLength calc_length(const ProblemInstance& inst, const InterdictionSet& interdicted);

// Node set of one shortest s-t path under the same effective lengths.
// Ties are broken deterministically: walking back from the sink, each node
// picks the smallest-id predecessor among those on a shortest path.
// Throws UnreachableError if there is no s-t path.
std::vector<NodeId> calc_path(const ProblemInstance& inst, const InterdictionSet& interdicted);

// Upper bound on any finite shortest-path label: |N| * max_k(c_k + d_k).
// Doubles as the sentinel for unreachable nodes in all_labels and as the
// variable bound of the quadratic encodings.
Length pi_upper_bound(const ProblemInstance& inst);

// Per-node shortest distances from s under interdiction; unreachable nodes
// get pi_upper_bound(inst).
std::vector<Length> all_labels(const ProblemInstance& inst, const InterdictionSet& interdicted);

// True iff the subgraph induced by `nodes` is connected when arc directions
// are ignored. Singletons are connected; the empty set is not.
bool is_weakly_connected(const Network& net, const std::vector<NodeId>& nodes);

} // namespace spni

#endif
