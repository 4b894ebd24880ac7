#ifndef SPNI_SUBPROBLEM_HPP
#define SPNI_SUBPROBLEM_HPP

#include <vector>

#include "spni/graph.hpp"

namespace spni {

// One block-local interdiction problem: free variables live on the block
// `nodes`; everything outside is frozen at its current shortest-path label.
//
//   scope (A_p)    = all arcs whose head lies in the block
//   internal       = both endpoints inside (labels propagate)
//   entering       = tail outside (enters with the frozen gamma label)
//
// The local budget is the full budget minus what the base solution spends
// outside the block; budget spent inside may be reallocated freely.
struct SubproblemSpec {
    const ProblemInstance* inst = nullptr;
    std::vector<NodeId> nodes; // sorted block
    NodeId local_sink = -1;
    InterdictionSet base; // A' the spec was formed against
    std::vector<Length> gamma; // per-node labels under base interdiction
    int local_budget = 0;
    std::vector<ArcId> internal; // both ends in block, ascending
    std::vector<ArcId> entering; // tail outside block, ascending
    Length label_bound = 0; // pi_upper_bound of the instance

    bool in_block(NodeId v) const {
        return std::binary_search(nodes.begin(), nodes.end(), v);
    }
    // internal ∪ entering, ascending.
    std::vector<ArcId> scope_arcs() const;
    bool in_scope(ArcId k) const;
};

// Freeze a block subproblem against the working solution `base`.
// Throws InputError when local_sink is outside the block.
SubproblemSpec make_spec(const ProblemInstance& inst, const std::vector<NodeId>& block,
                         NodeId local_sink, const InterdictionSet& base);

// Shortest distance to the local sink when exactly the arcs in `local_x`
// (a subset of the block's arc scope) are interdicted, outside labels frozen
// at gamma. Capped at label_bound; the cap stands in for "unreachable", so
// the value is always finite. Throws InputError if local_x leaves the scope
// or exceeds the local budget.
Length local_distance(const SubproblemSpec& spec, const InterdictionSet& local_x);

// Evaluation engine behind local_distance. Precomputes the local topology
// and keeps scratch buffers so the exact solvers can score thousands of
// masks without allocating. eval() takes one flag per scope arc (position
// in scope_arcs()) and applies no budget check: bound relaxations
// deliberately interdict more arcs than the budget allows.
class LocalDistanceEval {
public:
    explicit LocalDistanceEval(const SubproblemSpec& spec);

    Length eval(const std::vector<char>& interdict_mask);
    const std::vector<ArcId>& scope() const { return scope_; }
    int scope_index(ArcId k) const; // -1 when k is not in scope
    const SubproblemSpec& spec() const { return *spec_; }

private:
    struct EnterArc {
        int head; // local node index
        int scope_pos;
        Length base; // gamma[tail] + c
        Length d;
    };
    struct InternalArc {
        int head;
        int scope_pos;
        Length c;
        Length d;
    };

    const SubproblemSpec* spec_;
    std::vector<ArcId> scope_;
    std::vector<EnterArc> enter_;
    std::vector<std::vector<InternalArc>> out_; // by local tail
    int source_local_ = -1; // pinned to 0 when >= 0
    int sink_local_ = -1;
    std::vector<Length> dist_; // scratch
};

} // namespace spni

#endif
