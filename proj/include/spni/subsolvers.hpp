#ifndef SPNI_SUBSOLVERS_HPP
#define SPNI_SUBSOLVERS_HPP

#include <chrono>
#include <optional>

#include "spni/anneal.hpp"
#include "spni/qubo.hpp"
#include "spni/subproblem.hpp"

namespace spni {

// Backend used to solve one block subproblem. The exact branch-and-bound is
// the default; the QUBO backends exist to validate the quadratic encodings
// and to emulate offloading onto annealing hardware.
struct SubSolverKind {
    enum class Backend { BbExact, QuboExhaustive, QuboAnneal };

    Backend backend = Backend::BbExact;
    int max_bits = 30;          // QuboExhaustive capacity
    bool fallback_to_bb = true; // on capacity overflow; false -> CapacityError
    AnnealParams anneal;

    static SubSolverKind bb() { return {}; }
    static SubSolverKind exhaustive(int max_bits = 30, bool fallback = true) {
        SubSolverKind k;
        k.backend = Backend::QuboExhaustive;
        k.max_bits = max_bits;
        k.fallback_to_bb = fallback;
        return k;
    }
    static SubSolverKind annealed(const AnnealParams& params = {}) {
        SubSolverKind k;
        k.backend = Backend::QuboAnneal;
        k.anneal = params;
        return k;
    }
};

struct BbResult {
    InterdictionSet local_x;
    Length value = 0;
    bool optimal = true; // false only when a deadline cut the search short
};

// Exact maximizer of local_distance over subsets of the block's arc scope
// within the local budget. Depth-first branch and bound: the upper bound at
// a node interdicts every undecided arc (valid since interdiction never
// shortens paths); subtrees are pruned only when the bound is strictly
// below the incumbent, so the returned set is the lexicographically
// smallest optimum. Candidate arcs on the current shortest route to the
// local sink are branched first.
BbResult bb_exact(const SubproblemSpec& spec,
                  std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

// Exhaustive QUBO argmax by Gray-code enumeration (single flip per step).
// Throws CapacityError when var_count exceeds max_bits (hard limit 30).
std::pair<std::vector<std::uint8_t>, Length> qubo_argmax(const Qubo& q, int max_bits);

// SOLVE: optimize the block subproblem with the chosen backend and splice
// the result back into a full solution. Arcs outside the block scope keep
// their base interdiction status; the returned set never exceeds the
// instance budget.
InterdictionSet solve_sub(const SubproblemSpec& spec, const SubSolverKind& kind, SplitMix64& rng);
InterdictionSet solve_sub(const SubproblemSpec& spec, const SubSolverKind& kind, std::uint64_t seed);

} // namespace spni

#endif
