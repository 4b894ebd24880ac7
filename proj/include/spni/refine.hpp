#ifndef SPNI_REFINE_HPP
#define SPNI_REFINE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spni/partition.hpp"
#include "spni/subsolvers.hpp"

namespace spni {

struct RefineConfig {
    int n = 20;          // target block size
    int lambda = 50;     // refinement iterations
    SubSolverKind subsolver;
    std::uint64_t seed = 0;
    int workers = 1;     // sweep parallelism hint; never changes the result
};

struct TraceRow {
    int iteration = 0; // 0 = state before the first refinement iteration
    Length objective = 0;
    int solution_size = 0;
    int candidates = 0;
    int good_arcs = 0;
    std::int64_t millis = 0;
};

// Per-iteration refinement log. The objective column never decreases.
struct RefineTrace {
    std::vector<TraceRow> rows;

    std::string to_csv() const;
    void write_csv(const std::string& path) const;
};

struct SweepResult {
    Length best_length = 0;
    std::vector<InterdictionSet> candidates; // ordered by sink node id
};

// Solve one block subproblem per sink node and keep every recombined
// solution attaining the best objective. The base solution seeds both the
// best length and the candidate list, so the result never falls below it.
// Sub-solves are independent and run on up to `workers` threads; each task
// is seeded by (seed, sink), and candidates merge in sink-id order, so the
// outcome is identical for any worker count.
SweepResult sweep(const ProblemInstance& inst, const Partitioning& partitioning,
                  const std::vector<NodeId>& sinks, const InterdictionSet& base,
                  const SubSolverKind& kind, std::uint64_t seed, int workers);

// Greedy construction: one pass per budget unit, sweeping over the nodes of
// the current and the initial shortest path, adopting a random best
// candidate each pass. Throws UnreachableError when the instance has no
// s-t path at all.
InterdictionSet initial_solution(const ProblemInstance& inst, const RefineConfig& cfg);

// Iterative improvement: each iteration repartitions and sweeps; when the
// sweep stalls, arcs of the working solution are tentatively deleted one at
// a time to let a block reallocate that budget unit elsewhere. Arcs whose
// deletion never helped are remembered (good-arcs) and skipped while they
// remain in the solution. The objective never decreases.
InterdictionSet refine(const ProblemInstance& inst, const RefineConfig& cfg,
                       InterdictionSet start, RefineTrace* trace = nullptr);

// initial_solution followed by refine.
std::pair<InterdictionSet, RefineTrace> solve_spni(const ProblemInstance& inst,
                                                   const RefineConfig& cfg);

} // namespace spni

#endif
