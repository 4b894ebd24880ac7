#ifndef SPNI_BENCH_HPP
#define SPNI_BENCH_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spni/refine.hpp"

namespace spni {

struct BruteForceResult {
    InterdictionSet best; // lexicographically smallest optimum
    Length value = 0;
};

// Ground truth by enumeration of every interdiction set within budget.
// Throws CapacityError when the number of subsets exceeds `cap`.
BruteForceResult brute_force_optimum(const ProblemInstance& inst,
                                     std::uint64_t cap = 5'000'000);

struct FullBbResult {
    InterdictionSet best;
    Length value = 0;
    bool optimal = true;
};

// Whole-graph exact search (the block is the entire node set). With no
// timeout this equals brute_force_optimum; with one, the incumbent at the
// deadline is returned and flagged.
FullBbResult full_bb(const ProblemInstance& inst,
                     std::optional<std::chrono::milliseconds> timeout = std::nullopt);

// (r - f) / max(r, f); positive when the refinement result r beats the
// baseline f. Defined as 0 when both are zero.
double quality(Length r, Length f);

enum class BaselineMode {
    Oracle, // brute-force optimum, never times out
    Matched, // exact search given exactly the refinement's wall time
    Fixed,  // exact search with a fixed timeout
};

struct BenchConfig {
    std::vector<std::pair<int, int>> sizes; // (rows, cols) per grid
    double budget_fraction = 0.0025;        // of |A|, floored at budget 1
    std::optional<int> fixed_budget;        // overrides the fraction
    int n = 20;
    int lambda = 50;
    std::vector<std::uint64_t> seeds;
    SubSolverKind subsolver;
    BaselineMode mode = BaselineMode::Oracle;
    std::int64_t fixed_timeout_ms = 60000;
    std::uint64_t brute_cap = 5'000'000;
    int workers = 1;
};

struct BenchRow {
    int size = 0; // |N|
    std::uint64_t seed = 0;
    int budget = 0;
    Length r = 0;
    Length f = 0;
    double quality = 0;
    std::int64_t refine_ms = 0;
    std::int64_t baseline_ms = 0;
    bool baseline_timed_out = false;
    RefineTrace trace; // not part of the CSV
};

// One row per (size, seed), in config order. A row that fails is reported
// on stderr and skipped, not fatal.
std::vector<BenchRow> run_benchmark(const BenchConfig& config);

std::string bench_csv(const std::vector<BenchRow>& rows);

} // namespace spni

#endif
