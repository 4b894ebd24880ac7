#include "spni/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>

#include "spni/instance.hpp"

namespace spni {

namespace {

// Number of interdiction sets of size <= r0, saturating at cap + 1.
std::uint64_t count_subsets(std::uint64_t arcs, int r0, std::uint64_t cap) {
    std::uint64_t total = 0;
    for (int k = 0; k <= r0; ++k) {
        // C(arcs, k), saturating.
        long double binom = 1;
        for (int i = 0; i < k; ++i) binom = binom * static_cast<long double>(arcs - i) / (i + 1);
        if (binom > static_cast<long double>(cap) + 1) return cap + 1;
        total += static_cast<std::uint64_t>(binom + 0.5L);
        if (total > cap) return cap + 1;
    }
    return total;
}

} // namespace

BruteForceResult brute_force_optimum(const ProblemInstance& inst, std::uint64_t cap) {
    const int arc_count = static_cast<int>(inst.network.arcs.size());
    const int r0 = std::min(inst.budget, arc_count);
    if (count_subsets(arc_count, r0, cap) > cap)
        throw CapacityError("brute_force_optimum: subset count exceeds cap of " +
                            std::to_string(cap));

    BruteForceResult result;
    result.best = InterdictionSet();
    result.value = 0;
    bool have = false;
    auto consider = [&](const std::vector<ArcId>& ids) {
        const InterdictionSet set{std::vector<ArcId>(ids)};
        const Length value = *calc_length(inst, set); // feasibility unchanged by interdiction
        if (!have || value > result.value ||
            (value == result.value && set < result.best)) {
            have = true;
            result.value = value;
            result.best = set;
        }
    };

    if (!calc_length(inst, InterdictionSet()))
        throw UnreachableError("brute_force_optimum: instance has no s-t path");

    std::vector<ArcId> combo;
    for (int k = 0; k <= r0; ++k) {
        // Lexicographic k-combinations of arc ids.
        combo.assign(k, 0);
        std::iota(combo.begin(), combo.end(), 0);
        if (k == 0) {
            consider(combo);
            continue;
        }
        if (k > arc_count) break;
        for (;;) {
            consider(combo);
            int i = k - 1;
            while (i >= 0 && combo[i] == arc_count - k + i) --i;
            if (i < 0) break;
            ++combo[i];
            for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
    return result;
}

FullBbResult full_bb(const ProblemInstance& inst, std::optional<std::chrono::milliseconds> timeout) {
    std::vector<NodeId> all(inst.network.node_count);
    std::iota(all.begin(), all.end(), 0);
    const SubproblemSpec spec = make_spec(inst, all, inst.sink, InterdictionSet());
    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (timeout) deadline = std::chrono::steady_clock::now() + *timeout;
    const BbResult res = bb_exact(spec, deadline);
    return {res.local_x, res.value, res.optimal};
}

double quality(Length r, Length f) {
    if (r == 0 && f == 0) return 0;
    return static_cast<double>(r - f) / static_cast<double>(std::max(r, f));
}

std::vector<BenchRow> run_benchmark(const BenchConfig& config) {
    std::vector<BenchRow> rows;
    for (const auto& [grid_rows, grid_cols] : config.sizes) {
        for (const std::uint64_t seed : config.seeds) {
            try {
                ProblemInstance inst = generate_grid(grid_rows, grid_cols, seed);
                const int arc_count = static_cast<int>(inst.network.arcs.size());
                int budget;
                if (config.fixed_budget)
                    budget = std::min(*config.fixed_budget, arc_count);
                else
                    budget = std::max<int>(
                        1, static_cast<int>(std::llround(config.budget_fraction * arc_count)));
                inst.budget = budget;

                RefineConfig rcfg;
                rcfg.n = config.n;
                rcfg.lambda = config.lambda;
                rcfg.subsolver = config.subsolver;
                rcfg.seed = seed;
                rcfg.workers = config.workers;

                BenchRow row;
                row.size = inst.network.node_count;
                row.seed = seed;
                row.budget = budget;

                const auto t0 = std::chrono::steady_clock::now();
                auto [solution, trace] = solve_spni(inst, rcfg);
                row.refine_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
                row.r = *calc_length(inst, solution);
                row.trace = std::move(trace);

                const auto b0 = std::chrono::steady_clock::now();
                switch (config.mode) {
                case BaselineMode::Oracle: {
                    row.f = brute_force_optimum(inst, config.brute_cap).value;
                    row.baseline_timed_out = false;
                    break;
                }
                case BaselineMode::Matched: {
                    // The baseline gets exactly the wall time the refinement
                    // spent.
                    const auto res = full_bb(inst, std::chrono::milliseconds(row.refine_ms));
                    row.f = res.value;
                    row.baseline_timed_out = !res.optimal;
                    break;
                }
                case BaselineMode::Fixed: {
                    const auto res =
                        full_bb(inst, std::chrono::milliseconds(config.fixed_timeout_ms));
                    row.f = res.value;
                    row.baseline_timed_out = !res.optimal;
                    break;
                }
                }
                row.baseline_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                      std::chrono::steady_clock::now() - b0)
                                      .count();
                row.quality = quality(row.r, row.f);
                rows.push_back(std::move(row));
            } catch (const std::exception& e) {
                std::cerr << "spni bench: row (" << grid_rows << "x" << grid_cols << ", seed "
                          << seed << ") failed: " << e.what() << "\n";
            }
        }
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "size,seed,budget,r,f,quality,refine_ms,baseline_ms,baseline_timed_out\n";
    for (const BenchRow& row : rows) {
        char q[32];
        std::snprintf(q, sizeof q, "%.6f", row.quality);
        out << row.size << ',' << row.seed << ',' << row.budget << ',' << row.r << ',' << row.f
            << ',' << q << ',' << row.refine_ms << ',' << row.baseline_ms << ','
            << (row.baseline_timed_out ? 1 : 0) << "\n";
    }
    return out.str();
}

} // namespace spni
