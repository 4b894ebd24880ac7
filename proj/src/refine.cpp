#include "spni/refine.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace spni {

namespace {

Length require_length(const PathLength& len) {
    if (!len) throw UnreachableError("sink is unreachable from source");
    return *len;
}

// Run tasks 0..count-1 on up to `workers` threads. Results land in
// caller-owned slots, so scheduling cannot affect the outcome; the first
// task exception (by index) is rethrown.
void run_tasks(int workers, int count, const std::function<void(int)>& task) {
    if (count <= 0) return;
    const int threads = std::max(1, std::min(workers, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    task(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

struct SinkSolve {
    NodeId sink = -1;
    InterdictionSet solution;
    Length length = 0;
};

// One sub-solve per sink, results ordered by sink id.
std::vector<SinkSolve> sweep_each(const ProblemInstance& inst, const Partitioning& partitioning,
                                  std::vector<NodeId> sinks, const InterdictionSet& base,
                                  const SubSolverKind& kind, std::uint64_t seed, int workers) {
    std::sort(sinks.begin(), sinks.end());
    sinks.erase(std::unique(sinks.begin(), sinks.end()), sinks.end());
    std::vector<SinkSolve> results(sinks.size());
    run_tasks(workers, static_cast<int>(sinks.size()), [&](int i) {
        const NodeId sink = sinks[i];
        const int b = find_block(partitioning, sink);
        const SubproblemSpec spec = make_spec(inst, partitioning.blocks[b], sink, base);
        SplitMix64 task_rng(derive_seed(seed, {static_cast<std::uint64_t>(sink)}));
        SinkSolve& slot = results[i];
        slot.sink = sink;
        slot.solution = solve_sub(spec, kind, task_rng);
        slot.length = require_length(calc_length(inst, slot.solution));
    });
    return results;
}

} // namespace

SweepResult sweep(const ProblemInstance& inst, const Partitioning& partitioning,
                  const std::vector<NodeId>& sinks, const InterdictionSet& base,
                  const SubSolverKind& kind, std::uint64_t seed, int workers) {
    SweepResult result;
    result.best_length = require_length(calc_length(inst, base));
    result.candidates = {base};
    for (SinkSolve& s : sweep_each(inst, partitioning, sinks, base, kind, seed, workers)) {
        if (s.length > result.best_length) {
            result.best_length = s.length;
            result.candidates.clear();
            result.candidates.push_back(std::move(s.solution));
        } else if (s.length == result.best_length) {
            result.candidates.push_back(std::move(s.solution));
        }
    }
    return result;
}

InterdictionSet initial_solution(const ProblemInstance& inst, const RefineConfig& cfg) {
    InterdictionSet current;
    // Fails fast on infeasible instances.
    const std::vector<NodeId> initial_path = calc_path(inst, current);

    SplitMix64 master(cfg.seed);
    for (int unit = 1; unit <= inst.budget; ++unit) {
        const Partitioning partitioning = partition(inst.network, cfg.n, master);
        std::vector<NodeId> sinks = calc_path(inst, current);
        sinks.insert(sinks.end(), initial_path.begin(), initial_path.end());
        const std::uint64_t sweep_seed = master.next();
        SweepResult swept =
            sweep(inst, partitioning, sinks, current, cfg.subsolver, sweep_seed, cfg.workers);
        current = swept.candidates[master.next_below(swept.candidates.size())];
    }
    return current;
}

InterdictionSet refine(const ProblemInstance& inst, const RefineConfig& cfg,
                       InterdictionSet current, RefineTrace* trace) {
    if (current.size() > inst.budget)
        throw InputError("refine: start solution exceeds the budget");
    const std::vector<NodeId> initial_path = calc_path(inst, current);
    InterdictionSet good_arcs; // deletions that failed to enable improvement

    SplitMix64 master(cfg.seed ^ 0x5157ED5157ED5157ULL);
    if (trace)
        trace->rows.push_back({0, require_length(calc_length(inst, current)),
                               current.size(), 0, 0, 0});

    for (int iter = 1; iter <= cfg.lambda; ++iter) {
        const auto t0 = std::chrono::steady_clock::now();
        const Partitioning partitioning = partition(inst.network, cfg.n, master);
        std::vector<NodeId> sinks = calc_path(inst, current);
        sinks.insert(sinks.end(), initial_path.begin(), initial_path.end());

        const Length prev_length = require_length(calc_length(inst, current));
        const std::uint64_t sweep_seed = master.next();
        SweepResult swept =
            sweep(inst, partitioning, sinks, current, cfg.subsolver, sweep_seed, cfg.workers);

        if (swept.best_length > prev_length) {
            current = swept.candidates[master.next_below(swept.candidates.size())];
            good_arcs = InterdictionSet();
        } else {
            // Stalled: probe deleting one arc at a time (skipping known-bad
            // deletions) and adopt the first strict improvement, scanning
            // sinks in id order.
            bool adopted = false;
            const std::vector<ArcId> arcs = current.ids();
            for (ArcId arc : arcs) {
                if (good_arcs.contains(arc)) continue;
                InterdictionSet probe = current;
                probe.erase(arc);
                const std::uint64_t probe_seed = master.next();
                const auto solves = sweep_each(inst, partitioning, sinks, probe, cfg.subsolver,
                                               probe_seed, cfg.workers);
                for (const SinkSolve& s : solves) {
                    if (s.length > prev_length) {
                        current = s.solution;
                        good_arcs = InterdictionSet();
                        adopted = true;
                        break;
                    }
                }
                if (adopted) break;
                good_arcs.insert(arc);
            }
        }

        if (trace) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
            trace->rows.push_back({iter, require_length(calc_length(inst, current)),
                                   current.size(), static_cast<int>(swept.candidates.size()),
                                   good_arcs.size(), ms});
        }
    }
    return current;
}

std::pair<InterdictionSet, RefineTrace> solve_spni(const ProblemInstance& inst,
                                                   const RefineConfig& cfg) {
    RefineTrace trace;
    InterdictionSet solution = refine(inst, cfg, initial_solution(inst, cfg), &trace);
    return {std::move(solution), std::move(trace)};
}

std::string RefineTrace::to_csv() const {
    std::ostringstream out;
    out << "iteration,objective,solution_size,candidates,good_arcs,millis\n";
    for (const TraceRow& r : rows)
        out << r.iteration << ',' << r.objective << ',' << r.solution_size << ','
            << r.candidates << ',' << r.good_arcs << ',' << r.millis << "\n";
    return out.str();
}

void RefineTrace::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << to_csv();
    if (!out) throw IoError("write failed: " + path);
}

} // namespace spni

