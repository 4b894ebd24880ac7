#include <doctest.h>

#include "fixtures.hpp"
#include "spni/bench.hpp"
#include "spni/instance.hpp"
#include "spni/refine.hpp"

using namespace spni;
using namespace spni::testing;

namespace {

Partitioning single_block(const Network& net) {
    Partitioning p;
    p.node_count = net.node_count;
    std::vector<NodeId> all(net.node_count);
    for (NodeId v = 0; v < net.node_count; ++v) all[v] = v;
    p.blocks = {all};
    return p;
}

} // namespace

TEST_CASE("sweep on the two-arc path finds the interdiction of arc 0") {
    const auto inst = p3();
    const auto p = single_block(inst.network);
    const auto result = sweep(inst, p, {0, 1, 2}, InterdictionSet(), SubSolverKind::bb(), 1, 1);
    CHECK(result.best_length == 9);
    REQUIRE_FALSE(result.candidates.empty());
    for (const auto& c : result.candidates) CHECK(c == InterdictionSet({0}));
}

TEST_CASE("sweep with no sinks returns the baseline") {
    const auto inst = p3();
    const auto p = single_block(inst.network);
    const InterdictionSet base({1});
    const auto result = sweep(inst, p, {}, base, SubSolverKind::bb(), 1, 1);
    CHECK(result.best_length == 7);
    REQUIRE(result.candidates.size() == 1);
    CHECK(result.candidates[0] == base);
}

TEST_CASE("sweep on the diamond with budget 1 cannot improve") {
    auto inst = d4();
    inst.budget = 1;
    const auto p = single_block(inst.network);
    const auto result =
        sweep(inst, p, {0, 1, 2, 3}, InterdictionSet(), SubSolverKind::bb(), 1, 1);
    CHECK(result.best_length == 2);
    // The baseline is always among the candidates and every candidate
    // attains the best length.
    CHECK(result.candidates[0] == InterdictionSet());
    for (const auto& c : result.candidates) CHECK(calc_length(inst, c) == 2);
}

TEST_CASE("sweep output is identical for any worker count") {
    auto inst = generate_grid(5, 5, 3);
    inst.budget = 2;
    const auto parts = partition(inst.network, 8, std::uint64_t{11});
    std::vector<NodeId> sinks = calc_path(inst, {});
    const auto one = sweep(inst, parts, sinks, InterdictionSet(), SubSolverKind::bb(), 5, 1);
    const auto four = sweep(inst, parts, sinks, InterdictionSet(), SubSolverKind::bb(), 5, 4);
    const auto eight = sweep(inst, parts, sinks, InterdictionSet(), SubSolverKind::bb(), 5, 8);
    CHECK(one.best_length == four.best_length);
    CHECK(one.candidates == four.candidates);
    CHECK(one.candidates == eight.candidates);
}

TEST_CASE("initial_solution with zero budget is empty") {
    auto inst = p3();
    inst.budget = 0;
    RefineConfig cfg;
    cfg.n = 10;
    CHECK(initial_solution(inst, cfg).empty());
}

TEST_CASE("initial_solution on the two-arc path") {
    const auto inst = p3();
    RefineConfig cfg;
    cfg.n = 10;
    cfg.seed = 3;
    const auto sol = initial_solution(inst, cfg);
    CHECK(sol == InterdictionSet({0}));
    CHECK(calc_length(inst, sol) == 9);
}

TEST_CASE("initial_solution cuts the diamond whenever a block covers the sink") {
    const auto inst = d4();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RefineConfig cfg;
        cfg.n = 10; // single block
        cfg.seed = seed;
        const auto sol = initial_solution(inst, cfg);
        const auto len = calc_length(inst, sol);
        REQUIRE(len.has_value());
        CHECK(*len >= 2);
        CHECK(*len == 12); // whole-graph sweep reaches the optimum in pass 1
        CHECK(sol.size() <= inst.budget);
    }
}

TEST_CASE("initial_solution rejects infeasible instances") {
    ProblemInstance inst;
    inst.network.node_count = 3;
    inst.network.arcs = {{0, 1, 1, 1}};
    inst.source = 0;
    inst.sink = 2;
    inst.budget = 1;
    RefineConfig cfg;
    CHECK_THROWS_AS(initial_solution(inst, cfg), UnreachableError);
}

TEST_CASE("refine with zero iterations returns the input") {
    const auto inst = p3();
    RefineConfig cfg;
    cfg.lambda = 0;
    const InterdictionSet start({1});
    RefineTrace trace;
    CHECK(refine(inst, cfg, start, &trace) == start);
    REQUIRE(trace.rows.size() == 1);
    CHECK(trace.rows[0].objective == 7);
}

TEST_CASE("refine reallocates a misplaced budget unit on the diamond") {
    const auto inst = d4();
    // Both units sit on the 0-1-3 route; the shortest path is 0-2-3 at 2.
    const InterdictionSet start({0, 2});
    REQUIRE(calc_length(inst, start) == 2);
    RefineConfig cfg;
    cfg.n = 10;
    cfg.lambda = 5;
    cfg.seed = 4;
    RefineTrace trace;
    const auto sol = refine(inst, cfg, start, &trace);
    CHECK(calc_length(inst, sol) == 12);
    for (std::size_t i = 1; i < trace.rows.size(); ++i)
        CHECK(trace.rows[i].objective >= trace.rows[i - 1].objective);
}

TEST_CASE("refine never degrades an already optimal solution") {
    const auto inst = p3();
    RefineConfig cfg;
    cfg.n = 10;
    cfg.lambda = 8;
    cfg.seed = 5;
    const auto sol = refine(inst, cfg, InterdictionSet({0}), nullptr);
    CHECK(calc_length(inst, sol) == 9);
}

TEST_CASE("stalled refinement fills good-arcs instead of looping") {
    auto inst = d4();
    inst.budget = 1; // nothing a single unit can improve
    RefineConfig cfg;
    cfg.n = 10;
    cfg.lambda = 3;
    cfg.seed = 6;
    RefineTrace trace;
    const auto sol = refine(inst, cfg, InterdictionSet({0}), &trace);
    CHECK(calc_length(inst, sol) == 2);
    CHECK(sol == InterdictionSet({0}));
    // The lone arc becomes a good-arc in iteration 1 and is never re-probed.
    for (std::size_t i = 1; i < trace.rows.size(); ++i)
        CHECK(trace.rows[i].good_arcs == 1);
}

TEST_CASE("solve_spni end to end") {
    const auto inst = p3();
    RefineConfig cfg;
    cfg.n = 10;
    cfg.lambda = 4;
    cfg.seed = 7;
    const auto [sol, trace] = solve_spni(inst, cfg);
    CHECK(calc_length(inst, sol) == 9);
    REQUIRE(trace.rows.size() == 5); // start row + lambda iterations
    CHECK(trace.rows.front().iteration == 0);
    CHECK(trace.rows.back().iteration == 4);
}

TEST_CASE("solve_spni matches the oracle on single-block small grids") {
    int optimal_runs = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = generate_grid(5, 5, seed);
        inst.budget = 2;
        RefineConfig cfg;
        cfg.n = 27; // single block
        cfg.lambda = 10;
        cfg.seed = seed;
        const auto [sol, trace] = solve_spni(inst, cfg);
        const auto oracle = brute_force_optimum(inst);
        if (*calc_length(inst, sol) == oracle.value) ++optimal_runs;
    }
    CHECK(optimal_runs >= 8);
}

TEST_CASE("solve_spni is deterministic and worker-count independent") {
    auto inst = generate_grid(5, 5, 9);
    inst.budget = 2;
    RefineConfig a;
    a.n = 8;
    a.lambda = 6;
    a.seed = 21;
    a.workers = 1;
    RefineConfig b = a;
    b.workers = 4;
    const auto [sol_a, trace_a] = solve_spni(inst, a);
    const auto [sol_b, trace_b] = solve_spni(inst, b);
    CHECK(sol_a == sol_b);
    REQUIRE(trace_a.rows.size() == trace_b.rows.size());
    for (std::size_t i = 0; i < trace_a.rows.size(); ++i) {
        CHECK(trace_a.rows[i].objective == trace_b.rows[i].objective);
        CHECK(trace_a.rows[i].solution_size == trace_b.rows[i].solution_size);
        CHECK(trace_a.rows[i].candidates == trace_b.rows[i].candidates);
        CHECK(trace_a.rows[i].good_arcs == trace_b.rows[i].good_arcs);
    }
    const auto [sol_c, trace_c] = solve_spni(inst, a);
    CHECK(sol_a == sol_c);
}

TEST_CASE("trace CSV shape") {
    RefineTrace trace;
    trace.rows = {{0, 6, 0, 0, 0, 0}, {1, 9, 1, 2, 0, 3}};
    const auto csv = trace.to_csv();
    CHECK(csv == "iteration,objective,solution_size,candidates,good_arcs,millis\n"
                 "0,6,0,0,0,0\n"
                 "1,9,1,2,0,3\n");
}
