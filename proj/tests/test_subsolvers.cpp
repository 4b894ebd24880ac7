#include <doctest.h>

#include <algorithm>
#include <bit>

#include "fixtures.hpp"
#include "spni/instance.hpp"
#include "spni/partition.hpp"
#include "spni/subsolvers.hpp"

using namespace spni;
using namespace spni::testing;

namespace {

// Independent oracle: every subset of the scope within the local budget.
BbResult enumerate_best(const SubproblemSpec& spec) {
    const auto scope = spec.scope_arcs();
    const int m = static_cast<int>(scope.size());
    REQUIRE(m <= 20);
    BbResult best;
    best.local_x = InterdictionSet();
    best.value = local_distance(spec, best.local_x);
    for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
        if (std::popcount(mask) > spec.local_budget) continue;
        std::vector<ArcId> ids;
        for (int i = 0; i < m; ++i)
            if (mask & (1ULL << i)) ids.push_back(scope[i]);
        const InterdictionSet x(std::move(ids));
        const Length v = local_distance(spec, x);
        if (v > best.value || (v == best.value && x < best.local_x)) {
            best.value = v;
            best.local_x = x;
        }
    }
    return best;
}

SubproblemSpec random_spec(SplitMix64& rng, const ProblemInstance& inst, int max_scope) {
    for (;;) {
        const auto parts = partition(inst.network, 2 + static_cast<int>(rng.next_below(4)),
                                     rng.next());
        const auto& block = parts.blocks[rng.next_below(parts.blocks.size())];
        InterdictionSet base;
        while (base.size() < inst.budget && rng.next_below(2) == 0)
            base.insert(static_cast<ArcId>(rng.next_below(inst.network.arcs.size())));
        const NodeId sink = block[rng.next_below(block.size())];
        SubproblemSpec spec = make_spec(inst, block, sink, base);
        if (static_cast<int>(spec.scope_arcs().size()) <= max_scope) return spec;
    }
}

} // namespace

TEST_CASE("make_spec splits scope arcs and budget") {
    const auto inst = p3();
    const auto spec = make_spec(inst, {1, 2}, 2, InterdictionSet());
    CHECK(spec.gamma == std::vector<Length>{0, 2, 6});
    CHECK(spec.local_budget == 1);
    CHECK(spec.internal == std::vector<ArcId>{1});
    CHECK(spec.entering == std::vector<ArcId>{0});
    CHECK(spec.scope_arcs() == std::vector<ArcId>{0, 1});

    // Arc 0 lies inside the scope, so it costs no outside budget.
    const auto spec2 = make_spec(inst, {1, 2}, 2, InterdictionSet({0}));
    CHECK(spec2.local_budget == 1);
    CHECK(spec2.gamma == std::vector<Length>{0, 5, 9});

    // D4: base interdiction of arc (0,2) lands outside the block {1,3}.
    const auto d = d4();
    const auto spec3 = make_spec(d, {1, 3}, 3, InterdictionSet({1}));
    CHECK(spec3.local_budget == 1);

    CHECK_THROWS_AS(make_spec(inst, {1, 2}, 0, InterdictionSet()), InputError);
}

TEST_CASE("local_distance on the two-arc path block") {
    const auto inst = p3();
    const auto spec = make_spec(inst, {1, 2}, 2, InterdictionSet());
    CHECK(local_distance(spec, InterdictionSet()) == 6);
    CHECK(local_distance(spec, InterdictionSet({0})) == 9);
    CHECK(local_distance(spec, InterdictionSet({1})) == 7);
    CHECK_THROWS_AS(local_distance(spec, InterdictionSet({0, 1})), InputError); // budget 1

    auto rich = inst;
    rich.budget = 2;
    const auto spec2 = make_spec(rich, {1, 2}, 2, InterdictionSet());
    CHECK(local_distance(spec2, InterdictionSet({0, 1})) == 10);
}

TEST_CASE("local_distance with the base restriction equals the frozen labels") {
    SplitMix64 rng(71);
    for (int round = 0; round < 60; ++round) {
        auto inst = generate_grid(3 + static_cast<int>(rng.next_below(3)),
                                  3 + static_cast<int>(rng.next_below(3)), rng.next());
        inst.budget = 3;
        const auto spec = random_spec(rng, inst, 64);
        InterdictionSet inside;
        for (ArcId k : spec.base.ids())
            if (spec.in_scope(k)) inside.insert(k);
        const Length expect =
            std::min(all_labels(inst, spec.base)[spec.local_sink], spec.label_bound);
        CHECK(local_distance(spec, inside) == expect);
    }
}

TEST_CASE("local_distance is monotone in the interdiction set") {
    SplitMix64 rng(72);
    for (int round = 0; round < 40; ++round) {
        auto inst = generate_grid(3, 4, rng.next());
        inst.budget = static_cast<int>(inst.network.arcs.size());
        const auto spec = random_spec(rng, inst, 64);
        const auto scope = spec.scope_arcs();
        InterdictionSet small, large;
        for (ArcId k : scope) {
            const auto roll = rng.next_below(4);
            if (roll == 0) small.insert(k);
            if (roll <= 1) large.insert(k);
        }
        for (ArcId k : small.ids()) large.insert(k);
        CHECK(local_distance(spec, small) <= local_distance(spec, large));
    }
}

TEST_CASE("bb_exact on the named examples") {
    const auto inst = p3();
    const auto spec = make_spec(inst, {1, 2}, 2, InterdictionSet());
    const auto res = bb_exact(spec);
    CHECK(res.value == 9);
    CHECK(res.local_x == InterdictionSet({0}));
    CHECK(res.optimal);

    // Whole-graph diamond with budget 2: any cut pair reaches 12; the
    // lexicographically smallest is {0, 1}.
    const auto d = d4();
    const auto whole = make_spec(d, {0, 1, 2, 3}, 3, InterdictionSet());
    const auto cut = bb_exact(whole);
    CHECK(cut.value == 12);
    CHECK(cut.local_x == InterdictionSet({0, 1}));
}

TEST_CASE("bb_exact with budget covering the whole scope") {
    auto inst = p3();
    inst.budget = 2;
    const auto spec = make_spec(inst, {1, 2}, 2, InterdictionSet());
    InterdictionSet all({0, 1});
    const auto res = bb_exact(spec);
    CHECK(res.value == local_distance(spec, all)); // monotone: all-in is optimal
}

TEST_CASE("bb_exact equals subset enumeration on random subproblems") {
    SplitMix64 rng(73);
    int checked = 0;
    while (checked < 50) {
        auto inst = generate_grid(3, 3, rng.next());
        inst.budget = 1 + static_cast<int>(rng.next_below(3));
        const auto spec = random_spec(rng, inst, 12);
        const auto expect = enumerate_best(spec);
        const auto got = bb_exact(spec);
        REQUIRE(got.value == expect.value);
        REQUIRE(got.local_x == expect.local_x);
        ++checked;
    }
}

TEST_CASE("solve_sub recombines into a full solution") {
    const auto inst = p3();
    const auto spec = make_spec(inst, {1, 2}, 2, InterdictionSet());
    CHECK(solve_sub(spec, SubSolverKind::bb(), 1) == InterdictionSet({0}));

    // Budget exhausted outside the block: inside stays untouched.
    auto d = d4();
    d.budget = 1;
    const auto stuck = make_spec(d, {1, 3}, 3, InterdictionSet({1}));
    CHECK(stuck.local_budget == 0);
    CHECK(solve_sub(stuck, SubSolverKind::bb(), 1) == InterdictionSet({1}));
}

TEST_CASE("solve_sub never exceeds the instance budget or touches outside arcs") {
    SplitMix64 rng(74);
    for (int round = 0; round < 40; ++round) {
        auto inst = generate_grid(4, 4, rng.next());
        inst.budget = 1 + static_cast<int>(rng.next_below(3));
        InterdictionSet base;
        while (base.size() < inst.budget && rng.next_below(2) == 0)
            base.insert(static_cast<ArcId>(rng.next_below(inst.network.arcs.size())));
        const auto parts = partition(inst.network, 5, rng.next());
        const auto& block = parts.blocks[rng.next_below(parts.blocks.size())];
        const NodeId sink = block[rng.next_below(block.size())];
        const auto spec = make_spec(inst, block, sink, base);
        const auto result = solve_sub(spec, SubSolverKind::bb(), rng.next());
        CHECK(result.size() <= inst.budget);
        for (ArcId k = 0; k < static_cast<int>(inst.network.arcs.size()); ++k) {
            if (!spec.in_scope(k)) CHECK(result.contains(k) == base.contains(k));
        }
    }
}

TEST_CASE("exhaustive QUBO backend agrees with the exact search") {
    SplitMix64 rng(75);
    int checked = 0;
    while (checked < 12) {
        auto inst = generate_grid(3, 3, rng.next());
        inst.budget = 1 + static_cast<int>(rng.next_below(2));
        const auto spec = random_spec(rng, inst, 4);
        const Qubo q = build_sub_qubo(spec, default_penalty(inst));
        if (q.var_count > 24) continue;
        const auto viaQubo = solve_sub(spec, SubSolverKind::exhaustive(24, false), 1);
        const auto viaBb = solve_sub(spec, SubSolverKind::bb(), 1);
        // Both recombine to solutions of equal local objective.
        InterdictionSet qubo_local, bb_local;
        for (ArcId k : viaQubo.ids())
            if (spec.in_scope(k)) qubo_local.insert(k);
        for (ArcId k : viaBb.ids())
            if (spec.in_scope(k)) bb_local.insert(k);
        CHECK(local_distance(spec, qubo_local) == local_distance(spec, bb_local));
        ++checked;
    }
}

TEST_CASE("exhaustive backend capacity handling") {
    auto inst = generate_grid(4, 4, 3);
    inst.budget = 2;
    std::vector<NodeId> all(inst.network.node_count);
    for (NodeId v = 0; v < inst.network.node_count; ++v) all[v] = v;
    const auto spec = make_spec(inst, all, inst.sink, InterdictionSet());
    CHECK_THROWS_AS(solve_sub(spec, SubSolverKind::exhaustive(20, false), 1), CapacityError);
    // With the fallback the exact backend answers instead.
    const auto fallback = solve_sub(spec, SubSolverKind::exhaustive(20, true), 1);
    const auto direct = solve_sub(spec, SubSolverKind::bb(), 1);
    CHECK(calc_length(inst, fallback) == calc_length(inst, direct));
    CHECK_THROWS_AS(solve_sub(spec, SubSolverKind::exhaustive(40, false), 1), InputError);
}

TEST_CASE("annealer finds the block optimum almost always") {
    const auto inst = p3();
    const auto spec = make_spec(inst, {1, 2}, 2, InterdictionSet());
    const Qubo q = build_sub_qubo(spec, default_penalty(inst));
    const Length exact = bb_exact(spec).value;
    int hits = 0;
    AnnealParams params;
    params.sweeps = 2000;
    params.restarts = 8;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SplitMix64 rng(seed);
        const auto res = qubo_anneal(q, params, rng);
        if (res.best_feasible && res.best_feasible_value == exact) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("annealer is deterministic per seed") {
    const auto inst = p3();
    const Qubo q = build_full_qubo(inst, default_penalty(inst));
    AnnealParams params;
    params.sweeps = 50;
    params.restarts = 2;
    SplitMix64 a(9), b(9);
    const auto ra = qubo_anneal(q, params, a);
    const auto rb = qubo_anneal(q, params, b);
    CHECK(ra.best == rb.best);
    CHECK(ra.best_value == rb.best_value);
}

TEST_CASE("annealer on a zero-variable qubo") {
    ProblemInstance empty;
    empty.network.node_count = 2;
    empty.source = 0;
    empty.sink = 1;
    empty.budget = 0;
    const Qubo q = build_full_qubo(empty, 1);
    REQUIRE(q.var_count == 0);
    AnnealParams params;
    SplitMix64 rng(0);
    const auto res = qubo_anneal(q, params, rng);
    CHECK(res.best.empty());
    CHECK(res.best_value == q.constant);
}

TEST_CASE("anneal backend inside solve_sub") {
    const auto inst = p3();
    const auto spec = make_spec(inst, {1, 2}, 2, InterdictionSet());
    AnnealParams params;
    params.sweeps = 500;
    params.restarts = 4;
    const auto result = solve_sub(spec, SubSolverKind::annealed(params), 42);
    CHECK(result.size() <= inst.budget);
    CHECK(calc_length(inst, result) == 9);
}
