#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "spni/bench.hpp"
#include "spni/instance.hpp"

using namespace spni;
using namespace spni::testing;

TEST_CASE("brute force oracle on the named instances") {
    const auto res = brute_force_optimum(p3());
    CHECK(res.value == 9);
    CHECK(res.best == InterdictionSet({0}));

    const auto d = brute_force_optimum(d4());
    CHECK(d.value == 12);
    CHECK(d.best == InterdictionSet({0, 1})); // lexicographically smallest cut

    auto zero = p3();
    zero.budget = 0;
    const auto empty = brute_force_optimum(zero);
    CHECK(empty.value == 6);
    CHECK(empty.best.empty());
}

TEST_CASE("brute force respects its enumeration cap") {
    auto inst = generate_grid(5, 5, 1);
    inst.budget = 3;
    CHECK_THROWS_AS(brute_force_optimum(inst, 100), CapacityError);
    CHECK_NOTHROW(brute_force_optimum(inst, 50'000));
}

TEST_CASE("full_bb equals the oracle when untimed") {
    const auto res = full_bb(p3());
    CHECK(res.value == 9);
    CHECK(res.best == InterdictionSet({0}));
    CHECK(res.optimal);

    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto inst = generate_grid(4, 4, seed);
        inst.budget = 2;
        const auto bb = full_bb(inst);
        const auto oracle = brute_force_optimum(inst);
        CHECK(bb.optimal);
        CHECK(bb.value == oracle.value);
        CHECK(bb.best == oracle.best);
    }
}

TEST_CASE("full_bb with no time returns a flagged incumbent") {
    auto inst = generate_grid(5, 5, 2);
    inst.budget = 3;
    const auto res = full_bb(inst, std::chrono::milliseconds(0));
    CHECK_FALSE(res.optimal);
    CHECK(res.best.size() <= inst.budget);
    CHECK(res.value <= brute_force_optimum(inst).value);
}

TEST_CASE("quality ratio") {
    CHECK(quality(9, 9) == doctest::Approx(0));
    CHECK(quality(9, 10) == doctest::Approx(-0.1));
    CHECK(quality(10, 9) == doctest::Approx(0.1));
    CHECK(quality(0, 0) == 0);
    for (Length r = 0; r <= 12; ++r)
        for (Length f = 0; f <= 12; ++f)
            CHECK(quality(r, f) == doctest::Approx(-quality(f, r)));
}

TEST_CASE("run_benchmark desk regime against the oracle") {
    BenchConfig config;
    config.sizes = {{3, 3}, {4, 4}};
    config.fixed_budget = 2;
    config.n = 10;
    config.lambda = 4;
    config.seeds = {0, 1, 2};
    config.mode = BaselineMode::Oracle;
    const auto rows = run_benchmark(config);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
        CHECK(row.budget == 2);
        CHECK(row.quality <= 0); // the oracle is exact, r can never beat f
        CHECK_FALSE(row.baseline_timed_out);
        CHECK(row.r <= row.f);
        // Trace objectives never decrease.
        for (std::size_t i = 1; i < row.trace.rows.size(); ++i)
            CHECK(row.trace.rows[i].objective >= row.trace.rows[i - 1].objective);
    }
    // Rows arrive in config order.
    CHECK(rows[0].size == 11);
    CHECK(rows[3].size == 18);

    const auto csv = bench_csv(rows);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "size,seed,budget,r,f,quality,refine_ms,baseline_ms,baseline_timed_out");
    int body = 0;
    std::string line;
    while (std::getline(lines, line))
        if (!line.empty()) ++body;
    CHECK(body == 6);
}

TEST_CASE("fractional budgets floor at one") {
    BenchConfig config;
    config.sizes = {{3, 3}};
    config.budget_fraction = 0.0025; // 0.045 arcs, rounds to 0, floored to 1
    config.n = 10;
    config.lambda = 1;
    config.seeds = {0};
    config.mode = BaselineMode::Oracle;
    const auto rows = run_benchmark(config);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].budget == 1);
}

TEST_CASE("matched timeout mode flags baseline timeouts honestly") {
    BenchConfig config;
    config.sizes = {{4, 4}};
    config.fixed_budget = 2;
    config.n = 8;
    config.lambda = 2;
    config.seeds = {3};
    config.mode = BaselineMode::Matched;
    const auto rows = run_benchmark(config);
    REQUIRE(rows.size() == 1);
    // Whether or not the baseline finished, the recorded f must come from a
    // solution within budget, and quality reflects r vs f.
    CHECK(rows[0].quality == doctest::Approx(quality(rows[0].r, rows[0].f)));
}
