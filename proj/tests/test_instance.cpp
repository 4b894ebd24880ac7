#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "spni/instance.hpp"
#include "spni/rng.hpp"

using namespace spni;
using namespace spni::testing;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = (std::filesystem::temp_directory_path() / name).string();
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("grid shape and arc counts") {
    const auto g33 = generate_grid(3, 3, 1);
    CHECK(g33.network.node_count == 11);
    CHECK(g33.network.arcs.size() == 18); // 2(|N| - 2) on square grids

    const auto g22 = generate_grid(2, 2, 1);
    CHECK(g22.network.node_count == 6);
    CHECK(g22.network.arcs.size() == 8);

    // Rectangles: 2*rows*cols + rows - cols arcs.
    const auto g35 = generate_grid(3, 5, 1);
    CHECK(static_cast<int>(g35.network.arcs.size()) == 2 * 3 * 5 + 3 - 5);
}

TEST_CASE("square grids satisfy the arc-count identity") {
    for (int side = 2; side <= 8; ++side) {
        const auto g = generate_grid(side, side, 99);
        CHECK(static_cast<int>(g.network.arcs.size()) == 2 * (g.network.node_count - 2));
    }
}

TEST_CASE("grid weights: terminal arcs free, interior in [1,10]") {
    const auto g = generate_grid(5, 4, 123);
    for (const Arc& a : g.network.arcs) {
        if (a.tail == g.source || a.head == g.sink) {
            CHECK(a.c == 0);
            CHECK(a.d == 0);
        } else {
            CHECK(a.c >= 1);
            CHECK(a.c <= 10);
            CHECK(a.d >= 1);
            CHECK(a.d <= 10);
        }
    }
    // The generator always yields a feasible instance.
    CHECK(calc_length(g, {}).has_value());
}

TEST_CASE("grid generation is deterministic per seed") {
    CHECK(generate_grid(4, 4, 7) == generate_grid(4, 4, 7));
    CHECK(generate_grid(4, 4, 7) != generate_grid(4, 4, 8));
}

TEST_CASE("generate_grid rejects degenerate shapes") {
    CHECK_THROWS_AS(generate_grid(1, 3, 0), InputError);
    CHECK_THROWS_AS(generate_grid(3, 1, 0), InputError);
}

TEST_CASE("validate flags each violation") {
    CHECK(validate(p3()).empty());

    auto over = p3();
    over.budget = 3;
    const auto v1 = validate(over);
    REQUIRE(v1.size() == 1);
    CHECK(v1[0].find("budget exceeds arc count") != std::string::npos);

    auto bad = p3();
    bad.network.arcs[1].head = 3; // == node_count
    const auto v2 = validate(bad);
    REQUIRE(v2.size() == 1);
    CHECK(v2[0].find("node id out of range") != std::string::npos);

    auto both = p3();
    both.budget = 5;
    both.network.arcs[0].c = -2;
    CHECK(validate(both).size() == 2);
}

TEST_CASE("instance files round-trip exactly") {
    TempFile file("spni_instance_roundtrip.json");
    const auto inst = p3();
    write_instance(inst, file.path);
    CHECK(read_instance(file.path) == inst);

    SplitMix64 rng(3);
    for (int i = 0; i < 20; ++i) {
        auto g = generate_grid(2 + static_cast<int>(rng.next_below(5)),
                               2 + static_cast<int>(rng.next_below(5)), rng.next());
        g.budget = static_cast<int>(rng.next_below(4));
        write_instance(g, file.path);
        CHECK(read_instance(file.path) == g);
    }
}

TEST_CASE("read errors name the offending field") {
    TempFile file("spni_instance_bad.json");
    {
        std::ofstream out(file.path);
        out << R"({"node_count": 3, "arcs": [[0,1,2,3]], "source": 0, "sink": 2})";
    }
    CHECK_THROWS_WITH_AS(read_instance(file.path),
                         doctest::Contains("missing field \"budget\""), ParseError);

    {
        std::ofstream out(file.path);
        out << R"({"node_count": 3, "arcs": [[0,1,2,-3]], "source": 0, "sink": 2, "budget": 1})";
    }
    CHECK_THROWS_AS(read_instance(file.path), InputError); // negative d fails validation

    {
        std::ofstream out(file.path);
        out << "{not json";
    }
    CHECK_THROWS_AS(read_instance(file.path), ParseError);
}
