#ifndef SPNI_TESTS_FIXTURES_HPP
#define SPNI_TESTS_FIXTURES_HPP

#include "spni/graph.hpp"

namespace spni::testing {

// Two-arc path 0 -> 1 -> 2 with budget 1. Optimal interdiction is arc 0
// (length 9 vs 7).
inline ProblemInstance p3() {
    ProblemInstance inst;
    inst.network.node_count = 3;
    inst.network.arcs = {{0, 1, 2, 3}, {1, 2, 4, 1}};
    inst.source = 0;
    inst.sink = 2;
    inst.budget = 1;
    return inst;
}

// Diamond 0 -> {1,2} -> 3, every arc (c=1, d=10), budget 2. Any pair
// cutting both routes scores 12; a single arc changes nothing (length 2).
inline ProblemInstance d4() {
    ProblemInstance inst;
    inst.network.node_count = 4;
    inst.network.arcs = {{0, 1, 1, 10}, {0, 2, 1, 10}, {1, 3, 1, 10}, {2, 3, 1, 10}};
    inst.source = 0;
    inst.sink = 3;
    inst.budget = 2;
    return inst;
}

// Directed path 0 -> 1 -> ... -> (n-1), unit lengths.
inline ProblemInstance path_graph(int n) {
    ProblemInstance inst;
    inst.network.node_count = n;
    for (NodeId v = 0; v + 1 < n; ++v) inst.network.arcs.push_back({v, v + 1, 1, 1});
    inst.source = 0;
    inst.sink = n - 1;
    inst.budget = 0;
    return inst;
}

} // namespace spni::testing

#endif
