#ifndef SPNI_ANNEAL_HPP
#define SPNI_ANNEAL_HPP

#include <optional>
#include <vector>

#include "spni/qubo.hpp"
#include "spni/rng.hpp"

namespace spni {

// Single-bit-flip simulated annealing with a geometric temperature schedule.
// t_start = 0 picks a starting temperature from the coefficient scale.
struct AnnealParams {
    int sweeps = 2000;
    int restarts = 8;
    double t_start = 0;
    double t_end = 0.05;
};

struct AnnealResult {
    std::vector<std::uint8_t> best; // best assignment by QUBO value
    Length best_value = 0;
    // Best assignment whose penalty residuals all vanish, when one was seen.
    std::optional<std::vector<std::uint8_t>> best_feasible;
    Length best_feasible_value = 0;
};

// Deterministic given the rng seed: restarts run sequentially, bits swept in
// index order.
AnnealResult qubo_anneal(const Qubo& q, const AnnealParams& params, SplitMix64& rng);

} // namespace spni

#endif
