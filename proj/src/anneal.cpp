#include "spni/anneal.hpp"

#include <cmath>

namespace spni {

AnnealResult qubo_anneal(const Qubo& q, const AnnealParams& params, SplitMix64& rng) {
    if (params.sweeps < 1 || params.restarts < 1)
        throw InputError("qubo_anneal: sweeps and restarts must be >= 1");

    AnnealResult result;
    if (q.var_count == 0) {
        result.best_value = q.constant;
        bool feasible = true;
        for (const PenaltyTerm& p : q.penalties)
            if (p.constant != 0) feasible = false;
        if (feasible) {
            result.best_feasible = result.best;
            result.best_feasible_value = q.constant;
        }
        return result;
    }

    double t_start = params.t_start;
    if (t_start <= 0) {
        // Largest possible single-flip move, so early sweeps can cross any
        // penalty barrier.
        Length scale = 1;
        for (const auto& [i, c] : q.linear) scale = std::max(scale, std::abs(c));
        for (const auto& [ij, c] : q.quadratic) scale = std::max(scale, std::abs(c));
        t_start = static_cast<double>(scale);
    }
    const double t_end = std::max(params.t_end, 1e-9);
    const double decay =
        params.sweeps > 1 ? std::pow(t_end / t_start, 1.0 / (params.sweeps - 1)) : 1.0;

    QuboFlipEval eval(q);
    bool have_best = false;
    auto consider = [&](const QuboFlipEval& e) {
        if (!have_best || e.value() > result.best_value) {
            have_best = true;
            result.best = e.bits();
            result.best_value = e.value();
        }
        if (e.feasible() &&
            (!result.best_feasible || e.value() > result.best_feasible_value)) {
            result.best_feasible = e.bits();
            result.best_feasible_value = e.value();
        }
    };

    for (int restart = 0; restart < params.restarts; ++restart) {
        std::vector<std::uint8_t> init(q.var_count);
        for (auto& b : init) b = static_cast<std::uint8_t>(rng.next() & 1);
        eval.reset(init);
        consider(eval);
        double temp = t_start;
        for (int sweep = 0; sweep < params.sweeps; ++sweep) {
            for (int v = 0; v < q.var_count; ++v) {
                const Length delta = eval.flip_delta(v);
                if (delta >= 0 ||
                    rng.next_unit() < std::exp(static_cast<double>(delta) / temp)) {
                    eval.flip(v);
                    consider(eval);
                }
            }
            temp *= decay;
        }
    }
    return result;
}

} // namespace spni
