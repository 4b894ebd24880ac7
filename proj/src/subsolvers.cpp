#include "spni/subsolvers.hpp"

#include <algorithm>
#include <bit>
#include <iostream>
#include <limits>
#include <queue>

namespace spni {

namespace {

// Scope positions of the arcs on one shortest route to the local sink under
// no local interdiction. Branching these first closes the gap quickly: only
// arcs on a shortest route can raise the sink label.
std::vector<int> route_scope_positions(const SubproblemSpec& spec, const LocalDistanceEval& eval) {
    constexpr Length kInf = std::numeric_limits<Length>::max();
    const auto& arcs = spec.inst->network.arcs;
    const int m = static_cast<int>(spec.nodes.size());
    auto local_id = [&spec](NodeId v) {
        return static_cast<int>(std::lower_bound(spec.nodes.begin(), spec.nodes.end(), v) -
                                spec.nodes.begin());
    };
    std::vector<Length> dist(m, kInf);
    std::vector<int> pred_pos(m, -1); // scope position of the arc that set dist
    using Item = std::pair<Length, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    auto offer = [&](int v, Length value, int via) {
        if (value < dist[v]) {
            dist[v] = value;
            pred_pos[v] = via;
            heap.emplace(value, v);
        }
    };
    for (ArcId k : spec.entering) {
        const Arc& a = arcs[k];
        offer(local_id(a.head), spec.gamma[a.tail] + a.c, eval.scope_index(k));
    }
    if (spec.in_block(spec.inst->source)) offer(local_id(spec.inst->source), 0, -1);
    std::vector<std::vector<ArcId>> out(m);
    for (ArcId k : spec.internal) out[local_id(arcs[k].tail)].push_back(k);
    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du != dist[u]) continue;
        for (ArcId k : out[u]) offer(local_id(arcs[k].head), du + arcs[k].c, eval.scope_index(k));
    }

    std::vector<int> route;
    int cur = local_id(spec.local_sink);
    std::vector<char> seen(m, 0);
    while (dist[cur] != kInf && pred_pos[cur] >= 0 && !seen[cur]) {
        seen[cur] = 1;
        const int pos = pred_pos[cur];
        route.push_back(pos);
        const Arc& a = arcs[eval.scope()[pos]];
        if (!spec.in_block(a.tail)) break; // entered from a frozen node
        cur = local_id(a.tail);
    }
    std::sort(route.begin(), route.end());
    return route;
}

class BbSearch {
public:
    BbSearch(const SubproblemSpec& spec,
             std::optional<std::chrono::steady_clock::time_point> deadline)
        : spec_(spec), eval_(spec), deadline_(deadline) {
        const int scope_size = static_cast<int>(eval_.scope().size());
        budget_ = std::min(spec.local_budget, scope_size);

        // Candidate order: shortest-route arcs first, then the rest, both
        // ascending by arc id.
        const auto route = route_scope_positions(spec, eval_);
        std::vector<char> on_route(scope_size, 0);
        for (int pos : route) on_route[pos] = 1;
        for (int pos = 0; pos < scope_size; ++pos)
            if (on_route[pos]) order_.push_back(pos);
        for (int pos = 0; pos < scope_size; ++pos)
            if (!on_route[pos]) order_.push_back(pos);

        bound_mask_.assign(scope_size, 1);
        leaf_mask_.assign(scope_size, 0);
    }

    BbResult run() {
        incumbent_value_ = eval_.eval(leaf_mask_); // empty interdiction
        incumbent_.clear();
        if (deadline_ && std::chrono::steady_clock::now() > *deadline_) {
            // Out of time before the search starts: report the baseline
            // incumbent, honestly flagged.
            return {InterdictionSet(incumbent_), incumbent_value_, false};
        }
        const Length root_bound = eval_.eval(bound_mask_);
        if (root_bound == incumbent_value_ || budget_ == 0) {
            // Flat landscape (or nothing to spend): the empty set already
            // attains the bound and is the lexicographic minimum.
            return {InterdictionSet(incumbent_), incumbent_value_, true};
        }
        complete_ = true;
        dive(0, 0, root_bound);
        return {InterdictionSet(incumbent_), incumbent_value_, complete_};
    }

private:
    void consider_leaf() {
        const Length value = eval_.eval(leaf_mask_);
        if (value > incumbent_value_) {
            incumbent_value_ = value;
            incumbent_ = chosen_arcs();
        } else if (value == incumbent_value_) {
            auto ids = chosen_arcs();
            if (ids < incumbent_) incumbent_ = std::move(ids);
        }
    }

    std::vector<ArcId> chosen_arcs() const {
        std::vector<ArcId> ids;
        ids.reserve(chosen_.size());
        for (int pos : chosen_) ids.push_back(eval_.scope()[pos]);
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    // Lexicographically smallest arc set reachable in the subtree at
    // `depth`: the chosen arcs plus as many small undecided ids as the
    // budget allows, as long as each stays below the current maximum
    // (inserting an id above the maximum can only grow the sequence).
    // Used to prune equal-bound subtrees that cannot improve the tie-break.
    std::vector<ArcId> lex_min_completion(std::size_t depth, int used) const {
        std::vector<ArcId> ids = chosen_arcs();
        int slots = budget_ - used;
        if (ids.empty() || slots <= 0) return ids;
        std::vector<ArcId> undecided;
        for (std::size_t d = depth; d < order_.size(); ++d)
            undecided.push_back(eval_.scope()[order_[d]]);
        std::sort(undecided.begin(), undecided.end());
        for (ArcId u : undecided) {
            if (slots == 0 || u > ids.back()) break;
            ids.insert(std::lower_bound(ids.begin(), ids.end(), u), u);
            --slots;
        }
        return ids;
    }

    bool expired() {
        if (!deadline_) return false;
        if (++tick_ % 64 != 0) return false;
        if (std::chrono::steady_clock::now() > *deadline_) {
            complete_ = false;
            return true;
        }
        return false;
    }

    // depth indexes order_; parent_bound is eval(bound_mask_) at entry.
    void dive(std::size_t depth, int used, Length parent_bound) {
        if (!complete_ || expired()) return;
        if (parent_bound < incumbent_value_) return;
        if (parent_bound == incumbent_value_ &&
            !(lex_min_completion(depth, used) < incumbent_)) {
            // The subtree can at best tie the incumbent value, and no set in
            // it precedes the incumbent lexicographically.
            return;
        }
        if (used == budget_ || depth == order_.size()) {
            consider_leaf();
            return;
        }
        const int pos = order_[depth];

        // Include: bound_mask_ already counts pos as interdicted, so the
        // parent bound carries over.
        if (used + 1 <= budget_) {
            leaf_mask_[pos] = 1;
            chosen_.push_back(pos);
            dive(depth + 1, used + 1, parent_bound);
            chosen_.pop_back();
            leaf_mask_[pos] = 0;
        }

        // Exclude: the bound must be recomputed with pos released.
        bound_mask_[pos] = 0;
        if (complete_) {
            const Length bound = eval_.eval(bound_mask_);
            if (bound >= incumbent_value_) dive(depth + 1, used, bound);
        }
        bound_mask_[pos] = 1;
    }

    const SubproblemSpec& spec_;
    LocalDistanceEval eval_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    int budget_ = 0;
    std::vector<int> order_;
    std::vector<char> bound_mask_; // chosen + undecided
    std::vector<char> leaf_mask_;  // chosen only
    std::vector<int> chosen_;      // positions, in branch order
    std::vector<ArcId> incumbent_;
    Length incumbent_value_ = 0;
    bool complete_ = true;
    unsigned tick_ = 0;
};

} // namespace

BbResult bb_exact(const SubproblemSpec& spec,
                  std::optional<std::chrono::steady_clock::time_point> deadline) {
    return BbSearch(spec, deadline).run();
}

std::pair<std::vector<std::uint8_t>, Length> qubo_argmax(const Qubo& q, int max_bits) {
    if (max_bits > 30) throw InputError("qubo_argmax: max_bits capped at 30");
    if (q.var_count > max_bits)
        throw CapacityError("qubo_argmax: " + std::to_string(q.var_count) + " variables exceed " +
                            std::to_string(max_bits) + " bits");
    QuboFlipEval eval(q);
    std::vector<std::uint8_t> best = eval.bits();
    Length best_value = eval.value();
    const std::uint64_t total = 1ULL << q.var_count;
    for (std::uint64_t step = 1; step < total; ++step) {
        // Gray code: one flip per step.
        const int var = std::countr_zero(step);
        eval.flip(var);
        if (eval.value() > best_value) {
            best_value = eval.value();
            best = eval.bits();
        }
    }
    return {best, best_value};
}

namespace {

InterdictionSet splice(const SubproblemSpec& spec, const InterdictionSet& chosen) {
    InterdictionSet result = spec.base;
    for (ArcId k : spec.scope_arcs()) result.erase(k);
    for (ArcId k : chosen.ids()) result.insert(k);
    if (result.size() > spec.inst->budget)
        throw Error("solve_sub: budget invariant violated (internal)");
    return result;
}

InterdictionSet base_inside_scope(const SubproblemSpec& spec) {
    InterdictionSet keep;
    for (ArcId k : spec.base.ids())
        if (spec.in_scope(k)) keep.insert(k);
    return keep;
}

} // namespace

InterdictionSet solve_sub(const SubproblemSpec& spec, const SubSolverKind& kind, SplitMix64& rng) {
    switch (kind.backend) {
    case SubSolverKind::Backend::BbExact:
        return splice(spec, bb_exact(spec).local_x);

    case SubSolverKind::Backend::QuboExhaustive: {
        if (kind.max_bits > 30)
            throw InputError("solve_sub: max_bits invariant is <= 30");
        const Qubo q = build_sub_qubo(spec, default_penalty(*spec.inst));
        if (q.var_count > kind.max_bits) {
            if (!kind.fallback_to_bb)
                throw CapacityError("solve_sub: sub-QUBO needs " + std::to_string(q.var_count) +
                                    " bits, limit " + std::to_string(kind.max_bits));
            std::cerr << "spni: sub-QUBO of " << q.var_count << " bits exceeds "
                      << kind.max_bits << ", falling back to exact search\n";
            return splice(spec, bb_exact(spec).local_x);
        }
        const auto [bits, value] = qubo_argmax(q, kind.max_bits);
        const DecodedAssignment dec = decode(q, bits);
        // With the default penalty the argmax is always feasible; keep the
        // base solution if a caller-supplied penalty was too weak.
        if (!dec.feasible()) return splice(spec, base_inside_scope(spec));
        return splice(spec, dec.x);
    }

    case SubSolverKind::Backend::QuboAnneal: {
        const Qubo q = build_sub_qubo(spec, default_penalty(*spec.inst));
        const AnnealResult res = qubo_anneal(q, kind.anneal, rng);
        if (!res.best_feasible) return splice(spec, base_inside_scope(spec));
        return splice(spec, decode(q, *res.best_feasible).x);
    }
    }
    throw Error("solve_sub: unknown backend");
}

InterdictionSet solve_sub(const SubproblemSpec& spec, const SubSolverKind& kind, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return solve_sub(spec, kind, rng);
}

} // namespace spni
