#include "spni/subproblem.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace spni {

namespace {
constexpr Length kInf = std::numeric_limits<Length>::max();
}

std::vector<ArcId> SubproblemSpec::scope_arcs() const {
    std::vector<ArcId> all;
    all.reserve(internal.size() + entering.size());
    all.insert(all.end(), internal.begin(), internal.end());
    all.insert(all.end(), entering.begin(), entering.end());
    std::sort(all.begin(), all.end());
    return all;
}

bool SubproblemSpec::in_scope(ArcId k) const {
    return std::binary_search(internal.begin(), internal.end(), k) ||
           std::binary_search(entering.begin(), entering.end(), k);
}

SubproblemSpec make_spec(const ProblemInstance& inst, const std::vector<NodeId>& block,
                         NodeId local_sink, const InterdictionSet& base) {
    SubproblemSpec spec;
    spec.inst = &inst;
    spec.nodes = block;
    std::sort(spec.nodes.begin(), spec.nodes.end());
    spec.nodes.erase(std::unique(spec.nodes.begin(), spec.nodes.end()), spec.nodes.end());
    for (NodeId v : spec.nodes)
        if (v < 0 || v >= inst.network.node_count)
            throw InputError("make_spec: block node id out of range");
    spec.local_sink = local_sink;
    if (!spec.in_block(local_sink))
        throw InputError("make_spec: local sink must lie inside the block");
    spec.base = base;
    spec.gamma = all_labels(inst, base);
    spec.label_bound = pi_upper_bound(inst);

    int spent_outside = 0;
    const auto& arcs = inst.network.arcs;
    for (ArcId k = 0; k < static_cast<int>(arcs.size()); ++k) {
        if (!spec.in_block(arcs[k].head)) {
            if (base.contains(k)) ++spent_outside;
            continue;
        }
        (spec.in_block(arcs[k].tail) ? spec.internal : spec.entering).push_back(k);
    }
    spec.local_budget = inst.budget - spent_outside;
    if (spec.local_budget < 0)
        throw InputError("make_spec: base solution exceeds the instance budget");
    return spec;
}

LocalDistanceEval::LocalDistanceEval(const SubproblemSpec& spec)
    : spec_(&spec), scope_(spec.scope_arcs()) {
    const auto& arcs = spec.inst->network.arcs;
    const int m = static_cast<int>(spec.nodes.size());
    auto local_id = [&spec](NodeId v) {
        return static_cast<int>(std::lower_bound(spec.nodes.begin(), spec.nodes.end(), v) -
                                spec.nodes.begin());
    };
    out_.resize(m);
    for (ArcId k : spec.entering) {
        const Arc& a = arcs[k];
        enter_.push_back({local_id(a.head), scope_index(k), spec.gamma[a.tail] + a.c, a.d});
    }
    for (ArcId k : spec.internal) {
        const Arc& a = arcs[k];
        out_[local_id(a.tail)].push_back({local_id(a.head), scope_index(k), a.c, a.d});
    }
    if (spec.in_block(spec.inst->source)) source_local_ = local_id(spec.inst->source);
    sink_local_ = local_id(spec.local_sink);
    dist_.resize(m);
}

int LocalDistanceEval::scope_index(ArcId k) const {
    const auto it = std::lower_bound(scope_.begin(), scope_.end(), k);
    if (it == scope_.end() || *it != k) return -1;
    return static_cast<int>(it - scope_.begin());
}

Length LocalDistanceEval::eval(const std::vector<char>& interdict_mask) {
    std::fill(dist_.begin(), dist_.end(), kInf);
    using Item = std::pair<Length, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    auto offer = [&](int v, Length value) {
        if (value < dist_[v]) {
            dist_[v] = value;
            heap.emplace(value, v);
        }
    };
    // Entering arcs seed the block with frozen outside labels; the source,
    // when inside, is pinned to 0.
    for (const EnterArc& e : enter_)
        offer(e.head, e.base + (interdict_mask[e.scope_pos] ? e.d : 0));
    if (source_local_ >= 0) offer(source_local_, 0);

    while (!heap.empty()) {
        const auto [du, u] = heap.top();
        heap.pop();
        if (du != dist_[u]) continue;
        for (const InternalArc& a : out_[u])
            offer(a.head, du + a.c + (interdict_mask[a.scope_pos] ? a.d : 0));
    }
    const Length v = dist_[sink_local_];
    return std::min(v == kInf ? spec_->label_bound : v, spec_->label_bound);
}

Length local_distance(const SubproblemSpec& spec, const InterdictionSet& local_x) {
    for (ArcId k : local_x.ids())
        if (!spec.in_scope(k))
            throw InputError("local_distance: arc " + std::to_string(k) + " outside block scope");
    if (local_x.size() > spec.local_budget)
        throw InputError("local_distance: interdiction exceeds the local budget");

    LocalDistanceEval eval(spec);
    std::vector<char> mask(eval.scope().size(), 0);
    for (ArcId k : local_x.ids()) mask[eval.scope_index(k)] = 1;
    return eval.eval(mask);
}

} // namespace spni
