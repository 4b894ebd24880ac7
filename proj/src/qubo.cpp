#include "spni/qubo.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace spni {

IntegerEncoding encode_bounded(Length ub) {
    if (ub < 0) throw InputError("encode_bounded: upper bound must be nonnegative");
    IntegerEncoding enc;
    enc.upper_bound = ub;
    if (ub == 0) return enc;
    Length pow = 1;
    while (pow * 2 <= ub + 1) {
        enc.coefficients.push_back(pow);
        pow *= 2;
    }
    const Length mu = ub - (pow - 1);
    if (mu > 0) enc.coefficients.push_back(mu);
    return enc;
}

Length default_penalty(const ProblemInstance& inst) {
    return pi_upper_bound(inst) + 1;
}

namespace {

// Shared builder: expand "maximize pi[objective] - P * sum(residual^2)"
// into the sparse quadratic form.
class QuboBuilder {
public:
    QuboBuilder(Length penalty) { q_.penalty_weight = penalty; }

    int add_var(VarRole role) {
        q_.registry.push_back(role);
        return q_.var_count++;
    }

    std::vector<int> add_encoded(VarKind kind, int subject, Length ub) {
        const IntegerEncoding enc = encode_bounded(ub);
        std::vector<int> vars;
        for (int b = 0; b < static_cast<int>(enc.coefficients.size()); ++b)
            vars.push_back(add_var({kind, subject, b, enc.coefficients[b]}));
        return vars;
    }

    void add_objective_term(int var, Length coeff) { q_.linear[var] += coeff; }

    // residual = constant + sum(coeff * bit); contributes -P * residual^2.
    void add_penalty(ArcId arc, Length constant, const std::map<int, Length>& terms) {
        PenaltyTerm form;
        form.arc = arc;
        form.constant = constant;
        for (const auto& [v, c] : terms)
            if (c != 0) form.terms.emplace_back(v, c);

        const Length p = q_.penalty_weight;
        q_.constant -= p * constant * constant;
        for (std::size_t a = 0; a < form.terms.size(); ++a) {
            const auto [va, ca] = form.terms[a];
            q_.linear[va] -= p * (2 * constant * ca + ca * ca);
            for (std::size_t b = a + 1; b < form.terms.size(); ++b) {
                const auto [vb, cb] = form.terms[b];
                const auto key = va < vb ? std::make_pair(va, vb) : std::make_pair(vb, va);
                q_.quadratic[key] -= p * 2 * ca * cb;
            }
        }
        q_.penalties.push_back(std::move(form));
    }

    Qubo take() {
        std::erase_if(q_.linear, [](const auto& kv) { return kv.second == 0; });
        std::erase_if(q_.quadratic, [](const auto& kv) { return kv.second == 0; });
        return std::move(q_);
    }

private:
    Qubo q_;
};

struct PiVars {
    // Per node: list of (var, weight); empty for the folded source and for
    // frozen outside nodes.
    std::vector<std::vector<std::pair<int, Length>>> bits;
};

} // namespace

Qubo build_full_qubo(const ProblemInstance& inst, Length penalty) {
    if (penalty < 1) throw InputError("build_full_qubo: penalty must be >= 1");
    QuboBuilder builder(penalty);
    const Network& net = inst.network;
    const Length ub_pi = pi_upper_bound(inst);

    std::vector<int> x_var(net.arcs.size());
    for (ArcId k = 0; k < static_cast<int>(net.arcs.size()); ++k)
        x_var[k] = builder.add_var({VarKind::X, k, 0, 1});

    const auto pi_enc = encode_bounded(ub_pi);
    PiVars pi;
    pi.bits.resize(net.node_count);
    for (NodeId i = 0; i < net.node_count; ++i) {
        if (i == inst.source) continue;
        const auto vars = builder.add_encoded(VarKind::Pi, i, ub_pi);
        for (std::size_t b = 0; b < vars.size(); ++b)
            pi.bits[i].emplace_back(vars[b], pi_enc.coefficients[b]);
    }

    std::vector<std::vector<std::pair<int, Length>>> m_bits(net.arcs.size());
    for (ArcId k = 0; k < static_cast<int>(net.arcs.size()); ++k) {
        const Arc& a = net.arcs[k];
        const Length ub_m = ub_pi + a.c + a.d;
        const auto enc = encode_bounded(ub_m);
        const auto vars = builder.add_encoded(VarKind::M, k, ub_m);
        for (std::size_t b = 0; b < vars.size(); ++b)
            m_bits[k].emplace_back(vars[b], enc.coefficients[b]);
    }

    const auto slack_enc = encode_bounded(inst.budget);
    std::vector<std::pair<int, Length>> n_bits;
    {
        const auto vars = builder.add_encoded(VarKind::Slack, -1, inst.budget);
        for (std::size_t b = 0; b < vars.size(); ++b)
            n_bits.emplace_back(vars[b], slack_enc.coefficients[b]);
    }

    // Objective: pi at the sink.
    for (const auto& [v, w] : pi.bits[inst.sink]) builder.add_objective_term(v, w);

    // Arc residuals: c_k - (m_k + pi_j - pi_i - d_k x_k).
    for (ArcId k = 0; k < static_cast<int>(net.arcs.size()); ++k) {
        const Arc& a = net.arcs[k];
        std::map<int, Length> terms;
        for (const auto& [v, w] : m_bits[k]) terms[v] -= w;
        for (const auto& [v, w] : pi.bits[a.head]) terms[v] -= w;
        for (const auto& [v, w] : pi.bits[a.tail]) terms[v] += w;
        terms[x_var[k]] += a.d;
        builder.add_penalty(k, a.c, terms);
    }

    // Budget residual: r0 - (n + sum x).
    {
        std::map<int, Length> terms;
        for (const auto& [v, w] : n_bits) terms[v] -= w;
        for (ArcId k = 0; k < static_cast<int>(net.arcs.size()); ++k) terms[x_var[k]] -= 1;
        builder.add_penalty(-1, inst.budget, terms);
    }

    Qubo q = builder.take();
    q.folded_source = inst.source;
    return q;
}

Qubo build_sub_qubo(const SubproblemSpec& spec, Length penalty) {
    if (penalty < 1) throw InputError("build_sub_qubo: penalty must be >= 1");
    const ProblemInstance& inst = *spec.inst;
    QuboBuilder builder(penalty);
    const Length ub_pi = spec.label_bound;
    const auto scope = spec.scope_arcs();

    std::map<ArcId, int> x_var;
    for (ArcId k : scope) x_var[k] = builder.add_var({VarKind::X, k, 0, 1});

    const auto pi_enc = encode_bounded(ub_pi);
    std::map<NodeId, std::vector<std::pair<int, Length>>> pi_bits;
    for (NodeId i : spec.nodes) {
        if (i == inst.source) continue;
        const auto vars = builder.add_encoded(VarKind::Pi, i, ub_pi);
        auto& dest = pi_bits[i];
        for (std::size_t b = 0; b < vars.size(); ++b)
            dest.emplace_back(vars[b], pi_enc.coefficients[b]);
    }

    std::map<ArcId, std::vector<std::pair<int, Length>>> m_bits;
    for (ArcId k : scope) {
        const Arc& a = inst.network.arcs[k];
        const Length ub_m = ub_pi + a.c + a.d;
        const auto enc = encode_bounded(ub_m);
        const auto vars = builder.add_encoded(VarKind::M, k, ub_m);
        auto& dest = m_bits[k];
        for (std::size_t b = 0; b < vars.size(); ++b)
            dest.emplace_back(vars[b], enc.coefficients[b]);
    }

    const auto slack_enc = encode_bounded(spec.local_budget);
    std::vector<std::pair<int, Length>> n_bits;
    {
        const auto vars = builder.add_encoded(VarKind::Slack, -1, spec.local_budget);
        for (std::size_t b = 0; b < vars.size(); ++b)
            n_bits.emplace_back(vars[b], slack_enc.coefficients[b]);
    }

    // Objective: pi at the local sink (constant 0 when it is the source).
    if (spec.local_sink != inst.source)
        for (const auto& [v, w] : pi_bits[spec.local_sink]) builder.add_objective_term(v, w);

    for (ArcId k : scope) {
        const Arc& a = inst.network.arcs[k];
        std::map<int, Length> terms;
        Length constant = a.c;
        for (const auto& [v, w] : m_bits[k]) terms[v] -= w;
        if (a.head != inst.source)
            for (const auto& [v, w] : pi_bits[a.head]) terms[v] -= w;
        if (spec.in_block(a.tail)) {
            if (a.tail != inst.source)
                for (const auto& [v, w] : pi_bits[a.tail]) terms[v] += w;
        } else {
            constant += spec.gamma[a.tail]; // frozen outside label
        }
        terms[x_var[k]] += a.d;
        builder.add_penalty(k, constant, terms);
    }

    {
        std::map<int, Length> terms;
        for (const auto& [v, w] : n_bits) terms[v] -= w;
        for (ArcId k : scope) terms[x_var[k]] -= 1;
        builder.add_penalty(-1, spec.local_budget, terms);
    }

    Qubo q = builder.take();
    if (spec.in_block(inst.source)) q.folded_source = inst.source;
    return q;
}

Length Qubo::evaluate(const std::vector<std::uint8_t>& bits) const {
    if (static_cast<int>(bits.size()) != var_count)
        throw InputError("Qubo::evaluate: assignment size mismatch");
    Length v = constant;
    for (const auto& [i, c] : linear)
        if (bits[i]) v += c;
    for (const auto& [ij, c] : quadratic)
        if (bits[ij.first] && bits[ij.second]) v += c;
    return v;
}

DecodedAssignment decode(const Qubo& q, const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != q.var_count)
        throw InputError("decode: assignment size mismatch");
    DecodedAssignment dec;
    for (int v = 0; v < q.var_count; ++v) {
        const VarRole& role = q.registry[v];
        switch (role.kind) {
        case VarKind::X:
            if (bits[v]) dec.x.insert(role.subject);
            break;
        case VarKind::Pi:
            dec.pi[role.subject] += bits[v] ? role.weight : 0;
            break;
        default:
            break;
        }
    }
    if (q.folded_source >= 0) dec.pi[q.folded_source] = 0;
    for (const PenaltyTerm& p : q.penalties) dec.residuals.push_back(p.residual(bits));
    return dec;
}

namespace {

const char* kind_name(VarKind k) {
    switch (k) {
    case VarKind::X: return "x";
    case VarKind::Pi: return "pi";
    case VarKind::M: return "m";
    case VarKind::Slack: return "n";
    }
    return "?";
}

VarKind kind_from_name(const std::string& s) {
    if (s == "x") return VarKind::X;
    if (s == "pi") return VarKind::Pi;
    if (s == "m") return VarKind::M;
    if (s == "n") return VarKind::Slack;
    throw ParseError("qubo: unknown variable kind \"" + s + "\"");
}

} // namespace

std::string qubo_to_text(const Qubo& q, ExportSense sense) {
    const Length sign = sense == ExportSense::Max ? 1 : -1;
    std::ostringstream out;
    out << "# spni qubo v1\n";
    out << "# sense " << (sense == ExportSense::Max ? "max" : "min") << "\n";
    out << "# vars " << q.var_count << "\n";
    out << "# constant " << sign * q.constant << "\n";
    for (int v = 0; v < q.var_count; ++v) {
        const VarRole& r = q.registry[v];
        out << "# var " << v << ' ' << kind_name(r.kind) << ' ' << r.subject << ' ' << r.bit
            << ' ' << r.weight << "\n";
    }
    // Terms merged and sorted by (i, j).
    std::map<std::pair<int, int>, Length> terms;
    for (const auto& [i, c] : q.linear) terms[{i, i}] = c;
    for (const auto& [ij, c] : q.quadratic) terms[ij] = c;
    for (const auto& [ij, c] : terms)
        out << ij.first << ' ' << ij.second << ' ' << sign * c << "\n";
    return out.str();
}

void export_qubo(const Qubo& q, const std::string& path, ExportSense sense) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << qubo_to_text(q, sense);
    if (!out) throw IoError("write failed: " + path);
}

Qubo qubo_from_text(const std::string& text) {
    Qubo q;
    Length sign = 1;
    bool have_vars = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == '#') {
            std::string hash, directive;
            ls >> hash >> directive;
            if (directive == "sense") {
                std::string s;
                ls >> s;
                if (s == "min")
                    sign = -1;
                else if (s != "max")
                    throw ParseError("qubo line " + std::to_string(lineno) + ": bad sense");
            } else if (directive == "vars") {
                ls >> q.var_count;
                have_vars = true;
                q.registry.resize(q.var_count);
            } else if (directive == "constant") {
                Length c = 0;
                ls >> c;
                q.constant = c; // sign applied after the sense line is known
            } else if (directive == "var") {
                int v, subject, bit;
                std::string kind;
                Length weight;
                if (!(ls >> v >> kind >> subject >> bit >> weight))
                    throw ParseError("qubo line " + std::to_string(lineno) + ": bad var entry");
                if (v < 0 || v >= q.var_count)
                    throw ParseError("qubo line " + std::to_string(lineno) + ": var index out of range");
                q.registry[v] = {kind_from_name(kind), subject, bit, weight};
            }
            continue;
        }
        int i, j;
        Length c;
        if (!(std::istringstream(line) >> i >> j >> c))
            throw ParseError("qubo line " + std::to_string(lineno) + ": expected \"i j coeff\"");
        if (!have_vars || i < 0 || j < i || j >= q.var_count)
            throw ParseError("qubo line " + std::to_string(lineno) + ": bad indices");
        if (i == j)
            q.linear[i] += c;
        else
            q.quadratic[{i, j}] += c;
    }
    if (!have_vars) throw ParseError("qubo: missing \"# vars\" header");
    // Normalize back to maximization.
    if (sign < 0) {
        q.constant = -q.constant;
        for (auto& [i, c] : q.linear) c = -c;
        for (auto& [ij, c] : q.quadratic) c = -c;
    }
    std::erase_if(q.linear, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(q.quadratic, [](const auto& kv) { return kv.second == 0; });
    return q;
}

Qubo read_qubo(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return qubo_from_text(buf.str());
}

QuboFlipEval::QuboFlipEval(const Qubo& q) : q_(&q) {
    adj_.resize(q.var_count);
    linear_.assign(q.var_count, 0);
    for (const auto& [i, c] : q.linear) linear_[i] = c;
    for (const auto& [ij, c] : q.quadratic) {
        adj_[ij.first].emplace_back(ij.second, c);
        adj_[ij.second].emplace_back(ij.first, c);
    }
    var_penalties_.resize(q.var_count);
    for (std::size_t p = 0; p < q.penalties.size(); ++p)
        for (const auto& [v, coeff] : q.penalties[p].terms)
            var_penalties_[v].emplace_back(static_cast<int>(p), coeff);
    reset(std::vector<std::uint8_t>(q.var_count, 0));
}

void QuboFlipEval::reset(const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != q_->var_count)
        throw InputError("QuboFlipEval::reset: assignment size mismatch");
    bits_ = bits;
    value_ = q_->evaluate(bits_);
    residuals_.clear();
    nonzero_residuals_ = 0;
    for (const PenaltyTerm& p : q_->penalties) {
        residuals_.push_back(p.residual(bits_));
        if (residuals_.back() != 0) ++nonzero_residuals_;
    }
}

Length QuboFlipEval::flip_delta(int var) const {
    Length d = linear_[var];
    for (const auto& [other, c] : adj_[var])
        if (bits_[other]) d += c;
    return bits_[var] ? -d : d;
}

void QuboFlipEval::flip(int var) {
    value_ += flip_delta(var);
    const Length dir = bits_[var] ? -1 : 1;
    bits_[var] ^= 1;
    for (const auto& [p, coeff] : var_penalties_[var]) {
        const Length before = residuals_[p];
        residuals_[p] += dir * coeff;
        if (before == 0 && residuals_[p] != 0) ++nonzero_residuals_;
        if (before != 0 && residuals_[p] == 0) --nonzero_residuals_;
    }
}

} // namespace spni
