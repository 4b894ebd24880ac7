#ifndef SPNI_QUBO_HPP
#define SPNI_QUBO_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spni/graph.hpp"
#include "spni/subproblem.hpp"

namespace spni {

// Binary expansion of an integer in [0, ub]: coefficients 1, 2, 4, ...,
// 2^(rho-1), mu with rho = floor(log2(ub+1)) and mu = ub - (2^rho - 1)
// (mu omitted when zero). Sum over any bit assignment covers exactly
// {0, ..., ub}, possibly with repeats.
struct IntegerEncoding {
    Length upper_bound = 0;
    std::vector<Length> coefficients;
};

IntegerEncoding encode_bounded(Length ub);

enum class VarKind {
    X,     // arc interdiction indicator
    Pi,    // shortest-path label bit (subject = node)
    M,     // arc constraint slack bit (subject = arc)
    Slack, // budget slack bit
};

struct VarRole {
    VarKind kind = VarKind::X;
    int subject = -1; // arc id for X/M, node id for Pi, -1 for Slack
    int bit = 0;
    Length weight = 1; // encoding coefficient (1 for X)
};

// One penalty term of the objective: the unsquared residual is
// constant + sum(coeff * bit); the objective subtracts
// penalty_weight * residual^2. Feasibility = every residual zero.
struct PenaltyTerm {
    ArcId arc = -1; // -1 marks the budget term
    Length constant = 0;
    std::vector<std::pair<int, Length>> terms;

    Length residual(const std::vector<std::uint8_t>& bits) const {
        Length r = constant;
        for (const auto& [v, coeff] : terms) r += bits[v] ? coeff : 0;
        return r;
    }
};

// Sparse maximization QUBO over binary variables, integer coefficients
// throughout. `registry` maps every variable back to its role; `penalties`
// keep the unexpanded residual forms so assignments can be diagnosed.
struct Qubo {
    int var_count = 0;
    std::map<int, Length> linear;
    std::map<std::pair<int, int>, Length> quadratic; // keys i < j, no zeros
    Length constant = 0;
    std::vector<VarRole> registry;
    std::vector<PenaltyTerm> penalties; // scope arcs ascending, budget last
    Length penalty_weight = 0;
    NodeId folded_source = -1; // pi fixed to 0, carries no bits

    Length evaluate(const std::vector<std::uint8_t>& bits) const;
};

// P = pi_upper_bound + 1: one unit of squared violation always outweighs the
// largest possible objective gain.
Length default_penalty(const ProblemInstance& inst);

// Whole-problem QUBO: maximize pi_sink minus P times the squared residuals
// of every arc constraint and of the budget constraint. pi_source is folded
// to the constant 0. Bounds: pi in [0, pi_upper_bound],
// m_k in [0, pi_upper_bound + c_k + d_k], budget slack in [0, budget].
Qubo build_full_qubo(const ProblemInstance& inst, Length penalty);

// Block-local QUBO: free pi only on block nodes, entering arcs use the
// frozen gamma label of their outside tail, budget constraint on the local
// budget. With the block = all nodes this coincides with build_full_qubo.
Qubo build_sub_qubo(const SubproblemSpec& spec, Length penalty);

struct DecodedAssignment {
    InterdictionSet x;
    std::map<NodeId, Length> pi; // includes the folded source at 0
    std::vector<Length> residuals; // aligned with Qubo::penalties

    bool feasible() const {
        for (Length r : residuals)
            if (r != 0) return false;
        return true;
    }
};

DecodedAssignment decode(const Qubo& q, const std::vector<std::uint8_t>& bits);

enum class ExportSense { Max, Min };

// Text export, one term per line "i j coeff" (i <= j, i == j for linear
// terms), decimal integers, space separated. Header comments ('#') carry
// the sense, variable count, constant offset and the registry. Min sense
// negates every coefficient and the offset.
std::string qubo_to_text(const Qubo& q, ExportSense sense);
void export_qubo(const Qubo& q, const std::string& path, ExportSense sense);

// Inverse of the export, normalized back to maximization. Penalty forms are
// not part of the format, so decode() on a re-imported QUBO reports no
// residuals; evaluation is preserved exactly.
Qubo qubo_from_text(const std::string& text);
Qubo read_qubo(const std::string& path);

// Incremental single-flip evaluation: value and per-penalty residuals are
// maintained under flips, which is what the annealer and the exhaustive
// enumerator loop over.
class QuboFlipEval {
public:
    explicit QuboFlipEval(const Qubo& q);

    void reset(const std::vector<std::uint8_t>& bits);
    Length value() const { return value_; }
    Length flip_delta(int var) const;
    void flip(int var);
    bool feasible() const { return nonzero_residuals_ == 0; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }
    const Qubo& qubo() const { return *q_; }

private:
    const Qubo* q_;
    std::vector<std::uint8_t> bits_;
    Length value_ = 0;
    std::vector<std::vector<std::pair<int, Length>>> adj_; // quadratic terms by var
    std::vector<Length> linear_; // dense linear coefficients
    std::vector<std::vector<std::pair<int, Length>>> var_penalties_; // (penalty idx, coeff)
    std::vector<Length> residuals_;
    int nonzero_residuals_ = 0;
};

} // namespace spni

#endif
