#ifndef SPNI_INSTANCE_HPP
#define SPNI_INSTANCE_HPP

#include <string>
#include <vector>

#include "spni/graph.hpp"

namespace spni {

// Random grid instance. Grid nodes are row-major (node = row * cols + col),
// followed by source (rows*cols) and sink (rows*cols + 1). Arc order:
// source->first column (top to bottom), last column->sink (top to bottom),
// horizontal arcs row-major (left to right), vertical arcs row-major (top
// down). Arcs touching source or sink have c = d = 0; interior arcs draw
// c, d uniformly from [1, 10], two SplitMix64 draws per arc in arc order,
// so a (rows, cols, seed) triple names one instance on every platform.
// The budget is left at 0; set it separately.
ProblemInstance generate_grid(int rows, int cols, std::uint64_t seed);

// Every invariant violation in the instance, not just the first.
// An empty result means the instance is valid.
std::vector<std::string> validate(const ProblemInstance& inst);

// Instance file: a single JSON document
//   {"node_count": N, "arcs": [[tail, head, c, d], ...],
//    "source": s, "sink": t, "budget": r0}
// Arc order is preserved exactly; read(write(x)) == x.
void write_instance(const ProblemInstance& inst, const std::string& path);
ProblemInstance read_instance(const std::string& path);

// String-level variants used by the bindings and tests.
std::string instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const std::string& text);

} // namespace spni

#endif
