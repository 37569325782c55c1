#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cutsparse/graph.hpp"

namespace cutsparse {

// Nagamochi-Ibaraki index per edge. An edge e occupies the w(e) contiguous
// forests l_e - w(e) + 1 .. l_e of the packing.
struct NiIndices {
  std::vector<Wide> index;
};

// Maximum-adjacency (scan-first) ordering with a binary heap. Ties go to the
// smallest vertex id, so the result is deterministic.
NiIndices ni_indices(const WeightedGraph& g);

/// scale * 224 / 0.38 * ln(n) / eps^2
double ni_rho(std::uint32_t n, double epsilon, double rho_scale = 1.0);

struct PreprocessOptions {
  double epsilon = 0.5;
  double rho_scale = 1.0;
  std::optional<double> rho_target;  // pins rho directly (practical mode)
  std::uint64_t seed = 0;
};

// Compresses every edge independently with p_e = min(1, rho / l_e). Edges
// with r_e = 0 are dropped; survivors keep their id order.
SparseGraph fhhp_preprocess(const WeightedGraph& g, const PreprocessOptions& options);

}  // namespace cutsparse
