#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cutsparse/graph.hpp"

namespace cutsparse {

// Index of the packing forest that holds an edge, or OVER when the edge's
// endpoints were already connected in all M forests. OVER is a distinct
// state, not M + 1.
class MsfLevel {
 public:
  static constexpr MsfLevel over() { return MsfLevel(0); }
  static MsfLevel at(std::uint32_t index);

  bool is_over() const { return value_ == 0; }
  std::uint32_t index() const;

  friend bool operator==(MsfLevel, MsfLevel) = default;

 private:
  constexpr explicit MsfLevel(std::uint32_t v) : value_(v) {}
  std::uint32_t value_;
};

struct MsfPacking {
  std::uint32_t levels = 0;                       // M
  std::vector<MsfLevel> level;                    // per edge id
  std::vector<std::uint32_t> singleton_frontier;  // s(v): first level where v is a singleton

  bool in_forests(EdgeId e) const { return !level[e].is_over(); }
};

// Covered edges carry an estimated index; uncovered ones (w(e) <= d(e)/n)
// are std::nullopt.
struct EstimatedMsfPacking {
  std::uint32_t levels = 0;
  std::vector<std::optional<MsfLevel>> level;
  std::vector<Weight> bottleneck;  // d(e)
  std::size_t windows = 0;

  bool covered(EdgeId e) const { return level[e].has_value(); }
};

// Edge ids ordered by (weight descending, id ascending). This key is shared
// by every packing routine and by the test oracles.
std::vector<EdgeId> descending_order_radix(const WeightedGraph& g);
std::vector<EdgeId> descending_order_comparison(const WeightedGraph& g);

/// True when W_max <= n^4, the range where radix sorting in base n is used.
bool has_polynomial_weights(const WeightedGraph& g);

// Greedy single-pass packing with binary search over forests restricted to
// levels below min(s(u), s(v)); disjoint-set forests per level, radix sort
// when the weights are polynomial and comparison sort otherwise.
MsfPacking msf_packing_bounded(const WeightedGraph& g, std::uint32_t max_levels);

// Same contract; comparison sort and linked-list union-find.
MsfPacking msf_packing_general(const WeightedGraph& g, std::uint32_t max_levels);

// d(e): minimum weight on the path between e's endpoints in one maximum
// spanning forest F. Edges of F get d(e) = w(e).
std::vector<Weight> bottleneck_weights(const WeightedGraph& g);

// Estimated indices for edges with w(e) > d(e)/n via contraction and
// rescaling windows. Requires n <= 2^21 so that rescaled weights fit.
EstimatedMsfPacking msf_packing_windowed(const WeightedGraph& g, std::uint32_t max_levels);

}  // namespace cutsparse
