#pragma once

#include <cstdint>
#include <optional>

#include "cutsparse/graph.hpp"
#include "cutsparse/msf_packing.hpp"

namespace cutsparse {

inline constexpr std::uint32_t kEnumerationLimit = 20;

struct CutReport {
  double max_rel_error = 0.0;
  std::optional<CutSpec> worst_cut;  // empty only when every cut is exact
  std::uint64_t num_cuts = 0;        // 2^(n-1) - 1
  double min_cut_value = 0.0;        // lambda of the reference graph
};

// Max over all 2^(n-1) - 1 cuts of |w_H(C) / w_G(C) - 1|. A cut of weight 0
// in G counts as error 0 when H agrees and +inf otherwise. Parallel over
// Gray-code chunks when built with OpenMP.
CutReport check_sparsifier(const WeightedGraph& g, const SparseGraph& h,
                           std::uint32_t n_limit = kEnumerationLimit);
CutReport check_sparsifier(const SparseGraph& g, const SparseGraph& h,
                           std::uint32_t n_limit = kEnumerationLimit);

// Serial reference: every cut summed directly over the edge lists.
CutReport check_sparsifier_serial(const SparseGraph& g, const SparseGraph& h,
                                  std::uint32_t n_limit = kEnumerationLimit);

// M rounds of Kruskal, each on the edges no earlier round took.
MsfPacking oracle_msf_packing(const WeightedGraph& g, std::uint32_t max_levels);

struct MinCut {
  CutSpec cut;
  double value;
};

// Stoer-Wagner. Disconnected inputs return the component of vertex 0 with
// value 0. Needs n >= 2.
MinCut exact_min_cut(const WeightedGraph& g);
MinCut exact_min_cut(const SparseGraph& g);

// Minimum weight of a cut separating s and t: enumeration up to
// `enumeration_limit` vertices, Dinic max-flow beyond.
Wide edge_connectivity_exact(const WeightedGraph& g, Vertex s, Vertex t,
                             std::uint32_t enumeration_limit = kEnumerationLimit);
Wide max_flow(const WeightedGraph& g, Vertex s, Vertex t);
double edge_connectivity(const WeightedGraph& g, EdgeId e);

/// C(n,k) p^k (1-p)^(n-k) through lgamma; 0 outside 0 <= k <= n.
double binomial_pmf(std::uint64_t n, double p, std::uint64_t k);

}  // namespace cutsparse
