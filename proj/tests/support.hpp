#pragma once

// Graph generators shared by the unit tests, the acceptance suite and the
// benchmark. Everything draws from RngStream so that inputs are identical on
// every platform.

#include <cstdint>
#include <vector>

#include "cutsparse/graph.hpp"
#include "cutsparse/sampling.hpp"

namespace cutsparse::fixtures {

inline std::uint64_t uniform_below(RngStream& rng, std::uint64_t bound) {
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    const std::uint64_t x = rng.next_u64();
    if (x < limit) return x % bound;
  }
}

inline Weight uniform_weight(RngStream& rng, Weight lo, Weight hi) {
  return lo + uniform_below(rng, hi - lo + 1);
}

// Connected multigraph: a random recursive tree plus uniformly random extra
// pairs. Weights uniform in [1, w_max].
inline WeightedGraph random_multigraph(std::uint32_t n, std::size_t m, Weight w_max, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<Edge> edges;
  edges.reserve(m);
  for (Vertex v = 1; v < n && edges.size() < m; ++v)
    edges.push_back({static_cast<Vertex>(uniform_below(rng, v)), v, uniform_weight(rng, 1, w_max)});
  while (edges.size() < m) {
    const auto u = static_cast<Vertex>(uniform_below(rng, n));
    const auto v = static_cast<Vertex>(uniform_below(rng, n));
    if (u == v) continue;
    edges.push_back({u, v, uniform_weight(rng, 1, w_max)});
  }
  return WeightedGraph(n, std::move(edges));
}

// Weights spread log-uniformly over [1, 2^max_bits].
inline WeightedGraph random_wide_weights(std::uint32_t n, std::size_t m, unsigned max_bits, std::uint64_t seed) {
  RngStream rng(seed);
  auto weight = [&] {
    const auto bits = static_cast<unsigned>(uniform_below(rng, max_bits + 1));
    const Weight base = Weight{1} << bits;
    return base + (bits == 0 ? 0 : uniform_below(rng, base));
  };
  std::vector<Edge> edges;
  for (Vertex v = 1; v < n && edges.size() < m; ++v)
    edges.push_back({static_cast<Vertex>(uniform_below(rng, v)), v, weight()});
  while (edges.size() < m) {
    const auto u = static_cast<Vertex>(uniform_below(rng, n));
    const auto v = static_cast<Vertex>(uniform_below(rng, n));
    if (u == v) continue;
    edges.push_back({u, v, std::min<Weight>(weight(), kMaxWeight)});
  }
  return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph complete_graph(std::uint32_t n, Weight w = 1) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.push_back({u, v, w});
  return WeightedGraph(n, std::move(edges));
}

// Two cliques on `side` vertices with `copies` parallel edges per pair
// (weights in [1, w_max]), joined by one edge of weight `bridge`.
inline WeightedGraph dumbbell(std::uint32_t side, std::uint32_t copies, Weight w_max, Weight bridge,
                              std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<Edge> edges;
  for (std::uint32_t half = 0; half < 2; ++half) {
    const Vertex base = half * side;
    for (Vertex u = 0; u < side; ++u)
      for (Vertex v = u + 1; v < side; ++v)
        for (std::uint32_t c = 0; c < copies; ++c)
          edges.push_back({base + u, base + v, uniform_weight(rng, 1, w_max)});
  }
  edges.push_back({0, side, bridge});
  return WeightedGraph(2 * side, std::move(edges));
}

}  // namespace cutsparse::fixtures
