#include "cutsparse/ni_packing.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "cutsparse/sampling.hpp"

namespace cutsparse {

NiIndices ni_indices(const WeightedGraph& g) {
  const std::uint32_t n = g.num_vertices();
  const std::size_t m = g.num_edges();

  std::vector<std::size_t> offset(n + 1, 0);
  for (const Edge& e : g.edges()) {
    ++offset[e.u + 1];
    ++offset[e.v + 1];
  }
  for (std::uint32_t v = 0; v < n; ++v) offset[v + 1] += offset[v];
  std::vector<std::pair<Vertex, EdgeId>> adj(2 * m);
  {
    auto fill = offset;
    for (EdgeId id = 0; id < m; ++id) {
      const Edge& e = g.edge(id);
      adj[fill[e.u]++] = {e.v, id};
      adj[fill[e.v]++] = {e.u, id};
    }
  }

  struct Entry {
    Wide attach;
    Vertex v;
  };
  auto lower_priority = [](const Entry& a, const Entry& b) {
    return a.attach != b.attach ? a.attach < b.attach : a.v > b.v;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower_priority)> heap(lower_priority);

  NiIndices out;
  out.index.assign(m, 0);
  std::vector<Wide> attach(n, 0);
  std::vector<bool> scanned(n, false);
  Vertex next_start = 0;
  for (std::uint32_t done = 0; done < n;) {
    if (heap.empty()) {
      while (scanned[next_start]) ++next_start;
      heap.push({0, next_start});
    }
    const Entry top = heap.top();
    heap.pop();
    if (scanned[top.v] || top.attach != attach[top.v]) continue;
    scanned[top.v] = true;
    ++done;
    for (std::size_t k = offset[top.v]; k < offset[top.v + 1]; ++k) {
      const auto [y, id] = adj[k];
      if (scanned[y]) continue;
      attach[y] += g.edge(id).w;
      out.index[id] = attach[y];
      heap.push({attach[y], y});
    }
  }
  return out;
}

double ni_rho(std::uint32_t n, double epsilon, double rho_scale) {
  if (n < 2) throw InvalidInput("rho needs n >= 2");
  return rho_scale * (224.0 / 0.38) * std::log(static_cast<double>(n)) / (epsilon * epsilon);
}

SparseGraph fhhp_preprocess(const WeightedGraph& g, const PreprocessOptions& options) {
  if (!(options.epsilon > 0.0 && options.epsilon < 1.0))
    throw InvalidInput("epsilon must lie in (0, 1)");
  if (!(options.rho_scale > 0.0)) throw InvalidInput("rho_scale must be positive");
  if (g.num_vertices() < 2) return SparseGraph(g.num_vertices());

  const double rho = options.rho_target ? *options.rho_target
                                        : ni_rho(g.num_vertices(), options.epsilon, options.rho_scale);
  const auto ni = ni_indices(g);
  RngStream rng = RngStream(options.seed).derive("ni-compress");
  std::vector<RealEdge> kept;
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    const double p = std::min(1.0, rho / to_double(ni.index[id]));
    if (const auto w = compress_edge(e.w, p, rng)) kept.push_back({e.u, e.v, *w});
  }
  return SparseGraph(g.num_vertices(), std::move(kept));
}

}  // namespace cutsparse
