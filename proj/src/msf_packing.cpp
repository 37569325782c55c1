#include "cutsparse/msf_packing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "cutsparse/disjoint_sets.hpp"

namespace cutsparse {

MsfLevel MsfLevel::at(std::uint32_t index) {
  if (index == 0) throw InvalidInput("MSF levels start at 1");
  return MsfLevel(index);
}

std::uint32_t MsfLevel::index() const {
  if (is_over()) throw ContractViolation("index() on an OVER level");
  return value_;
}

bool has_polynomial_weights(const WeightedGraph& g) {
  const Wide n = g.num_vertices();
  return Wide{g.max_weight()} <= n * n * n * n;
}

std::vector<EdgeId> descending_order_radix(const WeightedGraph& g) {
  const std::size_t m = g.num_edges();
  std::vector<EdgeId> order(m);
  std::iota(order.begin(), order.end(), EdgeId{0});
  if (m < 2) return order;

  const std::uint64_t base = std::max<std::uint64_t>(g.num_vertices(), 2);
  std::vector<EdgeId> scratch(m);
  std::vector<std::size_t> count(base + 1);
  // LSD passes; buckets are emitted high digit first and each pass is stable,
  // so equal weights keep ascending id order.
  for (std::uint64_t place = 1, w_max = g.max_weight();;) {
    std::fill(count.begin(), count.end(), 0);
    for (EdgeId id : order) ++count[base - 1 - (g.edge(id).w / place) % base];
    std::size_t acc = 0;
    for (auto& c : count) acc += std::exchange(c, acc);
    for (EdgeId id : order) scratch[count[base - 1 - (g.edge(id).w / place) % base]++] = id;
    order.swap(scratch);
    if (w_max / place < base) break;
    place *= base;
  }
  return order;
}

std::vector<EdgeId> descending_order_comparison(const WeightedGraph& g) {
  std::vector<EdgeId> order(g.num_edges());
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    const Weight wa = g.edge(a).w;
    const Weight wb = g.edge(b).w;
    return wa != wb ? wa > wb : a < b;
  });
  return order;
}

namespace {

// One union-find element per (vertex, level) pair that is no longer a
// singleton. A vertex joins levels in order 1, 2, ..., so its elements are a
// prefix stored in slots[v]; s(v) = slots[v].size() + 1.
template <typename Dsu>
MsfPacking greedy_packing(const WeightedGraph& g, std::uint32_t max_levels,
                          std::span<const EdgeId> order) {
  if (max_levels == 0) throw InvalidInput("packing needs at least one level");
  const std::uint32_t n = g.num_vertices();
  std::vector<std::vector<std::uint32_t>> slots(n);
  Dsu dsu;
  std::uint32_t next_slot = 0;

  MsfPacking packing;
  packing.levels = max_levels;
  packing.level.assign(g.num_edges(), MsfLevel::over());

  for (EdgeId id : order) {
    const Edge& e = g.edge(id);
    auto& su = slots[e.u];
    auto& sv = slots[e.v];
    const auto frontier = static_cast<std::uint32_t>(std::min(su.size(), sv.size())) + 1;

    // Connectivity is monotone over levels: connected in F_i implies
    // connected in every earlier forest.
    std::uint32_t lo = 1;
    std::uint32_t hi = frontier;
    while (lo < hi) {
      const std::uint32_t mid = lo + (hi - lo) / 2;
      if (dsu.same(su[mid - 1], sv[mid - 1]))
        lo = mid + 1;
      else
        hi = mid;
    }

    std::uint32_t target = lo;
    if (target < frontier) {
      dsu.unite(su[target - 1], sv[target - 1]);
    } else {
      if (frontier > max_levels) continue;
      if (su.size() + 1 == frontier) {
        dsu.make_set(next_slot);
        su.push_back(next_slot++);
      }
      if (sv.size() + 1 == frontier) {
        dsu.make_set(next_slot);
        sv.push_back(next_slot++);
      }
      dsu.unite(su[frontier - 1], sv[frontier - 1]);
    }
    packing.level[id] = MsfLevel::at(target);
  }

  packing.singleton_frontier.resize(n);
  for (Vertex v = 0; v < n; ++v)
    packing.singleton_frontier[v] = static_cast<std::uint32_t>(slots[v].size()) + 1;
  return packing;
}

}  // namespace

MsfPacking msf_packing_bounded(const WeightedGraph& g, std::uint32_t max_levels) {
  if (max_levels == 0) throw InvalidInput("packing needs at least one level");
  const auto order = has_polynomial_weights(g) ? descending_order_radix(g)
                                               : descending_order_comparison(g);
  return greedy_packing<ForestDsu>(g, max_levels, order);
}

MsfPacking msf_packing_general(const WeightedGraph& g, std::uint32_t max_levels) {
  if (max_levels == 0) throw InvalidInput("packing needs at least one level");
  const auto order = descending_order_comparison(g);
  return greedy_packing<LinkedListDsu>(g, max_levels, order);
}

std::vector<Weight> bottleneck_weights(const WeightedGraph& g) {
  const std::uint32_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  std::vector<Weight> d(m);
  if (m == 0) return d;

  const auto order = has_polynomial_weights(g) ? descending_order_radix(g)
                                               : descending_order_comparison(g);
  ForestDsu dsu;
  dsu.reserve(n);
  for (Vertex v = 0; v < n; ++v) dsu.make_set(v);
  std::vector<bool> in_tree(m, false);
  std::vector<std::vector<std::pair<Vertex, Weight>>> adj(n);
  for (EdgeId id : order) {
    const Edge& e = g.edge(id);
    if (!dsu.unite(e.u, e.v)) continue;
    in_tree[id] = true;
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
  }

  // Binary lifting tables: up[k][v] is the 2^k-th ancestor, low[k][v] the
  // minimum edge weight on that stretch.
  std::uint32_t log_n = 1;
  while ((std::uint32_t{1} << log_n) < n) ++log_n;
  std::vector<std::uint32_t> depth(n, 0);
  std::vector<std::vector<Vertex>> up(log_n, std::vector<Vertex>(n));
  std::vector<std::vector<Weight>> low(log_n, std::vector<Weight>(n, kMaxWeight));
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack;
  for (Vertex root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    up[0][root] = root;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      for (const auto& [y, w] : adj[x]) {
        if (seen[y]) continue;
        seen[y] = true;
        depth[y] = depth[x] + 1;
        up[0][y] = x;
        low[0][y] = w;
        stack.push_back(y);
      }
    }
  }
  for (std::uint32_t k = 1; k < log_n; ++k) {
    for (Vertex v = 0; v < n; ++v) {
      const Vertex mid = up[k - 1][v];
      up[k][v] = up[k - 1][mid];
      low[k][v] = std::min(low[k - 1][v], low[k - 1][mid]);
    }
  }

  auto path_min = [&](Vertex a, Vertex b) {
    Weight best = kMaxWeight;
    if (depth[a] < depth[b]) std::swap(a, b);
    for (std::uint32_t k = log_n; k-- > 0;) {
      if (depth[a] - depth[b] >= (std::uint32_t{1} << k)) {
        best = std::min(best, low[k][a]);
        a = up[k][a];
      }
    }
    if (a == b) return best;
    for (std::uint32_t k = log_n; k-- > 0;) {
      if (up[k][a] != up[k][b]) {
        best = std::min({best, low[k][a], low[k][b]});
        a = up[k][a];
        b = up[k][b];
      }
    }
    if (up[0][a] != up[0][b]) throw ContractViolation("bottleneck query across components");
    return std::min({best, low[0][a], low[0][b]});
  };

  for (EdgeId id = 0; id < m; ++id) {
    const Edge& e = g.edge(id);
    d[id] = in_tree[id] ? e.w : path_min(e.u, e.v);
  }
  return d;
}

EstimatedMsfPacking msf_packing_windowed(const WeightedGraph& g, std::uint32_t max_levels) {
  if (max_levels == 0) throw InvalidInput("packing needs at least one level");
  const std::uint32_t n = g.num_vertices();
  if (n > (std::uint32_t{1} << 21)) throw InvalidInput("windowed packing supports n <= 2^21");
  const std::size_t m = g.num_edges();

  EstimatedMsfPacking est;
  est.levels = max_levels;
  est.level.assign(m, std::nullopt);
  est.bottleneck = bottleneck_weights(g);
  const auto& d = est.bottleneck;

  const Wide nn = n;
  const Wide n2 = nn * nn;
  const Wide n3 = n2 * nn;

  std::vector<EdgeId> pending;
  for (EdgeId id = 0; id < m; ++id)
    if (nn * g.edge(id).w > d[id]) pending.push_back(id);
  std::sort(pending.begin(), pending.end(),
            [&](EdgeId a, EdgeId b) { return d[a] != d[b] ? d[a] > d[b] : a < b; });

  const auto by_weight = descending_order_comparison(g);
  ForestDsu merged;
  merged.reserve(n);
  for (Vertex v = 0; v < n; ++v) merged.make_set(v);

  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> vertex_stamp(n, kNone);
  std::vector<Vertex> vertex_label(n);
  std::vector<std::uint32_t> edge_local(m, kNone);

  std::size_t contracted = 0;
  std::size_t pos = 0;
  while (pos < pending.size()) {
    const Weight window = d[pending[pos]];
    const auto stamp = static_cast<std::uint32_t>(est.windows++);

    while (contracted < m && g.edge(by_weight[contracted]).w > window) {
      const Edge& e = g.edge(by_weight[contracted++]);
      merged.unite(e.u, e.v);
    }

    // Edges with weight in (D/n^2, D], rebuilt on contracted vertices.
    std::vector<EdgeId> ids;
    for (std::size_t k = contracted; k < m; ++k) {
      const EdgeId id = by_weight[k];
      if (n2 * g.edge(id).w <= window) break;
      ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());

    Vertex local_n = 0;
    auto label = [&](Vertex v) {
      const auto root = merged.find(v);
      if (vertex_stamp[root] != stamp) {
        vertex_stamp[root] = stamp;
        vertex_label[root] = local_n++;
      }
      return vertex_label[root];
    };
    std::vector<Edge> local;
    local.reserve(ids.size());
    for (EdgeId id : ids) {
      const Edge& e = g.edge(id);
      const Vertex a = label(e.u);
      const Vertex b = label(e.v);
      if (a == b) continue;
      const Wide scaled = (2 * n3 * e.w + window) / (Wide{2} * window);
      edge_local[id] = static_cast<std::uint32_t>(local.size());
      local.push_back({a, b, static_cast<Weight>(scaled)});
    }

    const auto packing =
        msf_packing_bounded(WeightedGraph(std::max<Vertex>(local_n, 1), std::move(local)), max_levels);

    while (pos < pending.size() && nn * d[pending[pos]] > window) {
      const EdgeId id = pending[pos++];
      if (edge_local[id] == kNone) throw ContractViolation("covered edge missing from its window");
      est.level[id] = packing.level[edge_local[id]];
    }
    for (EdgeId id : ids) edge_local[id] = kNone;
  }
  return est;
}

}  // namespace cutsparse
