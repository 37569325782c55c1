#include "cutsparse/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cutsparse {

namespace {

constexpr std::uint64_t kChunk = 1024;

struct Dense {
  std::uint32_t n;
  std::vector<long double> a;  // row-major, symmetric
  long double total = 0;
};

template <typename E>
Dense to_dense(std::uint32_t n, std::span<const E> edges) {
  Dense d{n, std::vector<long double>(std::size_t{n} * n, 0.0L)};
  for (const auto& e : edges) {
    const auto w = static_cast<long double>(e.w);
    d.a[std::size_t{e.u} * n + e.v] += w;
    d.a[std::size_t{e.v} * n + e.u] += w;
    d.total += w;
  }
  return d;
}

long double cut_direct(const Dense& d, std::uint64_t mask) {
  long double sum = 0;
  for (std::uint32_t u = 0; u < d.n; ++u) {
    if (!((mask >> u) & 1)) continue;
    for (std::uint32_t v = 0; v < d.n; ++v)
      if (!((mask >> v) & 1)) sum += d.a[std::size_t{u} * d.n + v];
  }
  return sum;
}

// Change in cut weight when vertex x switches sides.
long double flip_delta(const Dense& d, std::uint64_t mask, std::uint32_t x) {
  const bool side = (mask >> x) & 1;
  long double delta = 0;
  const long double* row = &d.a[std::size_t{x} * d.n];
  for (std::uint32_t y = 0; y < d.n; ++y) {
    if (y == x) continue;
    delta += (((mask >> y) & 1) == side) ? row[y] : -row[y];
  }
  return delta;
}

double relative_error(long double wg, long double wh) {
  if (wg == 0) return wh == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return static_cast<double>(std::fabs(wh / wg - 1.0L));
}

struct Partial {
  double err = -1.0;
  std::uint64_t mask = 0;
  long double min_g = std::numeric_limits<long double>::infinity();

  void offer(double e, std::uint64_t m, long double wg) {
    if (e > err || (e == err && m < mask)) {
      err = e;
      mask = m;
    }
    min_g = std::min(min_g, wg);
  }
  void merge(const Partial& o) {
    if (o.err > err || (o.err == err && o.mask < mask)) {
      err = o.err;
      mask = o.mask;
    }
    min_g = std::min(min_g, o.min_g);
  }
};

CutReport finish(std::uint32_t n, std::uint64_t num_cuts, const Partial& best) {
  CutReport report;
  report.num_cuts = num_cuts;
  report.max_rel_error = std::max(best.err, 0.0);
  report.min_cut_value = static_cast<double>(best.min_g);
  if (best.err > 0.0) report.worst_cut = CutSpec::from_mask(n, best.mask);
  return report;
}

void check_dims(std::uint32_t gn, std::uint32_t hn, std::uint32_t n_limit) {
  if (gn != hn) throw InvalidInput("graphs have different vertex counts");
  if (gn < 2) throw InvalidInput("cut enumeration needs n >= 2");
  if (gn > n_limit || gn > 63) throw InvalidInput("cut enumeration limited to n <= " + std::to_string(n_limit));
}

CutReport enumerate_gray(const Dense& g, const Dense& h) {
  const std::uint32_t n = g.n;
  // Vertex n-1 stays on the complement side, so each cut is visited once.
  const std::uint64_t num_cuts = (std::uint64_t{1} << (n - 1)) - 1;
  const std::uint64_t chunks = (num_cuts + kChunk - 1) / kChunk;
  const long double zero_tol = 1e-12L * g.total;
  std::vector<Partial> partial(chunks);

#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::uint64_t lo = 1 + static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t hi = std::min(lo + kChunk, num_cuts + 1);
    std::uint64_t mask = lo ^ (lo >> 1);
    long double wg = cut_direct(g, mask);
    long double wh = cut_direct(h, mask);
    Partial& best = partial[c];
    for (std::uint64_t i = lo;; ) {
      if (wg <= zero_tol) {
        wg = cut_direct(g, mask);
        wh = cut_direct(h, mask);
      }
      best.offer(relative_error(wg, wh), mask, wg);
      if (++i == hi) break;
      const auto x = static_cast<std::uint32_t>(std::countr_zero(i));
      wg += flip_delta(g, mask, x);
      wh += flip_delta(h, mask, x);
      mask ^= std::uint64_t{1} << x;
    }
  }

  Partial best;
  for (const auto& p : partial) best.merge(p);
  return finish(n, num_cuts, best);
}

}  // namespace

CutReport check_sparsifier(const WeightedGraph& g, const SparseGraph& h, std::uint32_t n_limit) {
  check_dims(g.num_vertices(), h.num_vertices(), n_limit);
  return enumerate_gray(to_dense(g.num_vertices(), g.edges()), to_dense(h.num_vertices(), h.edges()));
}

CutReport check_sparsifier(const SparseGraph& g, const SparseGraph& h, std::uint32_t n_limit) {
  check_dims(g.num_vertices(), h.num_vertices(), n_limit);
  return enumerate_gray(to_dense(g.num_vertices(), g.edges()), to_dense(h.num_vertices(), h.edges()));
}

CutReport check_sparsifier_serial(const SparseGraph& g, const SparseGraph& h, std::uint32_t n_limit) {
  check_dims(g.num_vertices(), h.num_vertices(), n_limit);
  const std::uint32_t n = g.num_vertices();
  const std::uint64_t num_cuts = (std::uint64_t{1} << (n - 1)) - 1;
  Partial best;
  for (std::uint64_t mask = 1; mask <= num_cuts; ++mask) {
    const auto cut = CutSpec::from_mask(n, mask);
    const long double wg = cut_weight(g, cut);
    const long double wh = cut_weight(h, cut);
    best.offer(relative_error(wg, wh), mask, wg);
  }
  return finish(n, num_cuts, best);
}

MsfPacking oracle_msf_packing(const WeightedGraph& g, std::uint32_t max_levels) {
  if (max_levels == 0) throw InvalidInput("packing needs at least one level");
  const std::uint32_t n = g.num_vertices();
  std::vector<EdgeId> remaining(g.num_edges());
  for (EdgeId id = 0; id < remaining.size(); ++id) remaining[id] = id;
  std::stable_sort(remaining.begin(), remaining.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).w > g.edge(b).w; });

  MsfPacking packing;
  packing.levels = max_levels;
  packing.level.assign(g.num_edges(), MsfLevel::over());
  packing.singleton_frontier.assign(n, max_levels + 1);

  std::vector<Vertex> parent(n);
  auto root = [&](Vertex v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };
  for (std::uint32_t round = 1; round <= max_levels; ++round) {
    for (Vertex v = 0; v < n; ++v) parent[v] = v;
    std::vector<bool> touched(n, false);
    std::vector<EdgeId> rest;
    for (EdgeId id : remaining) {
      const Edge& e = g.edge(id);
      const Vertex a = root(e.u);
      const Vertex b = root(e.v);
      if (a == b) {
        rest.push_back(id);
        continue;
      }
      parent[a] = b;
      touched[e.u] = touched[e.v] = true;
      packing.level[id] = MsfLevel::at(round);
    }
    for (Vertex v = 0; v < n; ++v)
      if (!touched[v] && packing.singleton_frontier[v] > round) packing.singleton_frontier[v] = round;
    remaining.swap(rest);
  }
  return packing;
}

namespace {

template <typename T>
MinCut stoer_wagner(std::uint32_t n, std::vector<T> mat) {
  std::vector<std::vector<Vertex>> group(n);
  for (Vertex v = 0; v < n; ++v) group[v] = {v};
  std::vector<bool> active(n, true);
  std::optional<T> best;
  std::vector<Vertex> best_side;

  for (std::uint32_t phase = 0; phase + 1 < n; ++phase) {
    std::vector<T> key(n, T{0});
    std::vector<bool> in_a(n, false);
    std::uint32_t prev = n;
    std::uint32_t last = n;
    for (std::uint32_t step = 0; step < n - phase; ++step) {
      std::uint32_t sel = n;
      for (Vertex v = 0; v < n; ++v)
        if (active[v] && !in_a[v] && (sel == n || key[v] > key[sel])) sel = v;
      in_a[sel] = true;
      prev = last;
      last = sel;
      for (Vertex v = 0; v < n; ++v)
        if (active[v] && !in_a[v]) key[v] += mat[std::size_t{sel} * n + v];
    }
    if (!best || key[last] < *best) {
      best = key[last];
      best_side = group[last];
    }
    group[prev].insert(group[prev].end(), group[last].begin(), group[last].end());
    for (Vertex v = 0; v < n; ++v) {
      mat[std::size_t{prev} * n + v] += mat[std::size_t{last} * n + v];
      mat[std::size_t{v} * n + prev] = mat[std::size_t{prev} * n + v];
    }
    mat[std::size_t{prev} * n + prev] = T{0};
    active[last] = false;
  }

  double value;
  if constexpr (std::is_same_v<T, Wide>)
    value = to_double(*best);
  else
    value = static_cast<double>(*best);
  return {CutSpec::from_vertices(n, best_side), value};
}

template <typename E>
std::optional<MinCut> disconnected_cut(std::uint32_t n, std::span<const E> edges) {
  std::vector<Edge> plain;
  plain.reserve(edges.size());
  for (const auto& e : edges) plain.push_back({e.u, e.v, 1});
  const auto label = component_labels(n, plain);
  if (*std::max_element(label.begin(), label.end()) == 0) return std::nullopt;
  std::vector<bool> side(n);
  for (Vertex v = 0; v < n; ++v) side[v] = label[v] == label[0];
  return MinCut{CutSpec(std::move(side)), 0.0};
}

}  // namespace

MinCut exact_min_cut(const WeightedGraph& g) {
  const std::uint32_t n = g.num_vertices();
  if (n < 2) throw InvalidInput("min cut needs n >= 2");
  if (auto cut = disconnected_cut(n, g.edges())) return *cut;
  std::vector<Wide> mat(std::size_t{n} * n, 0);
  for (const Edge& e : g.edges()) {
    mat[std::size_t{e.u} * n + e.v] += e.w;
    mat[std::size_t{e.v} * n + e.u] += e.w;
  }
  return stoer_wagner(n, std::move(mat));
}

MinCut exact_min_cut(const SparseGraph& g) {
  const std::uint32_t n = g.num_vertices();
  if (n < 2) throw InvalidInput("min cut needs n >= 2");
  if (auto cut = disconnected_cut(n, g.edges())) return *cut;
  std::vector<double> mat(std::size_t{n} * n, 0.0);
  for (const RealEdge& e : g.edges()) {
    mat[std::size_t{e.u} * n + e.v] += e.w;
    mat[std::size_t{e.v} * n + e.u] += e.w;
  }
  return stoer_wagner(n, std::move(mat));
}

Wide max_flow(const WeightedGraph& g, Vertex s, Vertex t) {
  const std::uint32_t n = g.num_vertices();
  if (s >= n || t >= n || s == t) throw InvalidInput("max flow needs distinct terminals in range");
  struct Arc {
    Vertex to;
    Wide cap;
  };
  std::vector<Arc> arcs;
  std::vector<std::vector<std::uint32_t>> out(n);
  for (const Edge& e : g.edges()) {
    out[e.u].push_back(static_cast<std::uint32_t>(arcs.size()));
    arcs.push_back({e.v, e.w});
    out[e.v].push_back(static_cast<std::uint32_t>(arcs.size()));
    arcs.push_back({e.u, e.w});
  }

  std::vector<std::uint32_t> dist(n);
  std::vector<std::size_t> next(n);
  auto bfs = [&] {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<std::uint32_t>::max());
    std::queue<Vertex> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const Vertex x = q.front();
      q.pop();
      for (auto a : out[x]) {
        if (arcs[a].cap == 0 || dist[arcs[a].to] != std::numeric_limits<std::uint32_t>::max()) continue;
        dist[arcs[a].to] = dist[x] + 1;
        q.push(arcs[a].to);
      }
    }
    return dist[t] != std::numeric_limits<std::uint32_t>::max();
  };
  // Iterative blocking-flow DFS would be longer; recursion depth is < n.
  auto dfs = [&](auto&& self, Vertex x, Wide pushed) -> Wide {
    if (x == t) return pushed;
    for (auto& i = next[x]; i < out[x].size(); ++i) {
      const auto a = out[x][i];
      const Vertex y = arcs[a].to;
      if (arcs[a].cap == 0 || dist[y] != dist[x] + 1) continue;
      const Wide got = self(self, y, std::min(pushed, arcs[a].cap));
      if (got == 0) continue;
      arcs[a].cap -= got;
      arcs[a ^ 1].cap += got;
      return got;
    }
    return 0;
  };

  Wide flow = 0;
  while (bfs()) {
    std::fill(next.begin(), next.end(), 0);
    while (const Wide f = dfs(dfs, s, ~Wide{0})) flow += f;
  }
  return flow;
}

Wide edge_connectivity_exact(const WeightedGraph& g, Vertex s, Vertex t, std::uint32_t enumeration_limit) {
  const std::uint32_t n = g.num_vertices();
  if (s >= n || t >= n || s == t) throw InvalidInput("connectivity needs distinct vertices in range");
  if (n > enumeration_limit || n > 40) return max_flow(g, s, t);

  // Collapse parallel edges, then try every side containing s but not t.
  std::vector<Wide> mat(std::size_t{n} * n, 0);
  for (const Edge& e : g.edges()) {
    const auto [a, b] = std::minmax(e.u, e.v);
    mat[std::size_t{a} * n + b] += e.w;
  }
  struct Pair {
    Vertex a, b;
    Wide w;
  };
  std::vector<Pair> pairs;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (mat[std::size_t{a} * n + b] != 0) pairs.push_back({a, b, mat[std::size_t{a} * n + b]});

  std::vector<Vertex> free;
  for (Vertex v = 0; v < n; ++v)
    if (v != s && v != t) free.push_back(v);
  std::optional<Wide> best;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
    std::uint64_t side = std::uint64_t{1} << s;
    for (std::size_t k = 0; k < free.size(); ++k)
      if ((bits >> k) & 1) side |= std::uint64_t{1} << free[k];
    Wide sum = 0;
    for (const auto& p : pairs)
      if (((side >> p.a) & 1) != ((side >> p.b) & 1)) sum += p.w;
    if (!best || sum < *best) best = sum;
  }
  return *best;
}

double edge_connectivity(const WeightedGraph& g, EdgeId e) {
  const Edge& edge = g.edge(e);
  return to_double(edge_connectivity_exact(g, edge.u, edge.v));
}

double binomial_pmf(std::uint64_t n, double p, std::uint64_t k) {
  if (k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double log_choose = std::lgamma(nd + 1) - std::lgamma(kd + 1) - std::lgamma(nd - kd + 1);
  return std::exp(log_choose + kd * std::log(p) + (nd - kd) * std::log1p(-p));
}

}  // namespace cutsparse
