#include "cutsparse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cutsparse/disjoint_sets.hpp"

namespace cutsparse {

WeightedGraph::WeightedGraph(std::uint32_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) throw InvalidInput("graph must have at least one vertex");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u >= n_ || e.v >= n_)
      throw InvalidInput("edge " + std::to_string(i) + ": endpoint out of range");
    if (e.u == e.v) throw InvalidInput("edge " + std::to_string(i) + ": self-loop");
    if (e.w == 0 || e.w > kMaxWeight)
      throw InvalidInput("edge " + std::to_string(i) + ": weight outside [1, 2^63-1]");
  }
  if (edges_.size() > std::numeric_limits<EdgeId>::max())
    throw InvalidInput("too many edges");
}

Weight WeightedGraph::max_weight() const {
  Weight best = 0;
  for (const Edge& e : edges_) best = std::max(best, e.w);
  return best;
}

Wide WeightedGraph::total_weight() const {
  Wide sum = 0;
  for (const Edge& e : edges_) sum += e.w;
  return sum;
}

SparseGraph::SparseGraph(std::uint32_t n, std::vector<RealEdge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ == 0) throw InvalidInput("graph must have at least one vertex");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const RealEdge& e = edges_[i];
    if (e.u >= n_ || e.v >= n_)
      throw InvalidInput("edge " + std::to_string(i) + ": endpoint out of range");
    if (e.u == e.v) throw InvalidInput("edge " + std::to_string(i) + ": self-loop");
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw InvalidInput("edge " + std::to_string(i) + ": weight must be positive and finite");
  }
}

SparseGraph SparseGraph::from_integer(const WeightedGraph& g) {
  std::vector<RealEdge> out;
  out.reserve(g.num_edges());
  for (const Edge& e : g.edges()) out.push_back({e.u, e.v, static_cast<double>(e.w)});
  return SparseGraph(g.num_vertices(), std::move(out));
}

double SparseGraph::min_weight() const {
  double best = std::numeric_limits<double>::infinity();
  for (const RealEdge& e : edges_) best = std::min(best, e.w);
  return best;
}

double SparseGraph::max_weight() const {
  double best = 0.0;
  for (const RealEdge& e : edges_) best = std::max(best, e.w);
  return best;
}

CutSpec::CutSpec(std::vector<bool> side) : side_(std::move(side)) {
  const auto inside = std::count(side_.begin(), side_.end(), true);
  if (inside == 0 || inside == static_cast<std::ptrdiff_t>(side_.size()))
    throw InvalidInput("cut side must be non-empty and proper");
}

CutSpec CutSpec::from_vertices(std::uint32_t n, std::span<const Vertex> members) {
  std::vector<bool> side(n, false);
  for (Vertex v : members) {
    if (v >= n) throw InvalidInput("cut member out of range");
    side[v] = true;
  }
  return CutSpec(std::move(side));
}

CutSpec CutSpec::from_mask(std::uint32_t n, std::uint64_t mask) {
  if (n > 64) throw InvalidInput("mask cuts need n <= 64");
  std::vector<bool> side(n, false);
  for (std::uint32_t v = 0; v < n; ++v) side[v] = (mask >> v) & 1U;
  return CutSpec(std::move(side));
}

CutSpec CutSpec::complement() const {
  std::vector<bool> flipped(side_.size());
  for (std::size_t i = 0; i < side_.size(); ++i) flipped[i] = !side_[i];
  return CutSpec(std::move(flipped));
}

std::vector<Vertex> CutSpec::members() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < side_.size(); ++v)
    if (side_[v]) out.push_back(v);
  return out;
}

namespace {

void check_cut(std::uint32_t n, const CutSpec& cut) {
  if (cut.num_vertices() != n) throw InvalidInput("cut and graph disagree on vertex count");
}

}  // namespace

Wide cut_weight_exact(const WeightedGraph& g, const CutSpec& cut) {
  check_cut(g.num_vertices(), cut);
  Wide sum = 0;
  for (const Edge& e : g.edges())
    if (cut.contains(e.u) != cut.contains(e.v)) sum += e.w;
  return sum;
}

double cut_weight(const WeightedGraph& g, const CutSpec& cut) {
  return to_double(cut_weight_exact(g, cut));
}

double cut_weight(const SparseGraph& g, const CutSpec& cut) {
  check_cut(g.num_vertices(), cut);
  double sum = 0.0;
  double comp = 0.0;
  for (const RealEdge& e : g.edges()) {
    if (cut.contains(e.u) == cut.contains(e.v)) continue;
    const double t = sum + e.w;
    if (std::abs(sum) >= std::abs(e.w))
      comp += (sum - t) + e.w;
    else
      comp += (e.w - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double to_double(Wide x) {
  const auto hi = static_cast<std::uint64_t>(x >> 64);
  const auto lo = static_cast<std::uint64_t>(x);
  return std::ldexp(static_cast<double>(hi), 64) + static_cast<double>(lo);
}

std::string to_string(Wide x) {
  if (x == 0) return "0";
  std::string s;
  while (x > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

Contraction contract(const WeightedGraph& g, const std::function<bool(const Edge&)>& keep) {
  const std::uint32_t n = g.num_vertices();
  ForestDsu dsu;
  for (Vertex v = 0; v < n; ++v) dsu.make_set(v);
  for (const Edge& e : g.edges())
    if (!keep(e)) dsu.unite(e.u, e.v);

  // Dense renumbering in order of first appearance by vertex id.
  constexpr Vertex kUnset = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> root_label(n, kUnset);
  std::vector<Vertex> vertex_map(n);
  Vertex next = 0;
  for (Vertex v = 0; v < n; ++v) {
    const Vertex r = static_cast<Vertex>(dsu.find(v));
    if (root_label[r] == kUnset) root_label[r] = next++;
    vertex_map[v] = root_label[r];
  }

  std::vector<Edge> edges;
  std::vector<EdgeId> origin;
  for (EdgeId id = 0; id < g.num_edges(); ++id) {
    const Edge& e = g.edge(id);
    if (!keep(e)) continue;
    const Vertex a = vertex_map[e.u];
    const Vertex b = vertex_map[e.v];
    if (a == b) continue;
    edges.push_back({a, b, e.w});
    origin.push_back(id);
  }
  return {WeightedGraph(next, std::move(edges)), std::move(vertex_map), std::move(origin)};
}

WeightedGraph edge_subgraph(const WeightedGraph& g, std::span<const EdgeId> ids) {
  std::vector<Edge> edges;
  edges.reserve(ids.size());
  for (EdgeId id : ids) edges.push_back(g.edge(id));
  return WeightedGraph(g.num_vertices(), std::move(edges));
}

std::vector<std::uint32_t> component_labels(std::uint32_t n, std::span<const Edge> edges) {
  ForestDsu dsu;
  for (Vertex v = 0; v < n; ++v) dsu.make_set(v);
  for (const Edge& e : edges) dsu.unite(e.u, e.v);
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label_of_root(n, kUnset);
  std::vector<std::uint32_t> labels(n);
  std::uint32_t next = 0;
  for (Vertex v = 0; v < n; ++v) {
    const auto r = dsu.find(v);
    if (label_of_root[r] == kUnset) label_of_root[r] = next++;
    labels[v] = label_of_root[r];
  }
  return labels;
}

}  // namespace cutsparse
