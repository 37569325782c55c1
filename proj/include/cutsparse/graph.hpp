#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cutsparse {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Weight = std::uint64_t;
using Wide = unsigned __int128;

inline constexpr Weight kMaxWeight = (Weight{1} << 63) - 1;

struct Edge {
  Vertex u;
  Vertex v;
  Weight w;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct RealEdge {
  Vertex u;
  Vertex v;
  double w;

  friend bool operator==(const RealEdge&, const RealEdge&) = default;
};

/// Thrown when a graph, cut, or configuration violates its invariants.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Undirected integer-weighted multigraph. Parallel edges are kept; self-loops
// and zero weights are rejected at construction.
class WeightedGraph {
 public:
  WeightedGraph() : n_(1) {}
  explicit WeightedGraph(std::uint32_t n, std::vector<Edge> edges = {});

  std::uint32_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[id]; }

  Weight max_weight() const;
  Wide total_weight() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::uint32_t n_;
  std::vector<Edge> edges_;
};

// Reweighted output graph. Weights are positive finite doubles.
class SparseGraph {
 public:
  SparseGraph() : n_(1) {}
  explicit SparseGraph(std::uint32_t n, std::vector<RealEdge> edges = {});

  static SparseGraph from_integer(const WeightedGraph& g);

  std::uint32_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const RealEdge> edges() const { return edges_; }

  double min_weight() const;
  double max_weight() const;

  friend bool operator==(const SparseGraph&, const SparseGraph&) = default;

 private:
  std::uint32_t n_;
  std::vector<RealEdge> edges_;
};

// One side of a bipartition. Must be non-empty and proper.
class CutSpec {
 public:
  explicit CutSpec(std::vector<bool> side);
  static CutSpec from_vertices(std::uint32_t n, std::span<const Vertex> members);
  // Bit i of `mask` selects vertex i; only usable for n <= 64.
  static CutSpec from_mask(std::uint32_t n, std::uint64_t mask);

  std::uint32_t num_vertices() const { return static_cast<std::uint32_t>(side_.size()); }
  bool contains(Vertex v) const { return side_[v]; }
  CutSpec complement() const;
  std::vector<Vertex> members() const;

  friend bool operator==(const CutSpec&, const CutSpec&) = default;

 private:
  std::vector<bool> side_;
};

/// Exact cut weight of an integer graph (128-bit accumulation).
Wide cut_weight_exact(const WeightedGraph& g, const CutSpec& cut);
double cut_weight(const WeightedGraph& g, const CutSpec& cut);
/// Compensated (Neumaier) summation over the crossing edges.
double cut_weight(const SparseGraph& g, const CutSpec& cut);

double to_double(Wide x);
std::string to_string(Wide x);

struct Contraction {
  WeightedGraph graph;
  std::vector<Vertex> vertex_map;  // old vertex -> new vertex
  std::vector<EdgeId> edge_origin;  // new edge -> edge id in the input
};

// Contracts every edge for which `keep` returns false, drops the resulting
// self-loops and renumbers the surviving super-vertices densely in order of
// their smallest original vertex.
Contraction contract(const WeightedGraph& g, const std::function<bool(const Edge&)>& keep);

// Subgraph on the same vertex set induced by an edge-id list (order kept).
WeightedGraph edge_subgraph(const WeightedGraph& g, std::span<const EdgeId> ids);

// Connected-component label per vertex, labels dense from 0.
std::vector<std::uint32_t> component_labels(std::uint32_t n, std::span<const Edge> edges);

}  // namespace cutsparse
