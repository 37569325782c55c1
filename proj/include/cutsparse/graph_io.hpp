#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cutsparse/graph.hpp"

namespace cutsparse {

// Edge list: first line "n m", then m lines "u v w" with 0-indexed vertices.
// DIMACS: "c" comments, one "p <kind> n m" line, then "a u v w" or "e u v [w]"
// lines with 1-indexed vertices; every arc line is one undirected edge.
enum class GraphFormat { kEdgeList, kDimacs };

class ParseError : public InvalidInput {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

GraphFormat format_from_path(const std::filesystem::path& path);
GraphFormat parse_format_name(const std::string& name);

WeightedGraph load_graph(std::istream& in, GraphFormat format);
// Accepts real weights; used for sparsifier outputs.
SparseGraph load_sparse_graph(std::istream& in, GraphFormat format);

void save_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format);
void save_graph(std::ostream& out, const SparseGraph& g, GraphFormat format);

WeightedGraph load_graph_file(const std::filesystem::path& path);
SparseGraph load_sparse_graph_file(const std::filesystem::path& path);
void save_graph_file(const std::filesystem::path& path, const WeightedGraph& g);
void save_graph_file(const std::filesystem::path& path, const SparseGraph& g);

// Shortest decimal text that reads back to the same double; integral values
// below 2^63 are printed without exponent or fraction.
std::string format_weight(double w);

}  // namespace cutsparse
