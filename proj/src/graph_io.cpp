#include "cutsparse/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace cutsparse {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::uint64_t parse_uint(std::string_view s, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, std::string("malformed ") + what + " '" + std::string(s) + "'");
  return value;
}

double parse_real(std::string_view s, std::size_t line) {
  double value = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(line, "malformed weight '" + std::string(s) + "'");
  return value;
}

template <typename W>
W parse_weight(std::string_view s, std::size_t line) {
  if constexpr (std::is_same_v<W, Weight>) {
    if (!s.empty() && s.front() == '-') throw ParseError(line, "weight must be positive");
    const Weight w = parse_uint(s, line, "weight");
    if (w == 0) throw ParseError(line, "weight must be positive");
    if (w > kMaxWeight) throw ParseError(line, "weight exceeds 2^63-1");
    return w;
  } else {
    const double w = parse_real(s, line);
    if (!(w > 0.0) || !std::isfinite(w)) throw ParseError(line, "weight must be positive and finite");
    return w;
  }
}

template <typename W>
struct ParsedGraph {
  std::uint32_t n = 0;
  std::vector<std::tuple<Vertex, Vertex, W>> edges;
};

template <typename W>
void add_edge(ParsedGraph<W>& g, std::uint64_t u, std::uint64_t v, W w, std::size_t line) {
  if (u >= g.n || v >= g.n) throw ParseError(line, "endpoint out of range");
  if (u == v) throw ParseError(line, "self-loop");
  g.edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v), w);
}

std::uint32_t checked_vertex_count(std::uint64_t n, std::size_t line) {
  if (n == 0 || n > std::numeric_limits<std::uint32_t>::max() - 1)
    throw ParseError(line, "vertex count out of range");
  return static_cast<std::uint32_t>(n);
}

template <typename W>
ParsedGraph<W> parse_edge_list(std::istream& in) {
  ParsedGraph<W> g;
  std::string raw;
  std::size_t line = 0;
  bool have_header = false;
  std::uint64_t expected = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto fields = split_fields(raw);
    if (fields.empty() || fields.front().front() == '#') continue;
    if (!have_header) {
      if (fields.size() != 2) throw ParseError(line, "expected header 'n m'");
      g.n = checked_vertex_count(parse_uint(fields[0], line, "vertex count"), line);
      expected = parse_uint(fields[1], line, "edge count");
      have_header = true;
      continue;
    }
    if (fields.size() != 3) throw ParseError(line, "expected 'u v w'");
    if (g.edges.size() == expected) throw ParseError(line, "more edges than announced in header");
    add_edge(g, parse_uint(fields[0], line, "vertex"), parse_uint(fields[1], line, "vertex"),
             parse_weight<W>(fields[2], line), line);
  }
  if (!have_header) throw ParseError(line + 1, "missing header 'n m'");
  if (g.edges.size() != expected)
    throw ParseError(line + 1, "header announced " + std::to_string(expected) + " edges, found " +
                                   std::to_string(g.edges.size()));
  return g;
}

template <typename W>
ParsedGraph<W> parse_dimacs(std::istream& in) {
  ParsedGraph<W> g;
  std::string raw;
  std::size_t line = 0;
  bool have_problem = false;
  std::uint64_t expected = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto fields = split_fields(raw);
    if (fields.empty() || fields.front() == "c") continue;
    const std::string_view tag = fields.front();
    if (tag == "p") {
      if (have_problem) throw ParseError(line, "duplicate problem line");
      if (fields.size() != 4) throw ParseError(line, "expected 'p <kind> n m'");
      g.n = checked_vertex_count(parse_uint(fields[2], line, "vertex count"), line);
      expected = parse_uint(fields[3], line, "edge count");
      have_problem = true;
    } else if (tag == "a" || tag == "e") {
      if (!have_problem) throw ParseError(line, "arc before problem line");
      W w{};
      if (fields.size() == 4) {
        w = parse_weight<W>(fields[3], line);
      } else if (fields.size() == 3 && tag == "e") {
        w = W{1};
      } else {
        throw ParseError(line, "expected '" + std::string(tag) + " u v w'");
      }
      const auto u = parse_uint(fields[1], line, "vertex");
      const auto v = parse_uint(fields[2], line, "vertex");
      if (u == 0 || v == 0) throw ParseError(line, "DIMACS vertices are 1-indexed");
      add_edge(g, u - 1, v - 1, w, line);
    } else {
      throw ParseError(line, "unknown line tag '" + std::string(tag) + "'");
    }
  }
  if (!have_problem) throw ParseError(line + 1, "missing problem line");
  if (g.edges.size() != expected)
    throw ParseError(line + 1, "problem line announced " + std::to_string(expected) +
                                   " edges, found " + std::to_string(g.edges.size()));
  return g;
}

template <typename W>
ParsedGraph<W> parse(std::istream& in, GraphFormat format) {
  return format == GraphFormat::kDimacs ? parse_dimacs<W>(in) : parse_edge_list<W>(in);
}

template <typename EdgeRange, typename WeightText>
void write(std::ostream& out, std::uint32_t n, const EdgeRange& edges, GraphFormat format,
           WeightText weight_text) {
  if (format == GraphFormat::kDimacs) {
    out << "p sp " << n << ' ' << edges.size() << '\n';
    for (const auto& e : edges)
      out << "a " << (e.u + 1) << ' ' << (e.v + 1) << ' ' << weight_text(e.w) << '\n';
  } else {
    out << n << ' ' << edges.size() << '\n';
    for (const auto& e : edges) out << e.u << ' ' << e.v << ' ' << weight_text(e.w) << '\n';
  }
}

}  // namespace

GraphFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".gr" || ext == ".dimacs" || ext == ".col") ? GraphFormat::kDimacs
                                                             : GraphFormat::kEdgeList;
}

GraphFormat parse_format_name(const std::string& name) {
  if (name == "edge-list" || name == "edgelist") return GraphFormat::kEdgeList;
  if (name == "dimacs") return GraphFormat::kDimacs;
  throw InvalidInput("unknown graph format '" + name + "'");
}

WeightedGraph load_graph(std::istream& in, GraphFormat format) {
  auto parsed = parse<Weight>(in, format);
  std::vector<Edge> edges;
  edges.reserve(parsed.edges.size());
  for (const auto& [u, v, w] : parsed.edges) edges.push_back({u, v, w});
  return WeightedGraph(parsed.n, std::move(edges));
}

SparseGraph load_sparse_graph(std::istream& in, GraphFormat format) {
  auto parsed = parse<double>(in, format);
  std::vector<RealEdge> edges;
  edges.reserve(parsed.edges.size());
  for (const auto& [u, v, w] : parsed.edges) edges.push_back({u, v, w});
  return SparseGraph(parsed.n, std::move(edges));
}

std::string format_weight(double w) {
  if (w == std::floor(w) && w >= 0.0 && w < 9223372036854775808.0)
    return std::to_string(static_cast<std::uint64_t>(w));
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, ptr);
}

void save_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format) {
  write(out, g.num_vertices(), g.edges(), format, [](Weight w) { return std::to_string(w); });
}

void save_graph(std::ostream& out, const SparseGraph& g, GraphFormat format) {
  write(out, g.num_vertices(), g.edges(), format, [](double w) { return format_weight(w); });
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

WeightedGraph load_graph_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_graph(in, format_from_path(path));
}

SparseGraph load_sparse_graph_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_sparse_graph(in, format_from_path(path));
}

void save_graph_file(const std::filesystem::path& path, const WeightedGraph& g) {
  auto out = open_output(path);
  save_graph(out, g, format_from_path(path));
}

void save_graph_file(const std::filesystem::path& path, const SparseGraph& g) {
  auto out = open_output(path);
  save_graph(out, g, format_from_path(path));
}

}  // namespace cutsparse
