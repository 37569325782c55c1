#include "cutsparse/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cutsparse/disjoint_sets.hpp"
#include "cutsparse/msf_packing.hpp"
#include "cutsparse/ni_packing.hpp"
#include "cutsparse/sampling.hpp"

namespace cutsparse {

namespace {

constexpr double kCompressConstant = 384.0 / 169.0;

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::kAuto: return "auto";
    case Regime::kPolynomial: return "polynomial";
    case Regime::kUnbounded: return "unbounded";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::kMsf: return "msf";
    case Method::kNi: return "ni";
    case Method::kPipeline: return "pipeline";
  }
  return "?";
}

Regime parse_regime(const std::string& s) {
  if (s == "auto") return Regime::kAuto;
  if (s == "polynomial") return Regime::kPolynomial;
  if (s == "unbounded") return Regime::kUnbounded;
  throw ConfigError("unknown regime '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "msf") return Method::kMsf;
  if (s == "ni") return Method::kNi;
  if (s == "pipeline") return Method::kPipeline;
  throw ConfigError("unknown method '" + s + "'");
}

void SparsifyConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  if (!(c >= 1.0) || !std::isfinite(c)) throw ConfigError("c must be >= 1");
  if (!(rho_scale > 0.0) || !std::isfinite(rho_scale)) throw ConfigError("rho_scale must be positive");
  if (rho_target && (!(*rho_target >= 0.5) || !std::isfinite(*rho_target)))
    throw ConfigError("rho target must be >= 0.5 so that floor(2 rho) >= 1");
  if (max_levels_guard && *max_levels_guard == 0) throw ConfigError("max_levels_guard must be positive");
}

double SparsifyConfig::effective_rho(std::uint32_t n, double eps, bool unbounded) const {
  if (rho_target) return *rho_target;
  return unbounded ? rho_unbounded(n, eps, c, rho_scale) : rho(n, eps, c, rho_scale);
}

double rho(std::uint32_t n, double epsilon, double c, double rho_scale) {
  if (n < 2) throw InvalidInput("rho needs n >= 2");
  return rho_scale * (7.0 + c) * 1352.0 * std::log(static_cast<double>(n)) / (0.38 * epsilon * epsilon);
}

double rho_unbounded(std::uint32_t n, double epsilon, double c, double rho_scale) {
  if (n < 2) throw InvalidInput("rho needs n >= 2");
  return rho_scale * (7.0 + c) * 2704.0 * std::log(static_cast<double>(n)) / (0.38 * epsilon * epsilon);
}

double size_log_factor(std::size_t m, std::uint32_t n, double epsilon) {
  const double base = static_cast<double>(n) * std::log2(static_cast<double>(n)) / (epsilon * epsilon);
  return std::max(1.0, std::log2(static_cast<double>(m) / base));
}

bool takes_early_out(std::size_t m, std::uint32_t n, double epsilon, double rho_value) {
  return static_cast<double>(m) <= 4.0 * rho_value * n * size_log_factor(m, n, epsilon);
}

std::uint32_t log_star(double x) {
  std::uint32_t steps = 0;
  while (x > 1.0) {
    x = std::log2(x);
    ++steps;
  }
  return steps;
}

std::uint32_t round_count(std::size_t m, std::uint32_t n, double epsilon) {
  if (n < 2) return 1;
  const double base = static_cast<double>(n) * std::log2(static_cast<double>(n)) / (epsilon * epsilon);
  return std::max<std::uint32_t>(1, log_star(static_cast<double>(m) / base));
}

namespace {

struct Emitted {
  EdgeId id;
  double w;
};

bool integral(const SparseGraph& h) {
  return std::all_of(h.edges().begin(), h.edges().end(), [](const RealEdge& e) {
    return e.w >= 1.0 && e.w == std::floor(e.w) && e.w < 0x1.0p63;
  });
}

WeightedGraph to_integer(const SparseGraph& h) {
  std::vector<Edge> edges;
  edges.reserve(h.num_edges());
  for (const RealEdge& e : h.edges()) edges.push_back({e.u, e.v, static_cast<Weight>(e.w)});
  return WeightedGraph(h.num_vertices(), std::move(edges));
}

SparseGraph assemble(const WeightedGraph& g, std::vector<Emitted> out) {
  std::sort(out.begin(), out.end(), [](const Emitted& a, const Emitted& b) { return a.id < b.id; });
  std::vector<RealEdge> edges;
  edges.reserve(out.size());
  for (const auto& o : out) {
    const Edge& e = g.edge(o.id);
    edges.push_back({e.u, e.v, o.w});
  }
  return SparseGraph(g.num_vertices(), std::move(edges));
}

std::uint32_t level_size(double rho_value, std::uint32_t i, std::size_t x_size) {
  const double k = std::floor(std::ldexp(rho_value, static_cast<int>(i) + 1));
  const double cap = static_cast<double>(std::max<std::size_t>(1, x_size));
  return static_cast<std::uint32_t>(std::min({k, cap, double{std::numeric_limits<std::uint32_t>::max()}}));
}

// In-forest flag per position of `x`.
std::vector<bool> pack(const WeightedGraph& g, const std::vector<EdgeId>& x, std::uint32_t k, bool windowed,
                       std::vector<std::optional<MsfLevel>>* estimates) {
  const WeightedGraph sub = edge_subgraph(g, x);
  std::vector<bool> in(x.size());
  if (!windowed) {
    const auto packing = msf_packing_bounded(sub, k);
    for (std::size_t p = 0; p < x.size(); ++p) in[p] = packing.in_forests(static_cast<EdgeId>(p));
    return in;
  }
  const auto est = msf_packing_windowed(sub, k);
  for (std::size_t p = 0; p < x.size(); ++p) {
    // Every edge here has n w(e) > d(e) in the full graph, and d only drops
    // on subgraphs, so it is always covered.
    if (!est.covered(static_cast<EdgeId>(p))) throw ContractViolation("windowed estimate missing for a kept edge");
    in[p] = !est.level[p]->is_over();
  }
  if (estimates) *estimates = est.level;
  return in;
}

void level_loop(const WeightedGraph& g, std::vector<EdgeId> x, double rho_value, bool windowed,
                const SparsifyConfig& cfg, std::uint32_t round, RoundTrace& rt, bool keep,
                std::vector<Emitted>& out) {
  const std::uint32_t n = g.num_vertices();
  const std::uint32_t guard = cfg.max_levels_guard.value_or(n);
  const RngStream root(cfg.seed);
  RngStream halving = root.derive("halving", round);
  RngStream compress = root.derive("compress", round);
  const double y_limit = 2.0 * rho_value * n;

  std::vector<std::vector<EdgeId>> forests;
  std::vector<EdgeId> y;
  for (std::uint32_t i = 0;; ++i) {
    const std::uint32_t k = level_size(rho_value, i, x.size());
    std::vector<std::optional<MsfLevel>> est;
    const auto in = pack(g, x, k, windowed, keep ? &est : nullptr);
    std::vector<EdgeId> f;
    y.clear();
    for (std::size_t p = 0; p < x.size(); ++p) (in[p] ? f : y).push_back(x[p]);

    LevelTrace lt{i, k, x.size(), f.size(), y.size(), {}, {}, {}};
    if (keep) {
      lt.x = x;
      lt.f = f;
      lt.y = y;
      if (windowed) rt.estimates.push_back(std::move(est));
    }
    rt.levels.push_back(std::move(lt));
    forests.push_back(std::move(f));

    if (static_cast<double>(y.size()) <= y_limit) break;
    if (i + 1 > guard)
      throw GuardError("level count exceeded max_levels_guard = " + std::to_string(guard));
    x.clear();
    for (EdgeId id : y)
      if (halving.coin()) x.push_back(id);
  }

  const auto gamma = static_cast<std::uint32_t>(forests.size() - 1);
  rt.gamma = gamma;
  for (EdgeId id : forests[0]) out.push_back({id, static_cast<double>(g.edge(id).w)});
  for (EdgeId id : y) out.push_back({id, std::ldexp(static_cast<double>(g.edge(id).w), static_cast<int>(gamma))});
  for (std::uint32_t j = 1; j <= gamma; ++j) {
    if (j > 63) throw GuardError("level index too large for 128-bit trial counts");
    for (EdgeId id : forests[j]) {
      const Weight w = g.edge(id).w;
      const double p = std::min(1.0, kCompressConstant / std::ldexp(static_cast<double>(w), 2 * static_cast<int>(j)));
      if (const auto kept = compress_edge(Wide{w} << j, p, compress)) out.push_back({id, *kept});
    }
  }
}

bool choose_unbounded(Regime regime, const WeightedGraph& g) {
  if (regime == Regime::kAuto) return !has_polynomial_weights(g);
  return regime == Regime::kUnbounded;
}

SparseGraph run_round(const WeightedGraph& g, const SparsifyConfig& cfg, double eps, bool unbounded,
                      std::uint32_t round, RunTrace* trace) {
  RoundTrace rt;
  rt.epsilon = eps;
  rt.unbounded = unbounded;
  rt.input_edges = g.num_edges();
  const bool keep = trace && trace->keep_sets;
  const std::uint32_t n = g.num_vertices();

  auto finish = [&](SparseGraph h) {
    rt.output_edges = h.num_edges();
    if (trace) {
      if (keep) rt.working = g;
      trace->rounds.push_back(std::move(rt));
    }
    return h;
  };

  if (n < 2) {
    rt.early_out = true;
    return finish(SparseGraph::from_integer(g));
  }
  const double run_eps = unbounded ? eps / std::sqrt(2.0) : eps;
  rt.rho = cfg.effective_rho(n, run_eps, unbounded);
  if (takes_early_out(g.num_edges(), n, run_eps, rt.rho)) {
    rt.early_out = true;
    return finish(SparseGraph::from_integer(g));
  }

  std::vector<Emitted> out;
  std::vector<EdgeId> rest;
  if (!unbounded) {
    rest.resize(g.num_edges());
    std::iota(rest.begin(), rest.end(), EdgeId{0});
  } else {
    const auto d = bottleneck_weights(g);
    RngStream setaside = RngStream(cfg.seed).derive("setaside", round);
    for (EdgeId id = 0; id < g.num_edges(); ++id) {
      const Weight w = g.edge(id).w;
      if (Wide{n} * w > d[id]) {
        rest.push_back(id);
        continue;
      }
      ++rt.set_aside;
      const double p = std::min(1.0, kCompressConstant / static_cast<double>(d[id]));
      if (const auto kept = compress_edge(w, p, setaside)) out.push_back({id, *kept});
    }
  }
  level_loop(g, std::move(rest), rt.rho, unbounded, cfg, round, rt, keep, out);
  return finish(assemble(g, std::move(out)));
}

}  // namespace

SparseGraph sparsify_once(const WeightedGraph& g, const SparsifyConfig& cfg, RunTrace* trace) {
  cfg.validate();
  return run_round(g, cfg, cfg.epsilon, false, 1, trace);
}

SparseGraph sparsify_unbounded(const WeightedGraph& g, const SparsifyConfig& cfg, RunTrace* trace) {
  cfg.validate();
  return run_round(g, cfg, cfg.epsilon, true, 1, trace);
}

SparseGraph sparsify(const WeightedGraph& g, const SparsifyConfig& cfg, RunTrace* trace) {
  cfg.validate();
  const bool unbounded = choose_unbounded(cfg.regime, g);
  const std::uint32_t k = round_count(g.num_edges(), g.num_vertices(), cfg.epsilon);

  SparseGraph h;
  for (std::uint32_t i = 1; i <= k; ++i) {
    const double eps_i = std::ldexp(cfg.epsilon, -static_cast<int>(k - i + 2));
    if (i == 1) {
      h = run_round(g, cfg, eps_i, unbounded, i, trace);
    } else if (integral(h)) {
      h = run_round(to_integer(h), cfg, eps_i, unbounded, i, trace);
    } else {
      const auto red = reduce_real_weights(h, eps_i / 2);
      h = scale_back(run_round(red.graph, cfg, eps_i / 2, unbounded, i, trace), red.r);
      if (trace) trace->rounds.back().scale_exponent = red.r;
    }
  }
  return h;
}

Reduction reduce_real_weights(const SparseGraph& g, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  double w_min = 1.0;
  for (const RealEdge& e : g.edges()) {
    if (!(e.w > 0.0) || !std::isfinite(e.w)) throw InvalidInput("weights must be positive and finite");
    w_min = std::min(w_min, e.w);
  }
  Reduction red;
  red.r = -static_cast<std::int32_t>(std::floor(std::log2(epsilon / 2 * w_min)));
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const RealEdge& e : g.edges()) {
    const double scaled = std::floor(std::ldexp(e.w, red.r) + 0.5);
    if (scaled >= 0x1.0p63) throw InvalidInput("scaled weight exceeds 2^63 - 1");
    edges.push_back({e.u, e.v, static_cast<Weight>(scaled)});
  }
  red.graph = WeightedGraph(g.num_vertices(), std::move(edges));
  return red;
}

SparseGraph scale_back(const SparseGraph& h, std::int32_t r) {
  std::vector<RealEdge> edges(h.edges().begin(), h.edges().end());
  for (auto& e : edges) e.w = std::ldexp(e.w, -r);
  return SparseGraph(h.num_vertices(), std::move(edges));
}

SparseGraph pipeline(const WeightedGraph& g, const SparsifyConfig& cfg, RunTrace* trace) {
  cfg.validate();
  const double third = cfg.epsilon / 3;
  const SparseGraph pre =
      fhhp_preprocess(g, PreprocessOptions{third, cfg.rho_scale, cfg.rho_target, cfg.seed});

  SparsifyConfig main = cfg;
  main.epsilon = third;
  if (integral(pre)) return sparsify(to_integer(pre), main, trace);
  const auto red = reduce_real_weights(pre, third);
  const std::size_t first = trace ? trace->rounds.size() : 0;
  SparseGraph h = scale_back(sparsify(red.graph, main, trace), red.r);
  if (trace && first < trace->rounds.size()) trace->rounds[first].scale_exponent = red.r;
  return h;
}

SparseGraph run_method(Method method, const WeightedGraph& g, const SparsifyConfig& cfg, RunTrace* trace) {
  switch (method) {
    case Method::kMsf: return sparsify(g, cfg, trace);
    case Method::kNi:
      cfg.validate();
      return fhhp_preprocess(g, PreprocessOptions{cfg.epsilon, cfg.rho_scale, cfg.rho_target, cfg.seed});
    case Method::kPipeline: return pipeline(g, cfg, trace);
  }
  throw ConfigError("unknown method");
}

MinCut approx_min_cut(const WeightedGraph& g, const SparsifyConfig& cfg, Method method) {
  if (g.num_vertices() < 2) throw InvalidInput("min cut needs n >= 2");
  const auto label = component_labels(g.num_vertices(), g.edges());
  if (*std::max_element(label.begin(), label.end()) != 0) return exact_min_cut(g);
  const SparseGraph h = run_method(method, g, cfg);
  MinCut cut = exact_min_cut(h);
  cut.value = cut_weight(g, cut.cut);
  return cut;
}

}  // namespace cutsparse
