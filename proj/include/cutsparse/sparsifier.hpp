#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cutsparse/graph.hpp"
#include "cutsparse/verify.hpp"

namespace cutsparse {

/// Configuration outside its documented range (CLI exit code 2).
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Level count ran past max_levels_guard (CLI exit code 3).
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Regime { kAuto, kPolynomial, kUnbounded };
enum class Method { kMsf, kNi, kPipeline };

std::string to_string(Regime r);
std::string to_string(Method m);
Regime parse_regime(const std::string& s);
Method parse_method(const std::string& s);

struct SparsifyConfig {
  double epsilon = 0.5;
  double c = 1.0;
  std::uint64_t seed = 0;
  double rho_scale = 1.0;
  // Practical mode: every call uses this rho regardless of n and epsilon.
  std::optional<double> rho_target;
  Regime regime = Regime::kAuto;
  std::optional<std::uint32_t> max_levels_guard;  // default: n

  void validate() const;
  double effective_rho(std::uint32_t n, double eps, bool unbounded) const;
};

/// rho_scale * (7 + c) * 1352 * ln(n) / (0.38 eps^2)
double rho(std::uint32_t n, double epsilon, double c, double rho_scale = 1.0);
/// Same with 2704 in place of 1352.
double rho_unbounded(std::uint32_t n, double epsilon, double c, double rho_scale = 1.0);

/// log2(m / (n log2(n) / eps^2)), clamped below at 1.
double size_log_factor(std::size_t m, std::uint32_t n, double epsilon);
/// m <= 4 rho n * size_log_factor
bool takes_early_out(std::size_t m, std::uint32_t n, double epsilon, double rho_value);
/// Iterated base-2 logarithm: steps until the value is <= 1.
std::uint32_t log_star(double x);
/// max(1, log*(m / (n log2(n) / eps^2)))
std::uint32_t round_count(std::size_t m, std::uint32_t n, double epsilon);

struct LevelTrace {
  std::uint32_t level = 0;
  std::uint32_t packing_size = 0;  // k_i
  std::size_t x_size = 0, f_size = 0, y_size = 0;
  // Edge ids of the round's working graph; filled only with keep_sets.
  std::vector<EdgeId> x, f, y;
};

struct RoundTrace {
  double epsilon = 0.0;
  double rho = 0.0;
  bool unbounded = false;
  bool early_out = false;
  std::uint32_t gamma = 0;
  std::int32_t scale_exponent = 0;  // r of the rounding step feeding this round
  std::size_t input_edges = 0;
  std::size_t output_edges = 0;
  std::size_t set_aside = 0;
  std::vector<LevelTrace> levels;
  std::optional<WeightedGraph> working;  // the graph the level ids refer to (keep_sets)
  // Windowed estimates per working edge id (unbounded path, keep_sets only).
  std::vector<std::vector<std::optional<MsfLevel>>> estimates;
};

struct RunTrace {
  bool keep_sets = false;
  std::vector<RoundTrace> rounds;
};

// One pass of the level-halving sparsifier on an integer graph. Output edges
// follow the input id order.
SparseGraph sparsify_once(const WeightedGraph& g, const SparsifyConfig& cfg, RunTrace* trace = nullptr);

// Set-aside edges (n w(e) <= d(e)) are compressed against d(e); the rest go
// through the same pass at eps / sqrt(2) with windowed packings.
SparseGraph sparsify_unbounded(const WeightedGraph& g, const SparsifyConfig& cfg,
                               RunTrace* trace = nullptr);

// round_count rounds at eps_i = eps / 2^(k - i + 2). Real-weighted round
// outputs are rounded at eps_i / 2 and the next round runs at eps_i / 2.
SparseGraph sparsify(const WeightedGraph& g, const SparsifyConfig& cfg, RunTrace* trace = nullptr);

struct Reduction {
  WeightedGraph graph;
  std::int32_t r = 0;  // weights were multiplied by 2^r
};

// Nearest multiple of 2^-r with r = -floor(log2(eps/2 * min(1, W_min))), then
// scaled to integers.
Reduction reduce_real_weights(const SparseGraph& g, double epsilon);
SparseGraph scale_back(const SparseGraph& h, std::int32_t r);

// NI preprocessing at eps/3, rounding at eps/3, sparsify at eps/3. Rounding is
// skipped when the preprocessed weights are already integers.
SparseGraph pipeline(const WeightedGraph& g, const SparsifyConfig& cfg, RunTrace* trace = nullptr);

SparseGraph run_method(Method method, const WeightedGraph& g, const SparsifyConfig& cfg,
                       RunTrace* trace = nullptr);

// Exact min cut of the sparsifier, evaluated back in G.
MinCut approx_min_cut(const WeightedGraph& g, const SparsifyConfig& cfg, Method method = Method::kMsf);

}  // namespace cutsparse
