#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "cutsparse/graph.hpp"

namespace cutsparse {

// Seedable stream over std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Child streams are derived by hashing a label into the parent
// seed, so every phase of a run draws from its own reproducible stream.
class RngStream {
 public:
  static constexpr std::string_view kGenerator = "mt19937_64/splitmix-derive/v1";

  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  RngStream derive(std::string_view label) const;
  RngStream derive(std::string_view label, std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform_open();
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

struct BinomialDraw {
  std::uint64_t successes = 0;
  std::uint64_t iterations = 0;  // geometric-skip loop passes; 0 on short-circuit
};

// Binomial(trials, p) by summing geometric gaps between successes: one
// uniform per success plus one to overshoot, so the cost is O(1 + k).
// p <= 0 and p >= 1 (and trials == 0) return immediately.
BinomialDraw binom_sample_counted(Wide trials, double p, RngStream& rng);
std::uint64_t binom_sample(Wide trials, double p, RngStream& rng);

// Edge compression: r ~ Binomial(trials, p); returns r / p when r > 0.
std::optional<double> compress_edge(Wide trials, double p, RngStream& rng);

}  // namespace cutsparse
