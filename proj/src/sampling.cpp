#include "cutsparse/sampling.hpp"

#include <cmath>
#include <limits>

namespace cutsparse {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RngStream RngStream::derive(std::string_view label) const {
  return RngStream(splitmix64(seed_ ^ splitmix64(fnv1a(label))));
}

RngStream RngStream::derive(std::string_view label, std::uint64_t index) const {
  return RngStream(splitmix64(derive(label).seed() ^ splitmix64(index + 1)));
}

double RngStream::uniform_open() {
  // 53 random bits centred in their cell: (k + 0.5) / 2^53 lies in (0, 1).
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

BinomialDraw binom_sample_counted(Wide trials, double p, RngStream& rng) {
  BinomialDraw draw;
  if (trials == 0 || p <= 0.0) return draw;
  if (p >= 1.0) {
    if (trials > Wide{std::numeric_limits<std::uint64_t>::max()})
      throw InvalidInput("binomial with p = 1 and more than 2^64 trials");
    draw.successes = static_cast<std::uint64_t>(trials);
    return draw;
  }
  const double log_q = std::log1p(-p);
  Wide position = 0;  // index of the latest success
  for (;;) {
    ++draw.iterations;
    const double gap = std::floor(std::log(rng.uniform_open()) / log_q) + 1.0;
    if (gap > to_double(trials - position)) break;
    const Wide step = static_cast<Wide>(gap);
    if (step > trials - position) break;
    position += step;
    ++draw.successes;
  }
  return draw;
}

std::uint64_t binom_sample(Wide trials, double p, RngStream& rng) {
  return binom_sample_counted(trials, p, rng).successes;
}

std::optional<double> compress_edge(Wide trials, double p, RngStream& rng) {
  if (!(p > 0.0) || p > 1.0) throw InvalidInput("compression probability must lie in (0, 1]");
  const std::uint64_t r = binom_sample(trials, p, rng);
  if (r == 0) return std::nullopt;
  return static_cast<double>(r) / p;
}

}  // namespace cutsparse
