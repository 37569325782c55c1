#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "cutsparse/ni_packing.hpp"
#include "cutsparse/sparsifier.hpp"
#include "support.hpp"

using namespace cutsparse;

namespace {

SparsifyConfig practical(double target, std::uint64_t seed = 0) {
  SparsifyConfig cfg;
  cfg.rho_target = target;
  cfg.seed = seed;
  return cfg;
}

bool is_subset(const std::vector<EdgeId>& small, const std::vector<EdgeId>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

TEST(Parameters, RhoFormulas) {
  const double ln3 = std::log(3.0);
  EXPECT_DOUBLE_EQ(rho(3, 0.5, 1.0), 8 * 1352 * ln3 / (0.38 * 0.25));
  EXPECT_DOUBLE_EQ(rho_unbounded(3, 0.5, 1.0), 2 * rho(3, 0.5, 1.0));
  EXPECT_DOUBLE_EQ(rho(3, 0.5, 1.0, 0.25), rho(3, 0.5, 1.0) / 4);
  EXPECT_DOUBLE_EQ(rho(3, 0.5, 3.0), rho(3, 0.5, 1.0) * 10 / 8);
  EXPECT_THROW(rho(1, 0.5, 1.0), InvalidInput);
}

TEST(Parameters, LogStarAndRoundCount) {
  EXPECT_EQ(log_star(1.0), 0u);
  EXPECT_EQ(log_star(2.0), 1u);
  EXPECT_EQ(log_star(4.0), 2u);
  EXPECT_EQ(log_star(16.0), 3u);
  EXPECT_EQ(log_star(65536.0), 4u);
  EXPECT_EQ(log_star(65537.0), 5u);
  // n log2 n / eps^2 = 12 * 3.585 * 4 = 172.1, so 2500 edges is ratio 14.5.
  EXPECT_EQ(round_count(2500, 12, 0.5), 3u);
  EXPECT_EQ(round_count(10, 12, 0.5), 1u);
}

TEST(Parameters, EarlyOutThreshold) {
  // 4 rho n = 384; the log factor is clamped to 1 for small m.
  EXPECT_TRUE(takes_early_out(384, 12, 0.5, 8));
  EXPECT_FALSE(takes_early_out(2500, 12, 0.5, 8));
  EXPECT_DOUBLE_EQ(size_log_factor(2500, 12, 0.5), std::log2(2500 / (12 * std::log2(12.0) * 4)));
}

TEST(Parameters, EpsilonScheduleComposes) {
  // Round 1 runs at eps_1; each later round rounds and sparsifies at eps_i / 2.
  for (double eps : {0.1, 0.5, 0.9})
    for (std::uint32_t k = 1; k <= 6; ++k) {
      double product = 1.0;
      for (std::uint32_t i = 1; i <= k; ++i) {
        const double eps_i = std::ldexp(eps, -static_cast<int>(k - i + 2));
        product *= i == 1 ? 1 + eps_i : (1 + eps_i / 2) * (1 + eps_i / 2);
      }
      EXPECT_LE(product, 1 + eps) << "eps " << eps << " k " << k;
    }
}

TEST(Config, Validation) {
  SparsifyConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  for (double eps : {0.0, 1.0, -0.2, 1.5, std::nan("")}) {
    cfg.epsilon = eps;
    EXPECT_THROW(cfg.validate(), ConfigError) << eps;
  }
  cfg = {};
  cfg.c = 0.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.rho_scale = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = practical(0.25);
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.max_levels_guard = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(parse_method("kruskal"), ConfigError);
  EXPECT_EQ(parse_regime(to_string(Regime::kUnbounded)), Regime::kUnbounded);
}

TEST(Sparsify, TheoryModeIsIdentityOnSmallGraphs) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = fixtures::random_multigraph(15, 400, 1000, seed);
    SparsifyConfig cfg;
    cfg.seed = seed;
    EXPECT_EQ(sparsify(g, cfg), SparseGraph::from_integer(g));
    EXPECT_EQ(sparsify_once(g, cfg), SparseGraph::from_integer(g));
    EXPECT_EQ(sparsify_unbounded(g, cfg), SparseGraph::from_integer(g));
  }
}

TEST(Sparsify, PipelineMatchesSparsifyAtThirdWhenNiKeepsEverything) {
  const auto g = fixtures::random_multigraph(10, 300, 9, 4);
  SparsifyConfig cfg;
  cfg.seed = 12;
  SparsifyConfig third = cfg;
  third.epsilon = cfg.epsilon / 3;
  ASSERT_EQ(fhhp_preprocess(g, {third.epsilon, 1.0, std::nullopt, cfg.seed}), SparseGraph::from_integer(g));
  EXPECT_EQ(pipeline(g, cfg), sparsify(g, third));
}

TEST(Sparsify, LevelInvariants) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const auto g = fixtures::random_multigraph(12, 2500, seed % 2 ? 8 : 1728, 100 + seed);
    const double target = seed % 3 == 0 ? 2.0 : 8.0;
    RunTrace trace;
    trace.keep_sets = true;
    const auto h = sparsify_once(g, practical(target, seed), &trace);
    ASSERT_EQ(trace.rounds.size(), 1u);
    const auto& rt = trace.rounds[0];
    ASSERT_FALSE(rt.early_out);
    ASSERT_EQ(rt.levels.size(), rt.gamma + 1);
    const double y_limit = 2 * target * g.num_vertices();
    std::set<EdgeId> emitted_from;
    for (std::size_t i = 0; i < rt.levels.size(); ++i) {
      const auto& l = rt.levels[i];
      const double k = std::floor(target * std::ldexp(1.0, static_cast<int>(i) + 1));
      EXPECT_EQ(l.packing_size, static_cast<std::uint32_t>(std::min<double>(k, std::max<std::size_t>(1, l.x_size))));
      // F_i and Y_i partition X_i.
      std::vector<EdgeId> joined = l.f;
      joined.insert(joined.end(), l.y.begin(), l.y.end());
      std::sort(joined.begin(), joined.end());
      EXPECT_EQ(joined, l.x);
      // F_i is the first k_i forests of X_i.
      const auto oracle = oracle_msf_packing(edge_subgraph(g, l.x), l.packing_size);
      std::vector<EdgeId> expect_f;
      for (std::size_t p = 0; p < l.x.size(); ++p)
        if (!oracle.level[p].is_over()) expect_f.push_back(l.x[p]);
      EXPECT_EQ(l.f, expect_f);
      if (i + 1 < rt.levels.size()) {
        EXPECT_GT(static_cast<double>(l.y_size), y_limit);
        EXPECT_TRUE(is_subset(rt.levels[i + 1].x, l.y));
      } else {
        EXPECT_LE(static_cast<double>(l.y_size), y_limit);
      }
    }
    // Every output edge is in F_0, F_j or Y_Gamma; F_0 keeps its weight.
    std::set<EdgeId> allowed(rt.levels.back().y.begin(), rt.levels.back().y.end());
    for (const auto& l : rt.levels) allowed.insert(l.f.begin(), l.f.end());
    EXPECT_LE(h.num_edges(), allowed.size());
    const std::set<EdgeId> f0(rt.levels[0].f.begin(), rt.levels[0].f.end());
    std::size_t f0_seen = 0;
    for (const auto& e : h.edges())
      if (e.w == std::floor(e.w)) ++f0_seen;
    EXPECT_GE(f0_seen, f0.size());
  }
}

TEST(Sparsify, GuardStopsRunawayLevels) {
  const auto g = fixtures::random_multigraph(12, 2500, 8, 1);
  auto cfg = practical(0.5);
  cfg.max_levels_guard = 1;
  EXPECT_THROW(sparsify_once(g, cfg), GuardError);
  cfg.max_levels_guard.reset();
  EXPECT_NO_THROW(sparsify_once(g, cfg));
}

TEST(Sparsify, DeterministicPerSeed) {
  const auto g = fixtures::random_multigraph(12, 2500, 8, 2);
  for (Method m : {Method::kMsf, Method::kNi, Method::kPipeline}) {
    EXPECT_EQ(run_method(m, g, practical(8, 5)), run_method(m, g, practical(8, 5)));
    EXPECT_NE(run_method(m, g, practical(8, 5)), run_method(m, g, practical(8, 6)));
  }
}

TEST(Sparsify, RoundsRecordTheSchedule) {
  const auto g = fixtures::random_multigraph(12, 2500, 8, 3);
  RunTrace trace;
  sparsify(g, practical(8, 1), &trace);
  ASSERT_EQ(trace.rounds.size(), 3u);
  EXPECT_DOUBLE_EQ(trace.rounds[0].epsilon, 0.5 / 16);
  double product = 1.0;
  for (const auto& rt : trace.rounds) product *= rt.scale_exponent != 0 ? (1 + rt.epsilon) * (1 + rt.epsilon) : 1 + rt.epsilon;
  EXPECT_LE(product, 1.5);
}

TEST(Unbounded, SetAsideMembership) {
  // Parallel heavy paths 0-1-2 and light 0-2 edges whose bottleneck is 2^60.
  const Weight big = Weight{1} << 60;
  std::vector<Edge> edges;
  for (int i = 0; i < 40; ++i) edges.push_back({0, 1, big});
  for (int i = 0; i < 40; ++i) edges.push_back({1, 2, big});
  for (int i = 0; i < 10; ++i) edges.push_back({0, 2, 4});
  const WeightedGraph g(3, edges);
  RunTrace trace;
  const auto h = sparsify_unbounded(g, practical(0.5, 3), &trace);
  ASSERT_EQ(trace.rounds.size(), 1u);
  EXPECT_FALSE(trace.rounds[0].early_out);
  EXPECT_EQ(trace.rounds[0].set_aside, 10u);
  // p = (384/169) / 2^60, so no light edge should survive.
  for (const auto& e : h.edges()) EXPECT_GT(e.w, 1e17);
}

TEST(Unbounded, AutoRegimeFollowsWeights) {
  const auto wide = fixtures::random_wide_weights(10, 400, 60, 5);
  RunTrace trace;
  sparsify(wide, practical(2, 1), &trace);
  for (const auto& rt : trace.rounds) EXPECT_TRUE(rt.unbounded);
  RunTrace poly;
  sparsify(fixtures::random_multigraph(10, 400, 50, 5), practical(2, 1), &poly);
  for (const auto& rt : poly.rounds) EXPECT_FALSE(rt.unbounded);
}

TEST(Reduction, Examples) {
  const auto red = reduce_real_weights(SparseGraph(2, {{0, 1, 1.0}, {0, 1, 2.5}}), 0.5);
  EXPECT_EQ(red.r, 2);
  EXPECT_EQ(red.graph, WeightedGraph(2, {{0, 1, 4}, {0, 1, 10}}));

  const auto small = reduce_real_weights(SparseGraph(2, {{0, 1, 0.3}, {0, 1, 1.0}}), 0.5);
  EXPECT_EQ(small.r, 4);
  EXPECT_EQ(small.graph.edge(0).w, 5u);
  EXPECT_EQ(small.graph.edge(1).w, 16u);
  EXPECT_THROW(reduce_real_weights(SparseGraph(2, {{0, 1, 1.0}}), 1.0), InvalidInput);
}

TEST(Reduction, PerEdgeErrorWithinHalfEpsilon) {
  RngStream rng(3);
  for (int t = 0; t < 50; ++t) {
    std::vector<RealEdge> edges;
    for (int i = 0; i < 30; ++i) edges.push_back({0, 1, std::exp(8 * rng.uniform_open() - 4)});
    const SparseGraph g(2, edges);
    const double eps = 0.05 + 0.9 * rng.uniform_open();
    const auto red = reduce_real_weights(g, eps);
    const auto back = scale_back(SparseGraph::from_integer(red.graph), red.r);
    for (std::size_t i = 0; i < edges.size(); ++i)
      EXPECT_LE(std::abs(back.edges()[i].w / edges[i].w - 1), eps / 2);
  }
}

TEST(MinCut, ApproximateOnSmallGraphs) {
  EXPECT_EQ(approx_min_cut(fixtures::complete_graph(5), SparsifyConfig{}).value, 4.0);
  const WeightedGraph split(4, {{0, 1, 3}, {2, 3, 5}});
  EXPECT_EQ(approx_min_cut(split, SparsifyConfig{}).value, 0.0);
}
