#include <gtest/gtest.h>

#include "hopsets/asp.hpp"
#include "hopsets/generators.hpp"
#include "hopsets/hopset.hpp"
#include "support.hpp"

using namespace hopsets;

namespace {

Hopset empty_hopset(std::size_t n, std::uint64_t beta) {
  Hopset hs;
  hs.n = n;
  hs.effective_beta = beta;
  hs.effective_eps = Rational(1, 10);
  hs.recorded = true;
  return hs;
}

Hopset reporting_hopset(const Graph& g, const char* eps, std::uint64_t seed,
                        std::optional<Rational> internal = std::nullopt, HopsetMode mode = HopsetMode::reduced) {
  HopsetParams p;
  p.mode = mode;
  p.eps = parse_rational(eps);
  p.seed = seed;
  p.eps_internal = internal;
  p.path_reporting = true;
  return build_hopset(g, p);
}

}  // namespace

TEST(Asp, IsolatedSource) {
  const Graph g = Graph::from_edges(4, {{1, 2, 3}, {2, 3, 1}});
  const Vertex src[] = {0};
  const auto r = asp_estimates(g, empty_hopset(4, 3), src);
  EXPECT_EQ(r.estimate(0, 0).raw(), 0);
  for (Vertex v = 1; v < 4; ++v) EXPECT_TRUE(r.estimate(0, v).is_infinite());
}

TEST(Asp, FullBudgetIsExact) {
  const Graph g = oracle::unit_path(50);
  const Vertex src[] = {49};
  const auto r = asp_estimates(g, empty_hopset(50, 49), src);
  for (Vertex v = 0; v < 50; ++v) EXPECT_EQ(r.estimate(49, v).raw(), 49 - v);
}

TEST(Asp, RejectsBadSources) {
  const Graph g = oracle::unit_path(5);
  const Vertex src[] = {5};
  EXPECT_THROW(asp_estimates(g, empty_hopset(5, 4), src), ParameterError);
  const Vertex ok[] = {1};
  EXPECT_THROW(asp_estimates(g, empty_hopset(5, 4), ok).row(2), ParameterError);
  EXPECT_THROW(asp_estimates(g, empty_hopset(4, 4), ok), ParameterError);
}

TEST(Asp, EstimatesWithinStretch) {
  const Graph g = oracle::er(200, 0.05, 1, 100, 9);
  HopsetParams p;
  p.eps = parse_rational("0.3");
  p.seed = 9;
  const Hopset hs = build_hopset(g, p);
  const std::vector<Vertex> src{0, 17, 55, 120, 199};
  const auto r = asp_estimates(g, hs, src, 3);
  const auto d = oracle::floyd_warshall(g);
  for (Vertex s : src)
    for (Vertex v = 0; v < 200; ++v) {
      if (d[s][v] >= oracle::kInf) {
        EXPECT_TRUE(r.estimate(s, v).is_infinite());
        continue;
      }
      const Rational est = r.estimate(s, v).as_rational(hs.denominator);
      EXPECT_GE(est, Rational(to_bigint(d[s][v])));
      EXPECT_LE(est, Rational(13, 10) * Rational(to_bigint(d[s][v])));
    }
}

TEST(Asp, StreamMatchesBatch) {
  const Graph g = oracle::er(80, 0.06, 1, 20, 2);
  const Hopset hs = reporting_hopset(g, "0.3", 2);
  const std::vector<Vertex> src{3, 1, 4, 1, 5};
  const auto batch = asp_estimates(g, hs, src, 1);
  std::vector<Vertex> order;
  asp_stream(g, hs, src, 2, [&](const HopLimitedRow& row) {
    order.push_back(row.source);
    EXPECT_EQ(row.dist, batch.row(row.source).dist);
  });
  EXPECT_EQ(order, src);
}

TEST(PathExtraction, GraphEdgesOnly) {
  const Graph g = oracle::er(60, 0.08, 1, 9, 3);
  const Vertex src[] = {0};
  const auto r = asp_estimates(g, empty_hopset(60, 59), src);
  for (Vertex v = 1; v < 60; ++v) {
    if (r.estimate(0, v).is_infinite()) continue;
    const auto p = extract_path(g, empty_hopset(60, 59), r, 0, v);
    EXPECT_EQ(p.vertices.front(), 0u);
    EXPECT_EQ(p.vertices.back(), v);
    EXPECT_EQ(p.weight, r.estimate(0, v).raw());
  }
}

TEST(PathExtraction, DirectModeWitnessWeightIsExact) {
  const Graph g = oracle::unit_path(3000);
  const Hopset hs = reporting_hopset(g, "0.3", 1, Rational(9, 100), HopsetMode::direct);
  const Vertex src[] = {0};
  ASSERT_LT(hs.effective_beta, 2999u);
  const auto r = asp_estimates(g, hs, src);
  for (Vertex v : {Vertex{1500}, Vertex{2100}, Vertex{2999}}) {
    ASSERT_TRUE(r.estimate(0, v).is_finite());
    const auto p = extract_path(g, hs, r, 0, v);
    EXPECT_EQ(p.vertices.size(), v + 1u);
    EXPECT_EQ(p.weight, r.estimate(0, v).raw());
  }
}

TEST(PathExtraction, ReducedModePathsValidate) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    for (const auto& internal : {std::optional<Rational>{}, std::optional<Rational>{Rational(9, 100)}}) {
      const Graph g = oracle::er(64, 0.1, 1, 1 << 20, seed);
      const Hopset hs = reporting_hopset(g, "0.3", seed, internal);
      const std::vector<Vertex> src{0, 10, 33};
      const auto r = asp_estimates(g, hs, src);
      for (Vertex s : src)
        for (Vertex v = 0; v < 64; ++v) {
          if (v == s || r.estimate(s, v).is_infinite()) continue;
          const auto p = extract_path(g, hs, r, s, v);
          EXPECT_EQ(p.vertices.front(), s);
          EXPECT_EQ(p.vertices.back(), v);
          EXPECT_LE(p.weight * hs.denominator, r.estimate(s, v).raw());
        }
    }
  }
}

TEST(PathExtraction, NeedsWitnesses) {
  const Graph g = oracle::unit_path(3000);
  HopsetParams p;
  p.mode = HopsetMode::direct;
  p.eps_internal = Rational(9, 100);
  const Hopset hs = build_hopset(g, p);
  const Vertex src[] = {0};
  const auto r = asp_estimates(g, hs, src);
  EXPECT_THROW(extract_path(g, hs, r, 0, 2999), ParameterError);
  EXPECT_THROW(extract_path(g, hs, r, 0, 3000), ParameterError);
}
