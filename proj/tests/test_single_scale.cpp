#include <gtest/gtest.h>

#include <set>

#include "hopsets/single_scale.hpp"
#include "hopsets/generators.hpp"
#include "hopsets/scale_reduction.hpp"
#include "support.hpp"

using namespace hopsets;

namespace {

WeightValue w(Int128 x) { return WeightValue::from_raw(x); }

PhaseSchedule schedule_for(std::size_t n, int k, Rational eps = Rational(1, 20)) {
  return compute_schedule(n, 2, Rational(1, 2), eps, Rational(BigInt(1) << (k + 1)));
}

std::vector<ExtraEdge> as_extra(const SingleScaleHopset& h) {
  std::vector<ExtraEdge> out;
  for (const auto& e : h.edges) out.push_back({e.u, e.v, e.w});
  return out;
}

}  // namespace

TEST(Supercluster, MiddleSampledAbsorbsBothEnds) {
  const Graph graph = Graph::from_edges(3, {{0, 1, 5}, {1, 2, 5}});
  const auto g = WeightedAdjacency::from_graph(graph, 1);
  const auto state = singleton_partition(3);
  const ClusterSampler middle = [](std::uint32_t, const Cluster& c) { return c.center == 1; };
  const auto step = supercluster_phase(g, state, 0, w(10), middle);
  ASSERT_EQ(step.next.clusters.size(), 1u);
  EXPECT_EQ(step.next.clusters[0].center, 1u);
  EXPECT_EQ(step.next.clusters[0].members, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(step.star_edges.size(), 2u);
  EXPECT_TRUE(step.unclustered.empty());
  for (const auto& e : step.star_edges) EXPECT_EQ(e.w, w(5));
}

TEST(Supercluster, NothingSampledLeavesEveryClusterUnclustered) {
  const auto g = WeightedAdjacency::from_graph(oracle::unit_path(6), 1);
  const ClusterSampler never = [](std::uint32_t, const Cluster&) { return false; };
  const auto step = supercluster_phase(g, singleton_partition(6), 0, w(100), never);
  EXPECT_TRUE(step.next.clusters.empty());
  EXPECT_EQ(step.unclustered.size(), 6u);
  EXPECT_TRUE(step.star_edges.empty());
}

TEST(Interconnect, SingleClusterEmitsNothing) {
  const auto g = WeightedAdjacency::from_graph(oracle::unit_path(4), 1);
  const std::vector<Cluster> one{{2, {2}}};
  EXPECT_TRUE(interconnect_phase(g, one, 0, w(10)).empty());
}

TEST(Interconnect, RadiusIsInclusive) {
  const auto g = WeightedAdjacency::from_graph(Graph::from_edges(2, {{0, 1, 6}}), 1);
  const std::vector<Cluster> both{{0, {0}}, {1, {1}}};
  EXPECT_EQ(interconnect_phase(g, both, 0, w(6)).size(), 1u);
  EXPECT_TRUE(interconnect_phase(g, both, 0, w(5)).empty());
}

TEST(Interconnect, UnitPathPairsWithinRadius) {
  const auto g = WeightedAdjacency::from_graph(oracle::unit_path(10), 1);
  std::vector<Cluster> all;
  for (Vertex v = 0; v < 10; ++v) all.push_back({v, {v}});
  const auto edges = interconnect_phase(g, all, 0, w(3));
  std::set<std::pair<Vertex, Vertex>> got;
  for (const auto& e : edges) {
    EXPECT_EQ(e.w, w(e.v - e.u));
    got.insert({e.u, e.v});
  }
  std::set<std::pair<Vertex, Vertex>> expected;
  for (Vertex a = 0; a < 10; ++a)
    for (Vertex b = a + 1; b < 10 && b - a <= 3; ++b) expected.insert({a, b});
  EXPECT_EQ(got, expected);
  EXPECT_EQ(edges.size(), expected.size());
}

TEST(SingleScale, HeavyEdgeBeyondEveryThreshold) {
  const auto g = WeightedAdjacency::from_graph(Graph::from_edges(2, {{0, 1, 1000000}}), 1);
  const auto h = build_single_scale(g, schedule_for(2, 1), 1, 1);
  EXPECT_TRUE(h.edges.empty());
}

TEST(SingleScale, StarGraphInterconnectsAtExactDistances) {
  std::vector<Edge> edges;
  for (Vertex v = 1; v <= 5; ++v) edges.push_back({0, v, 1});
  const Graph graph = Graph::from_edges(6, edges);
  const auto sched = schedule_for(6, 10);
  ASSERT_GE(sched.delta[0] / 2, 2);
  SingleScaleOptions opt;
  opt.sampler = [](std::uint32_t, const Cluster&) { return false; };
  const auto h = build_single_scale(WeightedAdjacency::from_graph(graph, 1), sched, 1, 1, opt);
  const auto d = oracle::floyd_warshall(graph);
  EXPECT_EQ(h.edges.size(), 15u);
  for (const auto& e : h.edges) {
    EXPECT_EQ(e.kind, EdgeKind::interconnect);
    EXPECT_EQ(e.phase, 0u);
    EXPECT_EQ(e.w.raw(), d[e.u][e.v]);
  }
}

TEST(SingleScale, EdgeWeightsAreExactDistances) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Graph graph = oracle::er(80, 0.08, 1, 8, seed);
    const auto d = oracle::floyd_warshall(graph);
    const auto h = build_single_scale(WeightedAdjacency::from_graph(graph, 1), schedule_for(80, 5), 1, seed);
    for (const auto& e : h.edges) {
      EXPECT_LT(e.u, e.v);
      EXPECT_EQ(e.w.raw(), d[e.u][e.v]);
    }
  }
}

TEST(SingleScale, ClustersStayWithinRadius) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph graph = oracle::er(120, 0.05, 1, 4, seed);
    const auto d = oracle::floyd_warshall(graph);
    const auto sched = schedule_for(120, 6);
    SingleScaleOptions opt;
    opt.keep_partitions = true;
    const auto h = build_single_scale(WeightedAdjacency::from_graph(graph, 1), sched, 1, seed, opt);
    ASSERT_EQ(h.partitions.size(), static_cast<std::size_t>(sched.ell + 1));
    for (std::size_t i = 0; i < h.partitions.size(); ++i) {
      std::set<Vertex> seen;
      for (const auto& c : h.partitions[i].clusters) {
        EXPECT_TRUE(std::binary_search(c.members.begin(), c.members.end(), c.center));
        for (Vertex x : c.members) {
          EXPECT_TRUE(seen.insert(x).second) << "vertex " << x << " in two clusters";
          EXPECT_LE(Rational(to_bigint(d[c.center][x])), sched.radius[i]);
        }
      }
    }
  }
}

TEST(SingleScale, LaterPartitionsCoarsenEarlierOnes) {
  const Graph graph = oracle::er(150, 0.04, 1, 3, 9);
  SingleScaleOptions opt;
  opt.keep_partitions = true;
  const auto h = build_single_scale(WeightedAdjacency::from_graph(graph, 1), schedule_for(150, 6), 1, 9, opt);
  for (std::size_t i = 0; i + 1 < h.partitions.size(); ++i) {
    std::map<Vertex, Vertex> owner;
    for (const auto& c : h.partitions[i + 1].clusters)
      for (Vertex x : c.members) owner[x] = c.center;
    for (const auto& c : h.partitions[i].clusters) {
      if (!owner.count(c.center)) continue;
      for (Vertex x : c.members) EXPECT_EQ(owner[x], owner[c.center]);
    }
  }
}

TEST(SingleScale, StarEdgesFormAForestPerPhase) {
  const Graph graph = oracle::er(200, 0.03, 1, 5, 2);
  const auto h = build_single_scale(WeightedAdjacency::from_graph(graph, 1), schedule_for(200, 6), 1, 2);
  std::map<std::uint32_t, std::map<Vertex, Vertex>> parent;
  for (const auto& e : h.edges) {
    if (e.kind != EdgeKind::supercluster) continue;
    EXPECT_TRUE(parent[e.phase].emplace(e.v, e.u).second) << "cluster absorbed twice";
  }
  for (const auto& [phase, links] : parent)
    for (const auto& [child, root] : links) EXPECT_EQ(links.count(root), 0u) << "star of depth > 1";
}

TEST(SingleScale, Deterministic) {
  const Graph graph = oracle::er(100, 0.06, 1, 8, 4);
  const auto g = WeightedAdjacency::from_graph(graph, 1);
  const auto a = build_single_scale(g, schedule_for(100, 6), 1, 17);
  const auto b = build_single_scale(g, schedule_for(100, 6), 1, 17);
  ASSERT_EQ(a.edges.size(), b.edges.size());
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    EXPECT_EQ(a.edges[i].u, b.edges[i].u);
    EXPECT_EQ(a.edges[i].v, b.edges[i].v);
    EXPECT_EQ(a.edges[i].w, b.edges[i].w);
    EXPECT_EQ(a.edges[i].kind, b.edges[i].kind);
    EXPECT_EQ(a.edges[i].phase, b.edges[i].phase);
  }
}

TEST(SingleScale, RoutesAreShortestPaths) {
  const Graph graph = oracle::er(60, 0.1, 1, 9, 6);
  SingleScaleOptions opt;
  opt.record_routes = true;
  const auto h = build_single_scale(WeightedAdjacency::from_graph(graph, 1), schedule_for(60, 5), 1, 6, opt);
  for (const auto& e : h.edges) {
    ASSERT_GE(e.route.size(), 2u);
    EXPECT_EQ(e.route.front(), e.u);
    EXPECT_EQ(e.route.back(), e.v);
    Int128 sum = 0;
    for (std::size_t i = 0; i + 1 < e.route.size(); ++i) sum += *graph.edge_weight(e.route[i], e.route[i + 1]);
    EXPECT_EQ(sum, e.w.raw());
  }
}

TEST(SingleScale, SampledFractionTracksDegree) {
  const auto sched = schedule_for(256, 5);
  double sampled = 0;
  const int runs = 60;
  for (int seed = 1; seed <= runs; ++seed) {
    const Graph graph = oracle::er(256, 0.05, 1, 8, static_cast<std::uint64_t>(seed));
    const auto h = build_single_scale(WeightedAdjacency::from_graph(graph, 1), sched, 1, static_cast<std::uint64_t>(seed));
    sampled += static_cast<double>(h.phases[0].sampled);
  }
  const double expected = 256.0 / sched.deg[0];
  EXPECT_NEAR(sampled / runs, expected, 0.2 * expected);
}

TEST(SingleScale, ParticipatingMaskRestrictsVertices) {
  const Graph graph = oracle::unit_path(8);
  SingleScaleOptions opt;
  opt.participating = {1, 0, 1, 0, 1, 0, 1, 0};
  opt.sampler = [](std::uint32_t, const Cluster&) { return false; };
  const auto h = build_single_scale(WeightedAdjacency::from_graph(graph, 1), schedule_for(8, 8), 1, 1, opt);
  EXPECT_EQ(h.participating, 4u);
  for (const auto& e : h.edges) {
    EXPECT_EQ(e.u % 2, 0u);
    EXPECT_EQ(e.v % 2, 0u);
  }
}

// Band guarantee on a pure single-scale hopset: pairs at distance in
// (2^k, 2^{k+1}] reach (1 + zeta) d within beta hops.
TEST(SingleScale, BandContractOnRandomGraph) {
  const Graph graph = oracle::er(100, 0.1, 1, 8, 5);
  const auto d = oracle::floyd_warshall(graph);
  for (int k : relevant_scales(graph)) {
    const auto sched = schedule_for(100, k);
    const auto h = build_single_scale(WeightedAdjacency::from_graph(graph, 1), sched, 1, 5);
    const auto extra = as_extra(h);
    const Rational bound = 1 + sched.zeta();
    for (Vertex s = 0; s < 100; s += 9) {
      const auto lim = oracle::hop_limited(graph, 1, extra, s, sched.beta);
      for (Vertex v = 0; v < 100; ++v) {
        const Int128 dg = d[s][v];
        if (dg <= (Int128{1} << k) || dg > (Int128{1} << (k + 1))) continue;
        EXPECT_LT(lim[v], oracle::kInf);
        EXPECT_LE(Rational(to_bigint(lim[v])), bound * Rational(to_bigint(dg)));
      }
    }
  }
}

// A long unit path with a coarse internal epsilon: beta is far below the band
// distance, so G alone fails and the hopset has to carry the pairs.
TEST(SingleScale, HopsetShortensLongPath) {
  const std::size_t n = 2049;
  const int k = 10;
  const Graph graph = oracle::unit_path(n);
  const auto sched = compute_schedule(n, 2, Rational(1, 2), Rational(9, 100), Rational(BigInt(1) << (k + 1)));
  ASSERT_LT(sched.beta, std::uint64_t{1} << k);
  const Rational bound = 1 + sched.zeta();
  std::size_t without = 0;
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto h = build_single_scale(WeightedAdjacency::from_graph(graph, 1), sched, 1, seed);
    const auto extra = as_extra(h);
    for (Vertex s : {Vertex{0}, Vertex{300}, Vertex{1024}, Vertex{2048}}) {
      const auto plain = oracle::hop_limited(graph, 1, {}, s, sched.beta);
      const auto lim = oracle::hop_limited(graph, 1, extra, s, sched.beta);
      for (Vertex v = 0; v < n; ++v) {
        const Int128 dg = v > s ? v - s : s - v;
        if (dg <= (Int128{1} << k) || dg > (Int128{1} << (k + 1))) continue;
        ++checked;
        if (plain[v] >= oracle::kInf) ++without;
        ASSERT_LT(lim[v], oracle::kInf) << "seed " << seed << " pair " << s << "," << v;
        EXPECT_LE(Rational(to_bigint(lim[v])), bound * Rational(to_bigint(dg)));
      }
    }
  }
  EXPECT_GT(checked, 0u);
  EXPECT_EQ(without, checked);
}
