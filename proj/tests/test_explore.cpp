#include <gtest/gtest.h>

#include <numeric>

#include "hopsets/explore.hpp"
#include "hopsets/generators.hpp"
#include "hopsets/rng.hpp"
#include "support.hpp"

using namespace hopsets;

namespace {

WeightValue w(Int128 x) { return WeightValue::from_raw(x); }

}  // namespace

TEST(MultiSource, DepthCutsOffThePath) {
  const auto g = WeightedAdjacency::from_graph(oracle::unit_path(3), 1);
  const Vertex roots[] = {0};
  const auto f = bounded_multisource_dijkstra(g, roots, w(1));
  EXPECT_EQ(f.dist[0], w(0));
  EXPECT_EQ(f.dist[1], w(1));
  EXPECT_FALSE(f.reached(2));
}

TEST(MultiSource, SymmetricTieGoesToLowerRoot) {
  const auto g = WeightedAdjacency::from_graph(oracle::unit_path(3), 1);
  const Vertex roots[] = {2, 0};
  const auto f = bounded_multisource_dijkstra(g, roots, w(1));
  EXPECT_EQ(f.dist[1], w(1));
  EXPECT_EQ(f.root[1], 0u);
  EXPECT_EQ(f.parent[1], 0u);
}

TEST(MultiSource, AgreesWithPerRootMinimum) {
  const Graph graph = oracle::er(50, 0.2, 1, 10, 3);
  const auto g = WeightedAdjacency::from_graph(graph, 1);
  Rng rng = make_rng(3, 99);
  std::vector<Vertex> roots;
  while (roots.size() < 5) {
    const auto r = static_cast<Vertex>(uniform_below(rng, 50));
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  const auto f = bounded_multisource_dijkstra(g, roots, w(20));
  const auto apsp = oracle::floyd_warshall(graph);
  for (Vertex v = 0; v < 50; ++v) {
    Int128 best = oracle::kInf;
    Vertex best_root = kNoVertex;
    for (Vertex r : roots)
      if (apsp[r][v] < best || (apsp[r][v] == best && r < best_root)) {
        best = apsp[r][v];
        best_root = r;
      }
    if (best <= 20) {
      ASSERT_TRUE(f.reached(v));
      EXPECT_EQ(f.dist[v].raw(), best);
      EXPECT_EQ(f.root[v], best_root);
    } else {
      EXPECT_FALSE(f.reached(v));
    }
  }
}

TEST(MultiSource, ParentChainsSumToDistance) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph graph = oracle::er(40, 0.15, 1, 30, seed);
    const auto g = WeightedAdjacency::from_graph(graph, 1);
    const Vertex roots[] = {0, 7, 19};
    const auto f = bounded_multisource_dijkstra(g, roots, w(60));
    for (Vertex v = 0; v < 40; ++v) {
      if (!f.reached(v)) continue;
      const auto path = f.path_from_root(v);
      EXPECT_EQ(path.front(), f.root[v]);
      Int128 sum = 0;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) sum += *graph.edge_weight(path[i], path[i + 1]);
      EXPECT_EQ(sum, f.dist[v].raw());
    }
  }
}

TEST(SingleSource, DepthBoundaryIsInclusive) {
  const auto g = WeightedAdjacency::from_graph(Graph::from_edges(2, {{0, 1, 5}}), 1);
  auto r = bounded_dijkstra_single(g, 0, w(4));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0], std::make_pair(Vertex{0}, w(0)));
  r = bounded_dijkstra_single(g, 0, w(5));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1], std::make_pair(Vertex{1}, w(5)));
}

TEST(SingleSource, TwoHopsBeatHeavyEdge) {
  const Graph graph = Graph::from_edges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 3}});
  const auto g = WeightedAdjacency::from_graph(graph, 1);
  DijkstraWorkspace ws(3);
  ws.run(g, 0, w(2));
  EXPECT_EQ(ws.dist(2), w(2));
  EXPECT_EQ(ws.path_to(2), (std::vector<Vertex>{0, 1, 2}));
}

TEST(SingleSource, WorkspaceReuseMatchesFreshRuns) {
  const Graph graph = oracle::er(60, 0.1, 1, 20, 11);
  const auto g = WeightedAdjacency::from_graph(graph, 1);
  DijkstraWorkspace ws(60);
  std::vector<std::uint64_t> visits(60, 0);
  std::uint64_t expected_visits = 0;
  for (Vertex s = 0; s < 60; ++s) {
    ws.run(g, s, w(25), visits);
    const auto fresh = bounded_dijkstra_single(g, s, w(25));
    expected_visits += fresh.size();
    for (const auto& [v, d] : fresh) EXPECT_EQ(ws.dist(v), d);
    EXPECT_EQ(ws.reached().size(), fresh.size());
  }
  EXPECT_EQ(std::accumulate(visits.begin(), visits.end(), std::uint64_t{0}), expected_visits);
}

TEST(HopLimited, PathNeedsTwoHops) {
  const Graph g = oracle::unit_path(3);
  const Vertex src[] = {0};
  EXPECT_TRUE(hop_limited_bellman_ford(g, 1, {}, src, 1).distance(0, 2).is_infinite());
  EXPECT_EQ(hop_limited_bellman_ford(g, 1, {}, src, 2).distance(0, 2), w(2));
}

TEST(HopLimited, FullBudgetEqualsDijkstra) {
  const Graph g = oracle::er(30, 0.3, 1, 5, 1);
  const auto adj = WeightedAdjacency::from_graph(g, 1);
  std::vector<Vertex> src(30);
  std::iota(src.begin(), src.end(), 0);
  const auto table = hop_limited_bellman_ford(g, 1, {}, src, 29);
  for (Vertex s = 0; s < 30; ++s) EXPECT_EQ(table.rows[s].dist, shortest_distances(adj, s));
}

TEST(HopLimited, MatchesBruteForceDpWithExtraEdges) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Graph g = oracle::er(25, 0.12, 1, 9, seed);
    Rng rng = make_rng(seed, 5);
    std::vector<ExtraEdge> extra;
    for (int i = 0; i < 15; ++i) {
      const auto a = static_cast<Vertex>(uniform_below(rng, 25));
      const auto b = static_cast<Vertex>(uniform_below(rng, 25));
      if (a != b) extra.push_back({a, b, w(static_cast<Int128>(uniform_int(rng, 3, 60)))});
    }
    const Int128 den = 3;
    for (std::uint64_t t : {1u, 2u, 3u, 5u, 8u}) {
      const Vertex src[] = {0, 4, 13};
      const auto table = hop_limited_bellman_ford(g, den, extra, src, t);
      for (const auto& row : table.rows) {
        const auto expected = oracle::hop_limited(g, den, extra, row.source, t);
        for (Vertex v = 0; v < 25; ++v) EXPECT_EQ(oracle::raw_or_inf(row.dist[v]), expected[v]);
      }
    }
  }
}

TEST(HopLimited, MonotoneInBudget) {
  const Graph g = oracle::er(40, 0.08, 1, 50, 21);
  const Vertex src[] = {3};
  std::vector<WeightValue> prev(40, WeightValue::infinity());
  for (std::uint64_t t = 1; t <= 39; ++t) {
    const auto row = hop_limited_bellman_ford(g, 1, {}, src, t).rows[0];
    for (Vertex v = 0; v < 40; ++v) EXPECT_LE(row.dist[v], prev[v]);
    prev = row.dist;
  }
}

TEST(HopLimited, PredecessorsRebuildTheDistance) {
  const Graph g = oracle::er(30, 0.15, 1, 20, 8);
  const std::vector<ExtraEdge> extra{{0, 29, w(7)}, {5, 17, w(3)}};
  const UnionAdjacency u(g, 1, extra);
  const auto row = hop_limited_row(u, 0, 4);
  for (Vertex v = 1; v < 30; ++v) {
    if (row.dist[v].is_infinite()) continue;
    Int128 sum = 0;
    std::size_t hops = 0;
    for (Vertex cur = v; cur != 0; cur = row.pred[cur].prev) {
      const auto& p = row.pred[cur];
      ASSERT_NE(p.prev, kNoVertex);
      sum += p.kind == ArcKind::graph ? static_cast<Int128>(g.edge(p.index).w) : extra[p.index].w.raw();
      ASSERT_LE(++hops, 30u);
    }
    EXPECT_LE(sum, row.dist[v].raw());
  }
}

TEST(HopLimited, UnknownSourceIsAnError) {
  const Graph g = oracle::unit_path(3);
  const Vertex src[] = {0};
  EXPECT_THROW(hop_limited_bellman_ford(g, 1, {}, src, 2).row_for(1), ParameterError);
}
