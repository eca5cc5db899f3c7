#pragma once

// Independent reference computations for tests. Nothing here calls the
// library's exploration code.

#include <limits>
#include <optional>
#include <vector>

#include "hopsets/hopsets.hpp"

namespace oracle {

using hopsets::Int128;
inline constexpr Int128 kInf = std::numeric_limits<Int128>::max() / 4;

// Floyd-Warshall over integer weights scaled by `den`, with extra edges given
// in the same units.
inline std::vector<std::vector<Int128>> floyd_warshall(const hopsets::Graph& g, Int128 den = 1,
                                                       const std::vector<hopsets::ExtraEdge>& extra = {}) {
  const auto n = g.vertex_count();
  std::vector<std::vector<Int128>> d(n, std::vector<Int128>(n, kInf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  auto relax = [&](std::size_t a, std::size_t b, Int128 w) {
    if (w < d[a][b]) d[a][b] = d[b][a] = w;
  };
  for (const auto& e : g.edges()) relax(e.u, e.v, static_cast<Int128>(e.w) * den);
  for (const auto& e : extra) relax(e.u, e.v, e.w.raw());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i][k] >= kInf) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (d[k][j] < kInf && d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    }
  return d;
}

// t-limited distances from `s` by the textbook DP over an explicit edge list.
inline std::vector<Int128> hop_limited(const hopsets::Graph& g, Int128 den, const std::vector<hopsets::ExtraEdge>& extra,
                                       hopsets::Vertex s, std::uint64_t t) {
  const auto n = g.vertex_count();
  struct Arc {
    std::size_t a, b;
    Int128 w;
  };
  std::vector<Arc> arcs;
  for (const auto& e : g.edges()) arcs.push_back({e.u, e.v, static_cast<Int128>(e.w) * den});
  for (const auto& e : extra) arcs.push_back({e.u, e.v, e.w.raw()});
  std::vector<Int128> cur(n, kInf);
  cur[s] = 0;
  for (std::uint64_t r = 0; r < t; ++r) {
    std::vector<Int128> next = cur;
    for (const auto& a : arcs) {
      if (cur[a.a] < kInf) next[a.b] = std::min(next[a.b], cur[a.a] + a.w);
      if (cur[a.b] < kInf) next[a.a] = std::min(next[a.a], cur[a.b] + a.w);
    }
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

inline Int128 raw_or_inf(hopsets::WeightValue w) { return w.is_infinite() ? kInf : w.raw(); }

inline hopsets::Graph unit_path(std::size_t n) {
  std::vector<hopsets::Edge> edges;
  for (hopsets::Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1});
  return hopsets::Graph::from_edges(n, edges);
}

inline hopsets::Graph er(std::size_t n, double p, hopsets::EdgeWeight wmin, hopsets::EdgeWeight wmax,
                         std::uint64_t seed) {
  return hopsets::generate_graph(hopsets::ErdosRenyi{n, p, wmin, wmax}, seed);
}

}  // namespace oracle
