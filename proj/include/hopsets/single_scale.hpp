#pragma once

// Single-scale hopset H_k for the distance band (R/2, R], R = 2^{k+1}.
//
// Phases 0..ell-1 each run a superclustering step (sample clusters, grow
// superclusters around the sampled centers with one multi-source Dijkstra to
// depth delta_i) followed by an interconnection step (every cluster left
// unclustered explores to delta_i/2 and links to the other unclustered
// centers it reaches). Phase ell only interconnects. Every emitted edge
// carries the exact Dijkstra distance between its endpoints.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hopsets/explore.hpp"
#include "hopsets/rng.hpp"
#include "hopsets/schedule.hpp"

namespace hopsets {

enum class EdgeKind : std::uint8_t { supercluster = 0, interconnect = 1, node_star = 2 };

inline const char* to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::supercluster: return "supercluster";
    case EdgeKind::interconnect: return "interconnect";
    case EdgeKind::node_star: return "node-star";
  }
  return "?";
}

inline EdgeKind parse_edge_kind(const std::string& text) {
  if (text == "supercluster") return EdgeKind::supercluster;
  if (text == "interconnect") return EdgeKind::interconnect;
  if (text == "node-star") return EdgeKind::node_star;
  throw ParseError(0, "unknown edge kind '" + text + "'");
}

struct ScaleEdge {
  Vertex u = 0;
  Vertex v = 0;
  WeightValue w;
  EdgeKind kind = EdgeKind::interconnect;
  std::uint32_t phase = 0;
  std::vector<Vertex> route;  // u, ..., v in the construction graph (when recorded)
};

struct Cluster {
  Vertex center = 0;
  std::vector<Vertex> members;
};

struct ClusterPartition {
  std::uint32_t phase = 0;
  std::vector<Cluster> clusters;  // ascending center id
};

// Singleton clusters over the participating vertices (all when empty).
inline ClusterPartition singleton_partition(std::size_t n, std::span<const char> participating = {}) {
  ClusterPartition p;
  for (Vertex v = 0; v < n; ++v)
    if (participating.empty() || participating[v]) p.clusters.push_back({v, {v}});
  return p;
}

struct PhaseStats {
  std::uint32_t phase = 0;
  std::size_t clusters = 0;  // |P_i|
  std::size_t sampled = 0;
  std::size_t superclustered = 0;
  std::size_t unclustered = 0;
  std::size_t star_edges = 0;
  std::size_t interconnect_edges = 0;
  std::uint64_t interconnect_visits = 0;  // summed over vertices
  std::uint64_t max_vertex_visits = 0;
  double deg = 0.0;  // 0 for the concluding phase
};

// Called once per cluster, in ascending center order.
using ClusterSampler = std::function<bool(std::uint32_t phase, const Cluster&)>;

inline ClusterSampler bernoulli_sampler(const PhaseSchedule& schedule, Rng& rng) {
  return [&schedule, &rng](std::uint32_t phase, const Cluster&) { return bernoulli(rng, 1.0 / schedule.deg.at(phase)); };
}

struct SuperclusterStep {
  ClusterPartition next;
  std::vector<ScaleEdge> star_edges;
  std::vector<Cluster> unclustered;
  std::size_t sampled = 0;
};

inline SuperclusterStep supercluster_phase(const WeightedAdjacency& g, const ClusterPartition& state, std::uint32_t phase,
                                           WeightValue depth, const ClusterSampler& sample, bool record_routes = false) {
  SuperclusterStep step;
  std::vector<char> is_sampled(state.clusters.size(), 0);
  std::vector<Vertex> roots;
  for (std::size_t c = 0; c < state.clusters.size(); ++c)
    if (sample(phase, state.clusters[c])) {
      is_sampled[c] = 1;
      roots.push_back(state.clusters[c].center);
    }
  step.sampled = roots.size();

  const ExplorationForest forest = bounded_multisource_dijkstra(g, roots, depth);
  std::vector<std::uint32_t> slot(g.vertex_count(), kNoVertex);
  for (std::size_t c = 0; c < state.clusters.size(); ++c)
    if (is_sampled[c]) {
      slot[state.clusters[c].center] = static_cast<std::uint32_t>(step.next.clusters.size());
      step.next.clusters.push_back(state.clusters[c]);
    }
  for (std::size_t c = 0; c < state.clusters.size(); ++c) {
    if (is_sampled[c]) continue;
    const Cluster& cluster = state.clusters[c];
    if (!forest.reached(cluster.center)) {
      step.unclustered.push_back(cluster);
      continue;
    }
    const Vertex root = forest.root[cluster.center];
    auto& target = step.next.clusters[slot[root]].members;
    target.insert(target.end(), cluster.members.begin(), cluster.members.end());
    ScaleEdge e{root, cluster.center, forest.dist[cluster.center], EdgeKind::supercluster, phase, {}};
    if (record_routes) e.route = forest.path_from_root(cluster.center);
    step.star_edges.push_back(std::move(e));
  }
  for (auto& cl : step.next.clusters) std::sort(cl.members.begin(), cl.members.end());
  step.next.phase = phase + 1;
  return step;
}

// Links every pair of unclustered centers within `radius` of each other once.
// visits[v] counts the explorations that reach v.
inline std::vector<ScaleEdge> interconnect_phase(const WeightedAdjacency& g, std::span<const Cluster> unclustered,
                                                 std::uint32_t phase, WeightValue radius,
                                                 std::span<std::uint64_t> visits = {}, bool record_routes = false) {
  std::vector<ScaleEdge> edges;
  if (unclustered.empty()) return edges;
  std::vector<char> is_center(g.vertex_count(), 0);
  for (const auto& c : unclustered) is_center[c.center] = 1;
  DijkstraWorkspace ws(g.vertex_count());
  for (const auto& c : unclustered) {
    ws.run(g, c.center, radius, visits);
    const std::size_t first = edges.size();
    for (Vertex v : ws.reached()) {
      if (!is_center[v] || v <= c.center) continue;
      ScaleEdge e{c.center, v, ws.dist(v), EdgeKind::interconnect, phase, {}};
      if (record_routes) e.route = ws.path_to(v);
      edges.push_back(std::move(e));
    }
    std::sort(edges.begin() + static_cast<std::ptrdiff_t>(first), edges.end(),
              [](const ScaleEdge& a, const ScaleEdge& b) { return a.v < b.v; });
  }
  return edges;
}

struct SingleScaleOptions {
  bool record_routes = false;
  bool keep_partitions = false;     // retain P_0 .. P_ell for inspection
  std::vector<char> participating;  // empty = every vertex
  ClusterSampler sampler;           // empty = Bernoulli(1/deg_i) from the seed
};

struct SingleScaleHopset {
  int scale = 0;
  std::vector<ScaleEdge> edges;
  std::vector<PhaseStats> phases;
  std::vector<ClusterPartition> partitions;
  std::size_t participating = 0;
};

inline SingleScaleHopset build_single_scale(const WeightedAdjacency& g, const PhaseSchedule& schedule, Int128 denominator,
                                            std::uint64_t seed, const SingleScaleOptions& options = {}, int scale = 0) {
  const auto n = g.vertex_count();
  SingleScaleHopset out;
  out.scale = scale;
  Rng rng(derive_seed(seed, 0x73616d70));
  const ClusterSampler sampler = options.sampler ? options.sampler : bernoulli_sampler(schedule, rng);

  ClusterPartition partition = singleton_partition(n, options.participating);
  out.participating = partition.clusters.size();
  std::vector<std::uint64_t> visits(n, 0);
  auto count_visits = [&](PhaseStats& stats) {
    stats.interconnect_visits = std::accumulate(visits.begin(), visits.end(), std::uint64_t{0});
    stats.max_vertex_visits = visits.empty() ? 0 : *std::max_element(visits.begin(), visits.end());
  };

  for (int i = 0; i < schedule.ell; ++i) {
    const auto phase = static_cast<std::uint32_t>(i);
    if (options.keep_partitions) out.partitions.push_back(partition);
    PhaseStats stats;
    stats.phase = phase;
    stats.clusters = partition.clusters.size();
    stats.deg = schedule.deg.at(i);

    SuperclusterStep step = supercluster_phase(g, partition, phase, schedule.superclustering_depth(i, denominator),
                                               sampler, options.record_routes);
    stats.sampled = step.sampled;
    stats.superclustered = step.star_edges.size();
    stats.unclustered = step.unclustered.size();
    stats.star_edges = step.star_edges.size();

    std::fill(visits.begin(), visits.end(), 0);
    auto links = interconnect_phase(g, step.unclustered, phase, schedule.interconnection_depth(i, denominator), visits,
                                    options.record_routes);
    stats.interconnect_edges = links.size();
    count_visits(stats);

    for (auto& e : step.star_edges) out.edges.push_back(std::move(e));
    for (auto& e : links) out.edges.push_back(std::move(e));
    out.phases.push_back(stats);
    partition = std::move(step.next);
  }

  // Concluding phase: every remaining cluster interconnects.
  if (options.keep_partitions) out.partitions.push_back(partition);
  PhaseStats stats;
  stats.phase = static_cast<std::uint32_t>(schedule.ell);
  stats.clusters = partition.clusters.size();
  stats.unclustered = partition.clusters.size();
  std::fill(visits.begin(), visits.end(), 0);
  auto links = interconnect_phase(g, partition.clusters, stats.phase,
                                  schedule.interconnection_depth(schedule.ell, denominator), visits, options.record_routes);
  stats.interconnect_edges = links.size();
  count_visits(stats);
  for (auto& e : links) out.edges.push_back(std::move(e));
  out.phases.push_back(stats);
  return out;
}

}  // namespace hopsets
