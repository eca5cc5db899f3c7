#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <functional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hopsets/errors.hpp"
#include "hopsets/weight.hpp"

namespace hopsets {

// Internal vertex ids are 0-based and contiguous; files use 1-based ids.
using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

using EdgeWeight = std::int64_t;
inline constexpr EdgeWeight kMaxEdgeWeight = EdgeWeight{1} << 62;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  EdgeWeight w = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  Vertex to = 0;
  std::uint32_t edge = 0;  // index into Graph::edges()

  friend bool operator==(const Incidence&, const Incidence&) = default;
};

// Undirected graph with positive integer weights. Immutable once built.
class Graph {
 public:
  Graph() = default;

  // Canonicalizes the edge list: endpoints ordered u < v, self-loops dropped,
  // parallel edges collapsed to the minimum weight, edges sorted by (u, v).
  static Graph from_edges(std::size_t n, std::vector<Edge> edges) {
    if (n > std::numeric_limits<Vertex>::max() - 1) throw ParameterError("too many vertices");
    for (auto& e : edges) {
      if (e.u >= n || e.v >= n)
        throw ParameterError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") has an endpoint outside [0," +
                             std::to_string(n) + ")");
      if (e.w < 1) throw ParameterError("edge weight " + std::to_string(e.w) + " < 1");
      if (e.w > kMaxEdgeWeight) throw ParameterError("edge weight " + std::to_string(e.w) + " exceeds 2^62");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
    });
    edges.erase(std::unique(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
                edges.end());

    Graph g;
    g.n_ = n;
    g.adjacency_.assign(n, {});
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      g.adjacency_[edges[i].u].push_back({edges[i].v, i});
      g.adjacency_[edges[i].v].push_back({edges[i].u, i});
    }
    for (auto& list : g.adjacency_)
      std::sort(list.begin(), list.end(), [](const Incidence& a, const Incidence& b) { return a.to < b.to; });
    g.edges_ = std::move(edges);
    return g;
  }

  // No canonicalization or checking; validate() reports what is wrong.
  static Graph unchecked(std::size_t n, std::vector<Edge> edges, std::vector<std::vector<Incidence>> adjacency) {
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adjacency_ = std::move(adjacency);
    return g;
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::uint32_t index) const { return edges_[index]; }
  std::span<const Incidence> neighbors(Vertex v) const { return adjacency_[v]; }
  const std::vector<std::vector<Incidence>>& adjacency() const { return adjacency_; }

  std::optional<EdgeWeight> edge_weight(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return std::nullopt;
    const auto& list = adjacency_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v, [](const Incidence& inc, Vertex x) { return inc.to < x; });
    if (it == list.end() || it->to != v) return std::nullopt;
    return edges_[it->edge].w;
  }

  EdgeWeight max_weight() const {
    EdgeWeight out = 0;
    for (const auto& e : edges_) out = std::max(out, e.w);
    return out;
  }

  // FNV-1a over (n, canonical edge list). Stable across platforms.
  std::uint64_t digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t x) {
      for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
      }
    };
    mix(n_);
    mix(edges_.size());
    for (const auto& e : edges_) {
      mix(e.u);
      mix(e.v);
      mix(static_cast<std::uint64_t>(e.w));
    }
    return h;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

struct Violation {
  std::string invariant;
  std::string detail;
};

inline std::vector<Violation> validate(const Graph& g) {
  std::vector<Violation> out;
  const auto n = g.vertex_count();
  const auto edges = g.edges();
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const std::string where = "edge " + std::to_string(i) + " (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
    if (e.w < 1) out.push_back({"weight-positivity", where + " has weight " + std::to_string(e.w)});
    if (e.u >= n || e.v >= n) {
      out.push_back({"vertex-range", where + " references a vertex outside [0," + std::to_string(n) + ")"});
      continue;
    }
    if (e.u == e.v) out.push_back({"no-self-loops", where});
    pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i)
    if (pairs[i] == pairs[i - 1])
      out.push_back({"simple-graph", "parallel edges between " + std::to_string(pairs[i].first) + " and " +
                                         std::to_string(pairs[i].second)});

  const auto& adj = g.adjacency();
  if (adj.size() != n) {
    out.push_back({"adjacency-consistency", "adjacency has " + std::to_string(adj.size()) + " lists for " +
                                                std::to_string(n) + " vertices"});
    return out;
  }
  std::vector<std::uint32_t> seen(edges.size(), 0);
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& inc : adj[v]) {
      if (inc.edge >= edges.size()) {
        out.push_back({"adjacency-consistency", "vertex " + std::to_string(v) + " lists unknown edge " +
                                                    std::to_string(inc.edge)});
        continue;
      }
      const auto& e = edges[inc.edge];
      const bool matches = (e.u == v && e.v == inc.to) || (e.v == v && e.u == inc.to);
      if (!matches) {
        out.push_back({"adjacency-consistency", "vertex " + std::to_string(v) + " lists edge " +
                                                    std::to_string(inc.edge) + " toward " + std::to_string(inc.to) +
                                                    " but the edge does not join them"});
        continue;
      }
      ++seen[inc.edge];
    }
  }
  for (std::uint32_t i = 0; i < edges.size(); ++i)
    if (seen[i] != 2 && edges[i].u != edges[i].v)
      out.push_back({"adjacency-consistency", "edge " + std::to_string(i) + " appears " + std::to_string(seen[i]) +
                                                  " times in endpoint lists (expected 2)"});
  return out;
}

// Connected component id per vertex, numbered in order of smallest member.
inline std::vector<std::uint32_t> connected_components(const Graph& g) {
  const auto n = g.vertex_count();
  std::vector<std::uint32_t> comp(n, kNoVertex);
  std::vector<Vertex> stack;
  std::uint32_t next = 0;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] != kNoVertex) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (const auto& inc : g.neighbors(v))
        if (comp[inc.to] == kNoVertex) {
          comp[inc.to] = next;
          stack.push_back(inc.to);
        }
    }
    ++next;
  }
  return comp;
}

// Upper bound on any finite distance: the sum of the n-1 largest weights.
inline Int128 distance_upper_bound(const Graph& g) {
  std::vector<EdgeWeight> weights;
  weights.reserve(g.edge_count());
  for (const auto& e : g.edges()) weights.push_back(e.w);
  std::sort(weights.begin(), weights.end(), std::greater<>());
  const std::size_t take = std::min(weights.size(), g.vertex_count() == 0 ? 0 : g.vertex_count() - 1);
  Int128 sum = 0;
  for (std::size_t i = 0; i < take; ++i) sum += weights[i];
  return sum;
}

}  // namespace hopsets
