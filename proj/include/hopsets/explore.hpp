#pragma once

// Exploration primitives: depth-bounded Dijkstra (multi-source and
// single-source) and exact hop-limited Bellman-Ford. All distances are exact
// WeightValues; depth bounds are inclusive.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "hopsets/graph.hpp"
#include "hopsets/weight.hpp"

namespace hopsets {

struct WeightedEdge {
  Vertex u = 0;
  Vertex v = 0;
  WeightValue w;
};

struct Arc {
  Vertex to = 0;
  std::uint32_t edge = 0;
  WeightValue w;
};

// Undirected CSR adjacency with exact weights. Arcs of each vertex are sorted
// by (to, edge).
class WeightedAdjacency {
 public:
  WeightedAdjacency() = default;

  WeightedAdjacency(std::size_t n, std::span<const WeightedEdge> edges) : n_(n), offsets_(n + 1, 0) {
    for (const auto& e : edges) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] += offsets_[v];
    arcs_.resize(offsets_[n]);
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      const auto& e = edges[i];
      arcs_[fill[e.u]++] = {e.v, i, e.w};
      arcs_[fill[e.v]++] = {e.u, i, e.w};
    }
    for (std::size_t v = 0; v < n; ++v)
      std::sort(arcs_.begin() + offsets_[v], arcs_.begin() + offsets_[v + 1],
                [](const Arc& a, const Arc& b) { return std::tie(a.to, a.edge) < std::tie(b.to, b.edge); });
  }

  // Graph weights scaled to units of 1/denominator; arc edge ids match the graph's.
  static WeightedAdjacency from_graph(const Graph& g, Int128 denominator) {
    std::vector<WeightedEdge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, WeightValue::from_integer(e.w, denominator)});
    return WeightedAdjacency(g.vertex_count(), edges);
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }
  std::span<const Arc> arcs(Vertex v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Arc> arcs_;
};

// Shortest-path forest of a multi-source exploration. Unreached vertices have
// infinite dist and no root.
struct ExplorationForest {
  std::vector<WeightValue> dist;
  std::vector<Vertex> root;
  std::vector<Vertex> parent;
  std::vector<std::uint32_t> parent_edge;
  std::vector<Vertex> order;  // reached vertices in settle order

  bool reached(Vertex v) const { return root[v] != kNoVertex; }

  // root[v], ..., v along parent pointers.
  std::vector<Vertex> path_from_root(Vertex v) const {
    std::vector<Vertex> path;
    for (Vertex x = v; x != kNoVertex; x = parent[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

// One Dijkstra from every root at once, up to `depth` inclusive. An
// equidistant vertex goes to the lowest root id: labels are compared as
// (distance, root) pairs.
inline ExplorationForest bounded_multisource_dijkstra(const WeightedAdjacency& g, std::span<const Vertex> roots,
                                                      WeightValue depth) {
  const auto n = g.vertex_count();
  ExplorationForest f;
  f.dist.assign(n, WeightValue::infinity());
  f.root.assign(n, kNoVertex);
  f.parent.assign(n, kNoVertex);
  f.parent_edge.assign(n, kNoVertex);
  std::vector<char> settled(n, 0);

  using Entry = std::tuple<WeightValue, Vertex, Vertex>;  // (dist, root, vertex)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (Vertex r : roots) {
    if (f.dist[r] == WeightValue::zero() && f.root[r] <= r) continue;
    f.dist[r] = WeightValue::zero();
    f.root[r] = r;
    heap.emplace(WeightValue::zero(), r, r);
  }
  while (!heap.empty()) {
    const auto [d, r, v] = heap.top();
    heap.pop();
    if (settled[v] || d != f.dist[v] || r != f.root[v]) continue;
    settled[v] = 1;
    f.order.push_back(v);
    for (const auto& arc : g.arcs(v)) {
      const Vertex u = arc.to;
      if (settled[u]) continue;
      const WeightValue nd = d + arc.w;
      if (nd > depth) continue;
      if (nd < f.dist[u] || (nd == f.dist[u] && r < f.root[u])) {
        f.dist[u] = nd;
        f.root[u] = r;
        f.parent[u] = v;
        f.parent_edge[u] = arc.edge;
        heap.emplace(nd, r, u);
      }
    }
  }
  return f;
}

// Reusable single-source Dijkstra state. Only touched entries are reset
// between runs, so many small explorations stay proportional to what they
// reach.
class DijkstraWorkspace {
 public:
  explicit DijkstraWorkspace(std::size_t n)
      : dist_(n, WeightValue::infinity()), parent_(n, kNoVertex), settled_(n, 0) {}

  // Explores from `source` to `depth` (inclusive). Every reached vertex
  // increments visits[v] once when `visits` is non-empty.
  void run(const WeightedAdjacency& g, Vertex source, WeightValue depth, std::span<std::uint64_t> visits = {}) {
    reset();
    source_ = source;
    using Entry = std::pair<WeightValue, Vertex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    touch(source);
    dist_[source] = WeightValue::zero();
    heap.emplace(WeightValue::zero(), source);
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (settled_[v] || d != dist_[v]) continue;
      settled_[v] = 1;
      reached_.push_back(v);
      if (!visits.empty()) ++visits[v];
      for (const auto& arc : g.arcs(v)) {
        const Vertex u = arc.to;
        if (settled_[u]) continue;
        const WeightValue nd = d + arc.w;
        if (nd > depth) continue;
        if (nd < dist_[u] || (nd == dist_[u] && v < parent_[u])) {
          touch(u);
          dist_[u] = nd;
          parent_[u] = v;
          heap.emplace(nd, u);
        }
      }
    }
  }

  std::span<const Vertex> reached() const { return reached_; }
  bool is_reached(Vertex v) const { return settled_[v] != 0; }
  WeightValue dist(Vertex v) const { return settled_[v] ? dist_[v] : WeightValue::infinity(); }
  Vertex parent(Vertex v) const { return parent_[v]; }

  // source, ..., v
  std::vector<Vertex> path_to(Vertex v) const {
    std::vector<Vertex> path;
    for (Vertex x = v; x != kNoVertex; x = parent_[x]) path.push_back(x);
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  void touch(Vertex v) {
    if (dist_[v].is_infinite() && parent_[v] == kNoVertex) touched_.push_back(v);
  }

  void reset() {
    for (Vertex v : touched_) {
      dist_[v] = WeightValue::infinity();
      parent_[v] = kNoVertex;
      settled_[v] = 0;
    }
    touched_.clear();
    reached_.clear();
  }

  std::vector<WeightValue> dist_;
  std::vector<Vertex> parent_;
  std::vector<char> settled_;
  std::vector<Vertex> touched_;
  std::vector<Vertex> reached_;
  Vertex source_ = kNoVertex;
};

// Distances from `source` for every vertex within `depth`, sorted by vertex id.
inline std::vector<std::pair<Vertex, WeightValue>> bounded_dijkstra_single(const WeightedAdjacency& g, Vertex source,
                                                                           WeightValue depth,
                                                                           std::span<std::uint64_t> visits = {}) {
  DijkstraWorkspace ws(g.vertex_count());
  ws.run(g, source, depth, visits);
  std::vector<std::pair<Vertex, WeightValue>> out;
  for (Vertex v : ws.reached()) out.emplace_back(v, ws.dist(v));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// Exact single-source distances (units of 1/denominator), infinity if unreachable.
inline std::vector<WeightValue> shortest_distances(const WeightedAdjacency& g, Vertex source) {
  const Vertex roots[] = {source};
  return bounded_multisource_dijkstra(g, roots, WeightValue::infinity()).dist;
}

// ---------------------------------------------------------------------------
// Hop-limited Bellman-Ford over G plus an extra edge set.

enum class ArcKind : std::uint8_t { graph = 0, extra = 1 };

struct ExtraEdge {
  Vertex u = 0;
  Vertex v = 0;
  WeightValue w;
};

struct HopArc {
  Vertex to = 0;
  ArcKind kind = ArcKind::graph;
  std::uint32_t index = 0;  // graph edge id or extra edge id
  WeightValue w;
};

// G (scaled to 1/denominator) united with extra edges; parallel arcs are kept.
// Arcs of each vertex are sorted by (to, kind, index), which is the
// predecessor tie-break order.
class UnionAdjacency {
 public:
  UnionAdjacency(const Graph& g, Int128 denominator, std::span<const ExtraEdge> extra)
      : n_(g.vertex_count()), offsets_(n_ + 1, 0) {
    for (const auto& e : g.edges()) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (const auto& e : extra) {
      if (e.u >= n_ || e.v >= n_) throw ParameterError("extra edge endpoint out of range");
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
    arcs_.resize(offsets_[n_]);
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
      const auto& e = g.edge(i);
      const auto w = WeightValue::from_integer(e.w, denominator);
      arcs_[fill[e.u]++] = {e.v, ArcKind::graph, i, w};
      arcs_[fill[e.v]++] = {e.u, ArcKind::graph, i, w};
    }
    for (std::uint32_t i = 0; i < extra.size(); ++i) {
      const auto& e = extra[i];
      arcs_[fill[e.u]++] = {e.v, ArcKind::extra, i, e.w};
      arcs_[fill[e.v]++] = {e.u, ArcKind::extra, i, e.w};
    }
    for (std::size_t v = 0; v < n_; ++v)
      std::sort(arcs_.begin() + offsets_[v], arcs_.begin() + offsets_[v + 1], [](const HopArc& a, const HopArc& b) {
        return std::tie(a.to, a.kind, a.index) < std::tie(b.to, b.kind, b.index);
      });
  }

  std::size_t vertex_count() const { return n_; }
  std::span<const HopArc> arcs(Vertex v) const {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> offsets_;
  std::vector<HopArc> arcs_;
};

struct HopPredecessor {
  Vertex prev = kNoVertex;
  ArcKind kind = ArcKind::graph;
  std::uint32_t index = 0;
};

struct HopLimitedRow {
  Vertex source = 0;
  std::vector<WeightValue> dist;
  std::vector<HopPredecessor> pred;
  std::uint64_t rounds = 0;  // rounds executed before the budget ran out or values settled
};

// d^{(t)}(source, .) exactly. Each round reads only the previous round's
// values, so after round j every value is the best path of at most j edges.
// Stops early once a round changes nothing, since later rounds would repeat it.
inline HopLimitedRow hop_limited_row(const UnionAdjacency& g, Vertex source, std::uint64_t t) {
  const auto n = g.vertex_count();
  HopLimitedRow row;
  row.source = source;
  row.dist.assign(n, WeightValue::infinity());
  row.pred.assign(n, HopPredecessor{});
  row.dist[source] = WeightValue::zero();

  struct Update {
    Vertex v;
    WeightValue d;
    HopPredecessor pred;
  };
  std::vector<Vertex> frontier{source};
  std::vector<Vertex> candidates;
  std::vector<char> marked(n, 0);
  std::vector<Update> updates;
  for (std::uint64_t round = 0; round < t && !frontier.empty(); ++round) {
    candidates.clear();
    for (Vertex f : frontier)
      for (const auto& arc : g.arcs(f))
        if (!marked[arc.to]) {
          marked[arc.to] = 1;
          candidates.push_back(arc.to);
        }
    updates.clear();
    for (Vertex v : candidates) {
      marked[v] = 0;
      WeightValue best = row.dist[v];
      HopPredecessor best_pred{};
      bool improved = false;
      for (const auto& arc : g.arcs(v)) {
        const WeightValue du = row.dist[arc.to];
        if (du.is_infinite()) continue;
        const WeightValue cand = du + arc.w;
        if (cand < best) {
          best = cand;
          best_pred = {arc.to, arc.kind, arc.index};
          improved = true;
        }
      }
      if (improved) updates.push_back({v, best, best_pred});
    }
    frontier.clear();
    for (const auto& u : updates) {
      row.dist[u.v] = u.d;
      row.pred[u.v] = u.pred;
      frontier.push_back(u.v);
    }
    row.rounds = round + 1;
  }
  return row;
}

struct HopLimitedTable {
  std::uint64_t budget = 0;
  std::vector<HopLimitedRow> rows;  // one per requested source, in request order

  const HopLimitedRow& row_for(Vertex source) const {
    for (const auto& r : rows)
      if (r.source == source) return r;
    throw ParameterError("source " + std::to_string(source) + " not in table");
  }
  WeightValue distance(Vertex source, Vertex v) const { return row_for(source).dist[v]; }
};

inline HopLimitedTable hop_limited_bellman_ford(const Graph& base, Int128 denominator, std::span<const ExtraEdge> extra,
                                                std::span<const Vertex> sources, std::uint64_t t) {
  const UnionAdjacency g(base, denominator, extra);
  HopLimitedTable table;
  table.budget = t;
  for (Vertex s : sources) table.rows.push_back(hop_limited_row(g, s, t));
  return table;
}

}  // namespace hopsets
