#pragma once

// Aspect-ratio reduction. For every scale k, G_k keeps the G-edges of weight
// at most 2^{k+2} and contracts the edges lighter than (eps/n) 2^k. The
// contracted nodes form a laminar family, recorded per vertex as a list of
// (scale, center) pairs plus the spanning forest of contracted edges.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "hopsets/errors.hpp"
#include "hopsets/explore.hpp"
#include "hopsets/graph.hpp"
#include "hopsets/weight.hpp"

namespace hopsets {

// Scales k >= 1 with some edge weight in [2^k / n, 2^{k+1}], ascending.
inline std::vector<int> relevant_scales(const Graph& g) {
  const auto n = static_cast<UInt128>(g.vertex_count());
  std::vector<char> hit;
  for (const auto& e : g.edges()) {
    const auto w = static_cast<UInt128>(e.w);
    int lo = 0;  // ceil(log2 w) - 1
    while ((UInt128{1} << (lo + 1)) < w) ++lo;
    lo = std::max(lo, 1);
    const UInt128 wn = w * n;
    int hi = 0;  // floor(log2(w n))
    while ((wn >> (hi + 1)) != 0) ++hi;
    for (int k = lo; k <= hi; ++k) {
      if (hit.size() <= static_cast<std::size_t>(k)) hit.resize(k + 1, 0);
      hit[k] = 1;
    }
  }
  std::vector<int> out;
  for (std::size_t k = 0; k < hit.size(); ++k)
    if (hit[k]) out.push_back(static_cast<int>(k));
  return out;
}

struct MergeEntry {
  int scale = 0;
  Vertex center = 0;
  friend bool operator==(const MergeEntry&, const MergeEntry&) = default;
};

// One union of two nodes: the survivor keeps its center, the absorbed
// members receive it.
struct MergeEvent {
  int scale = 0;
  Vertex survivor = 0;  // center of the surviving node
  Vertex absorbed_center = 0;
  std::uint32_t edge = 0;  // contracted G-edge
  std::size_t merged_size = 0;
  std::vector<Vertex> absorbed;  // members that changed center, ascending
};

class LaminarFamily {
 public:
  std::size_t vertex_count() const { return lists_.size(); }
  const Rational& eps() const { return eps_; }
  const std::vector<MergeEntry>& merge_list(Vertex x) const { return lists_[x]; }
  std::span<const MergeEvent> events() const { return events_; }
  std::span<const std::uint32_t> tree_edges() const { return tree_edges_; }

  // Smallest k >= 1 with w < (eps/n) 2^k.
  int contraction_scale(EdgeWeight w) const { return contraction_scale(w, vertex_count(), eps_); }

  static int contraction_scale(EdgeWeight w, std::size_t n, const Rational& eps) {
    const BigInt lhs = BigInt(w) * BigInt(n) * denominator(eps);
    const BigInt& num = numerator(eps);
    int k = 1;
    while ((num << k) <= lhs) ++k;
    return k;
  }

  Vertex center_at(Vertex x, int k) const {
    const auto& list = lists_[x];
    auto it = std::upper_bound(list.begin(), list.end(), k, [](int s, const MergeEntry& e) { return s < e.scale; });
    return std::prev(it)->center;
  }

  // Centers of every vertex at scale k.
  std::vector<Vertex> centers_at(int k) const {
    std::vector<Vertex> out(vertex_count());
    for (Vertex x = 0; x < out.size(); ++x) out[x] = center_at(x, k);
    return out;
  }

  // Vertices in the node containing x at scale k, ascending.
  std::vector<Vertex> members(Vertex x, int k) const {
    const Vertex c = center_at(x, k);
    std::vector<Vertex> out;
    for (Vertex y = 0; y < vertex_count(); ++y)
      if (center_at(y, k) == c) out.push_back(y);
    return out;
  }

  // Path a, ..., b in the forest of contracted edges. Two vertices sharing a
  // node at scale k are joined by a path of edges contracted at scales <= k.
  std::vector<Vertex> tree_path(Vertex a, Vertex b) const {
    if (tree_root_[a] != tree_root_[b]) throw ParameterError("tree_path: vertices lie in different nodes");
    std::vector<Vertex> left{a};
    std::vector<Vertex> right{b};
    Vertex x = a;
    Vertex y = b;
    while (depth_[x] > depth_[y]) left.push_back(x = tree_parent_[x]);
    while (depth_[y] > depth_[x]) right.push_back(y = tree_parent_[y]);
    while (x != y) {
      left.push_back(x = tree_parent_[x]);
      right.push_back(y = tree_parent_[y]);
    }
    right.pop_back();
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
  }

  friend LaminarFamily build_laminar(const Graph& g, const Rational& eps);

 private:
  Rational eps_;
  std::vector<std::vector<MergeEntry>> lists_;
  std::vector<MergeEvent> events_;
  std::vector<std::uint32_t> tree_edges_;
  std::vector<Vertex> tree_parent_;
  std::vector<Vertex> tree_root_;
  std::vector<std::uint32_t> depth_;
};

// Kruskal sweep over the edges in order of contraction scale, with union by
// size. On equal sizes the node with the lower center survives.
inline LaminarFamily build_laminar(const Graph& g, const Rational& eps) {
  if (eps <= 0 || eps >= Rational(1, 2)) throw ParameterError("reduction epsilon must lie in (0, 1/2)");
  const auto n = g.vertex_count();
  LaminarFamily lf;
  lf.eps_ = eps;
  lf.lists_.resize(n);
  for (Vertex x = 0; x < n; ++x) lf.lists_[x].push_back({0, x});

  std::vector<std::tuple<int, EdgeWeight, std::uint32_t>> order;
  order.reserve(g.edge_count());
  for (std::uint32_t i = 0; i < g.edge_count(); ++i)
    order.emplace_back(LaminarFamily::contraction_scale(g.edge(i).w, n, eps), g.edge(i).w, i);
  std::sort(order.begin(), order.end());

  std::vector<Vertex> center(n);
  std::vector<std::vector<Vertex>> members(n);
  std::iota(center.begin(), center.end(), Vertex{0});
  for (Vertex x = 0; x < n; ++x) members[x] = {x};

  for (const auto& [k, w, idx] : order) {
    const Edge& e = g.edge(idx);
    Vertex x = center[e.u];
    Vertex y = center[e.v];
    if (x == y) continue;
    if (members[x].size() < members[y].size() || (members[x].size() == members[y].size() && y < x)) std::swap(x, y);
    MergeEvent ev;
    ev.scale = k;
    ev.survivor = x;
    ev.absorbed_center = y;
    ev.edge = idx;
    ev.merged_size = members[x].size() + members[y].size();
    ev.absorbed = members[y];
    std::sort(ev.absorbed.begin(), ev.absorbed.end());
    for (Vertex z : members[y]) {
      center[z] = x;
      auto& list = lf.lists_[z];
      if (list.back().scale == k)
        list.back().center = x;
      else
        list.push_back({k, x});
    }
    members[x].insert(members[x].end(), members[y].begin(), members[y].end());
    members[y].clear();
    members[y].shrink_to_fit();
    lf.tree_edges_.push_back(idx);
    lf.events_.push_back(std::move(ev));
  }

  // Root every tree of the contracted forest for path queries.
  std::vector<std::vector<Vertex>> adj(n);
  for (auto idx : lf.tree_edges_) {
    adj[g.edge(idx).u].push_back(g.edge(idx).v);
    adj[g.edge(idx).v].push_back(g.edge(idx).u);
  }
  lf.tree_parent_.assign(n, kNoVertex);
  lf.tree_root_.assign(n, kNoVertex);
  lf.depth_.assign(n, 0);
  std::vector<Vertex> queue;
  for (Vertex r = 0; r < n; ++r) {
    if (lf.tree_root_[r] != kNoVertex) continue;
    lf.tree_root_[r] = r;
    queue.assign(1, r);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      for (Vertex u : adj[v])
        if (lf.tree_root_[u] == kNoVertex) {
          lf.tree_root_[u] = r;
          lf.tree_parent_[u] = v;
          lf.depth_[u] = lf.depth_[v] + 1;
          queue.push_back(u);
        }
    }
  }
  return lf;
}

// (eps/n) 2^k in units of 1/denominator; must be an integer.
inline Int128 padding_unit(const Rational& eps, std::size_t n, int k, Int128 denominator) {
  const Rational q = eps * Rational(BigInt(1) << k) * to_bigint(denominator) / BigInt(n);
  if (boost::multiprecision::denominator(q) != 1)
    throw ParameterError("weight denominator cannot represent (eps/n) 2^" + std::to_string(k) + " exactly");
  return to_int128(boost::multiprecision::numerator(q));
}

struct StarEdge {
  Vertex center = 0;
  Vertex member = 0;
  WeightValue w;
  int scale = 0;
};

// S: for each merge, an edge from the surviving center to every absorbed
// member, of weight (eps/n) 2^k |U|.
inline std::vector<StarEdge> star_edges(const LaminarFamily& lf, Int128 denominator) {
  const auto n = lf.vertex_count();
  std::vector<StarEdge> out;
  for (const auto& ev : lf.events()) {
    const Int128 unit = padding_unit(lf.eps(), n, ev.scale, denominator);
    const auto w = WeightValue::from_raw(checked_mul(unit, static_cast<Int128>(ev.merged_size)));
    for (Vertex z : ev.absorbed) out.push_back({ev.survivor, z, w, ev.scale});
  }
  double bound = n > 1 ? static_cast<double>(n) * std::log2(static_cast<double>(n)) : 0.0;
  if (static_cast<double>(out.size()) > bound)
    throw Error("star set has " + std::to_string(out.size()) + " edges, above n log2 n");
  return out;
}

struct ScaleGraphEdge {
  std::uint32_t x = 0;  // compact node ids, x < y
  std::uint32_t y = 0;
  WeightValue w;
  Vertex rep_u = 0;  // endpoint of the lightest G-edge inside node x
  Vertex rep_v = 0;  // ... inside node y
  EdgeWeight omega = 0;
  std::uint32_t graph_edge = 0;
};

// G_k restricted to its active nodes (degree >= 1), which are numbered by
// ascending center.
struct ScaleGraph {
  int scale = 0;
  Int128 denominator = 1;
  std::vector<Vertex> center_of_vertex;  // every vertex, including isolated nodes
  std::vector<Vertex> centers;           // active node -> center
  std::vector<std::size_t> sizes;        // active node -> member count
  std::vector<std::uint32_t> node_of_vertex;  // compact id, kNoVertex when the node is isolated
  std::vector<ScaleGraphEdge> edges;
  std::size_t node_count = 0;  // including isolated nodes

  std::size_t active_count() const { return centers.size(); }

  WeightedAdjacency adjacency() const {
    std::vector<WeightedEdge> list;
    list.reserve(edges.size());
    for (const auto& e : edges) list.push_back({e.x, e.y, e.w});
    return WeightedAdjacency(active_count(), list);
  }
};

inline ScaleGraph materialize_scale_graph(const Graph& g, const LaminarFamily& lf, int k, Int128 denominator) {
  const auto n = g.vertex_count();
  ScaleGraph sg;
  sg.scale = k;
  sg.denominator = denominator;
  sg.center_of_vertex = lf.centers_at(k);
  std::vector<std::size_t> size_of_center(n, 0);
  for (Vertex x = 0; x < n; ++x) ++size_of_center[sg.center_of_vertex[x]];
  sg.node_count = static_cast<std::size_t>(std::count_if(size_of_center.begin(), size_of_center.end(),
                                                         [](std::size_t s) { return s > 0; }));

  const bool all_fit = k + 2 >= 62;
  const EdgeWeight cutoff = all_fit ? kMaxEdgeWeight : (EdgeWeight{1} << (k + 2));
  struct Candidate {
    Vertex a, b;  // centers, a < b
    EdgeWeight w;
    std::uint32_t edge;
    Vertex ra, rb;
  };
  std::vector<Candidate> cand;
  for (std::uint32_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    if (e.w > cutoff) continue;
    Vertex a = sg.center_of_vertex[e.u];
    Vertex b = sg.center_of_vertex[e.v];
    if (a == b) continue;
    Vertex ra = e.u;
    Vertex rb = e.v;
    if (a > b) {
      std::swap(a, b);
      std::swap(ra, rb);
    }
    cand.push_back({a, b, e.w, i, ra, rb});
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& p, const Candidate& q) {
    return std::tie(p.a, p.b, p.w, p.edge) < std::tie(q.a, q.b, q.w, q.edge);
  });
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](const Candidate& p, const Candidate& q) { return p.a == q.a && p.b == q.b; }),
             cand.end());

  for (const auto& c : cand) {
    sg.centers.push_back(c.a);
    sg.centers.push_back(c.b);
  }
  std::sort(sg.centers.begin(), sg.centers.end());
  sg.centers.erase(std::unique(sg.centers.begin(), sg.centers.end()), sg.centers.end());
  std::vector<std::uint32_t> id_of_center(n, kNoVertex);
  for (std::uint32_t i = 0; i < sg.centers.size(); ++i) {
    id_of_center[sg.centers[i]] = i;
    sg.sizes.push_back(size_of_center[sg.centers[i]]);
  }
  sg.node_of_vertex.resize(n);
  for (Vertex x = 0; x < n; ++x) sg.node_of_vertex[x] = id_of_center[sg.center_of_vertex[x]];

  const Int128 unit = cand.empty() ? 0 : padding_unit(lf.eps(), n, k, denominator);
  for (const auto& c : cand) {
    const std::uint32_t x = id_of_center[c.a];
    const std::uint32_t y = id_of_center[c.b];
    const auto pad = checked_mul(unit, static_cast<Int128>(sg.sizes[x] + sg.sizes[y]));
    const auto w = WeightValue::from_raw(checked_add(checked_mul(c.w, denominator), pad));
    sg.edges.push_back({x, y, w, c.ra, c.rb, c.w, c.edge});
  }
  return sg;
}

// Number of relevant scales in which each laminar node is active.
struct ActivityProfile {
  std::size_t total_active = 0;       // sum over scales of n_k
  std::size_t max_scales_per_node = 0;
  Vertex worst_center = kNoVertex;
  std::size_t worst_size = 0;
  std::size_t distinct_nodes = 0;
};

inline ActivityProfile activity_profile(const Graph& g, const LaminarFamily& lf, std::span<const int> scales) {
  ActivityProfile p;
  std::map<std::pair<Vertex, std::size_t>, std::size_t> count;  // (center, size) identifies a node
  const Int128 den = to_int128(BigInt(g.vertex_count()) * denominator(lf.eps()));
  for (int k : scales) {
    const ScaleGraph sg = materialize_scale_graph(g, lf, k, den);
    p.total_active += sg.active_count();
    for (std::size_t i = 0; i < sg.active_count(); ++i) ++count[{sg.centers[i], sg.sizes[i]}];
  }
  p.distinct_nodes = count.size();
  for (const auto& [node, c] : count)
    if (c > p.max_scales_per_node) {
      p.max_scales_per_node = c;
      p.worst_center = node.first;
      p.worst_size = node.second;
    }
  return p;
}

}  // namespace hopsets
