#pragma once

// S x V approximate distances: one hop-limited Bellman-Ford over G + H from
// each source, with the hopset's hop budget.

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hopsets/errors.hpp"
#include "hopsets/explore.hpp"
#include "hopsets/graph.hpp"
#include "hopsets/hopset.hpp"
#include "hopsets/parallel.hpp"

namespace hopsets {

struct AspResult {
  std::vector<Vertex> sources;
  Int128 denominator = 1;
  std::uint64_t budget = 0;
  std::vector<HopLimitedRow> rows;  // one per source, same order

  const HopLimitedRow& row(Vertex source) const {
    for (const auto& r : rows)
      if (r.source == source) return r;
    throw ParameterError("vertex " + std::to_string(source) + " is not a query source");
  }
  WeightValue estimate(Vertex source, Vertex v) const { return row(source).dist[v]; }
};

inline void check_sources(const Graph& g, std::span<const Vertex> sources) {
  for (Vertex s : sources)
    if (s >= g.vertex_count()) throw ParameterError("source " + std::to_string(s + 1) + " is out of range");
}

// Calls emit(row) once per source in source order; at most `jobs` rows are
// resident at a time.
inline void asp_stream(const Graph& g, const Hopset& hs, std::span<const Vertex> sources, unsigned jobs,
                       const std::function<void(const HopLimitedRow&)>& emit,
                       std::optional<std::uint64_t> budget = std::nullopt) {
  if (hs.n != g.vertex_count()) throw ParameterError("hopset and graph disagree on n");
  check_sources(g, sources);
  const auto extra = hs.extra_edges();
  const UnionAdjacency u(g, hs.denominator, extra);
  const std::uint64_t t = budget ? *budget : hs.effective_beta;
  const std::size_t batch = std::max(1u, jobs);
  std::vector<HopLimitedRow> rows(batch);
  for (std::size_t first = 0; first < sources.size(); first += batch) {
    const std::size_t count = std::min(batch, sources.size() - first);
    parallel_for(count, jobs, [&](std::size_t i) { rows[i] = hop_limited_row(u, sources[first + i], t); });
    for (std::size_t i = 0; i < count; ++i) emit(rows[i]);
  }
}

inline AspResult asp_estimates(const Graph& g, const Hopset& hs, std::span<const Vertex> sources, unsigned jobs = 1,
                               std::optional<std::uint64_t> budget = std::nullopt) {
  AspResult r;
  r.sources.assign(sources.begin(), sources.end());
  r.denominator = hs.denominator;
  r.budget = budget ? *budget : hs.effective_beta;
  asp_stream(g, hs, sources, jobs, [&](const HopLimitedRow& row) { r.rows.push_back(row); }, budget);
  return r;
}

struct GraphPath {
  std::vector<Vertex> vertices;
  Int128 weight = 0;  // sum of G weights
};

// Follows the final predecessors back to the source and expands hopset edges
// into their witnesses. The hop count can exceed the budget.
inline GraphPath extract_path(const Graph& g, const Hopset& hs, const AspResult& result, Vertex source, Vertex v) {
  const HopLimitedRow& row = result.row(source);
  if (v >= g.vertex_count()) throw ParameterError("target out of range");
  if (row.dist[v].is_infinite()) throw ParameterError("vertex " + std::to_string(v + 1) + " is unreachable within the budget");

  std::vector<Vertex> reversed{v};
  Vertex cur = v;
  std::size_t steps = 0;
  while (cur != source) {
    if (++steps > g.vertex_count() + hs.edges.size() + 1) throw Error("predecessor chain does not reach the source");
    const HopPredecessor& p = row.pred[cur];
    if (p.prev == kNoVertex) throw Error("broken predecessor chain");
    if (p.kind == ArcKind::graph) {
      reversed.push_back(p.prev);
    } else {
      const HopsetEdge& e = hs.edges.at(p.index);
      if (e.witness.empty())
        throw ParameterError("hopset edge " + std::to_string(p.index) + " has no witness; build with path reporting");
      // Witness runs e.u -> e.v; walk it from cur back to prev.
      if (cur == e.v)
        reversed.insert(reversed.end(), e.witness.rbegin() + 1, e.witness.rend());
      else
        reversed.insert(reversed.end(), e.witness.begin() + 1, e.witness.end());
    }
    cur = p.prev;
  }
  GraphPath path;
  path.vertices.assign(reversed.rbegin(), reversed.rend());
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    const auto w = g.edge_weight(path.vertices[i], path.vertices[i + 1]);
    if (!w) throw Error("extracted path uses a non-edge");
    path.weight += *w;
  }
  return path;
}

}  // namespace hopsets
