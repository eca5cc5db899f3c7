#pragma once

// Full hopsets. Direct mode unions single-scale hopsets built on G for every
// scale above the hopbound. Reduced mode builds each relevant scale on the
// contracted graph G_k, maps node edges to their centers, and adds the star
// set S; the guarantee becomes (6 beta + 5, eps).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hopsets/errors.hpp"
#include "hopsets/explore.hpp"
#include "hopsets/graph.hpp"
#include "hopsets/parallel.hpp"
#include "hopsets/scale_reduction.hpp"
#include "hopsets/schedule.hpp"
#include "hopsets/single_scale.hpp"
#include "hopsets/weight.hpp"

namespace hopsets {

enum class HopsetMode { direct, reduced };

inline const char* to_string(HopsetMode mode) { return mode == HopsetMode::direct ? "direct" : "reduced"; }

inline HopsetMode parse_hopset_mode(const std::string& text) {
  if (text == "direct") return HopsetMode::direct;
  if (text == "reduced") return HopsetMode::reduced;
  throw ParameterError("unknown mode '" + text + "' (expected direct or reduced)");
}

struct HopsetParams {
  int kappa = 2;
  Rational rho{1, 2};
  Rational eps{3, 10};  // target stretch slack
  std::uint64_t seed = 1;
  HopsetMode mode = HopsetMode::reduced;
  DegreeMode degree_mode = DegreeMode::basic;
  bool path_reporting = false;
  std::optional<Rational> eps_internal;  // overrides the rescaled single-scale epsilon
  unsigned jobs = 1;
  std::optional<Int128> lambda_hint;  // upper bound on the largest distance (direct mode)
};

struct HopsetPlan {
  HopsetMode mode = HopsetMode::reduced;
  std::size_t n = 0;
  int kappa = 2;
  Rational rho;
  DegreeMode degree_mode = DegreeMode::basic;
  PhaseLayout layout;
  Rational eps_target;
  Rational eps_reduction;  // reduced mode only
  Rational eps_internal;
  Rational zeta;  // single-scale stretch slack 32 (ell+1) eps_internal
  std::vector<Rational> h;
  std::uint64_t beta = 0;            // single-scale hopbound 2 h_ell + 1
  std::uint64_t effective_beta = 0;  // beta, or 6 beta + 5 in reduced mode
  Rational effective_eps;
  Int128 denominator = 1;

  // Pairs at distance <= 2^{k+1} <= effective_beta already have a path of
  // at most effective_beta edges in G.
  bool trivial(int k) const {
    if (k + 1 >= 64) return false;
    return (std::uint64_t{1} << (k + 1)) <= effective_beta;
  }

  PhaseSchedule schedule(std::size_t nodes, int k) const {
    return compute_schedule(nodes, kappa, rho, eps_internal, Rational(BigInt(1) << (k + 1)), degree_mode);
  }
};

inline HopsetPlan plan(const HopsetParams& p, std::size_t n) {
  HopsetPlan out;
  out.mode = p.mode;
  out.n = n;
  out.kappa = p.kappa;
  out.rho = p.rho;
  out.degree_mode = p.degree_mode;
  out.layout = phase_layout(p.kappa, p.rho, p.degree_mode);
  out.eps_target = p.eps;
  const Rational slack = 32 * (out.layout.ell + 1);

  if (p.mode == HopsetMode::direct) {
    if (!p.eps_internal && (p.eps <= 0 || p.eps > 1)) throw ParameterError("direct mode needs 0 < eps <= 1");
    out.eps_internal = p.eps_internal ? *p.eps_internal : p.eps / slack;
    out.zeta = slack * out.eps_internal;
    out.effective_eps = p.eps_internal ? out.zeta : p.eps;
  } else {
    if (!p.eps_internal && (p.eps <= 0 || p.eps >= Rational(1, 2))) throw ParameterError("reduced mode needs 0 < eps < 1/2");
    out.eps_reduction = p.eps / 6;
    if (p.eps_internal) {
      out.eps_internal = *p.eps_internal;
      out.zeta = slack * out.eps_internal;
      // 2 eps_red from the stars plus (1 + zeta)(1 + 2 eps_red) - 1 across G_k.
      out.effective_eps = 4 * out.eps_reduction + out.zeta + 2 * out.zeta * out.eps_reduction;
    } else {
      out.eps_internal = out.eps_reduction / slack;
      out.zeta = out.eps_reduction;
      out.effective_eps = p.eps;
    }
    out.denominator = to_int128(BigInt(n == 0 ? 1 : n) * denominator(out.eps_reduction));
  }
  if (out.eps_internal <= 0 || out.eps_internal >= Rational(1, 10))
    throw ParameterError("internal epsilon " + format_rational(out.eps_internal) + " must lie in (0, 1/10)");

  out.h = hop_recurrence(out.eps_internal, out.layout.ell);
  out.beta = saturate_u64(floor_nonnegative(2 * out.h.back() + 1));
  out.effective_beta =
      p.mode == HopsetMode::direct ? out.beta : saturate_u64(6 * BigInt(out.beta) + 5);
  return out;
}

// Scales that receive a single-scale hopset.
inline std::vector<int> planned_scales(const HopsetPlan& pl, const Graph& g, std::optional<Int128> lambda_hint = {}) {
  std::vector<int> out;
  if (pl.mode == HopsetMode::reduced) {
    for (int k : relevant_scales(g))
      if (!pl.trivial(k)) out.push_back(k);
    return out;
  }
  const Int128 lambda = lambda_hint ? *lambda_hint : distance_upper_bound(g);
  int kmax = 0;  // ceil(log2 lambda)
  while (kmax < 126 && (Int128{1} << kmax) < lambda) ++kmax;
  for (int k = 1; k <= kmax; ++k)
    if (!pl.trivial(k)) out.push_back(k);
  return out;
}

// Exploration depths reach about 2^{k+2}; keep them well inside 128 bits.
inline void check_dynamic_range(const HopsetPlan& pl, std::span<const int> scales) {
  if (scales.empty()) return;
  const BigInt bound = (BigInt(1) << (scales.back() + 4)) * to_bigint(pl.denominator);
  if (msb_or_zero(bound) >= 120)
    throw OverflowError("scale 2^" + std::to_string(scales.back()) + " with weight denominator " +
                        to_string(pl.denominator) + " exceeds the 120-bit distance budget");
}

struct HopsetEdge {
  Vertex u = 0;  // u < v
  Vertex v = 0;
  WeightValue w;
  int scale = 0;
  EdgeKind kind = EdgeKind::interconnect;
  // G-edges crossed between nodes, in order from u to v. Segments between
  // crossings lie inside one node of the scale graph (trivially in direct mode).
  std::vector<std::pair<Vertex, Vertex>> crossings;
  std::vector<Vertex> witness;  // G-path u, ..., v when attached
};

struct Provenance {
  HopsetMode mode = HopsetMode::reduced;
  int kappa = 2;
  Rational rho{1, 2};
  Rational eps{3, 10};
  std::uint64_t seed = 1;
  DegreeMode degree_mode = DegreeMode::basic;
  bool path_reporting = false;
  std::optional<Rational> eps_internal;
  std::uint64_t graph_digest = 0;

  HopsetParams params() const {
    HopsetParams p;
    p.mode = mode;
    p.kappa = kappa;
    p.rho = rho;
    p.eps = eps;
    p.seed = seed;
    p.degree_mode = degree_mode;
    p.path_reporting = path_reporting;
    p.eps_internal = eps_internal;
    return p;
  }
};

struct ScaleSummary {
  int scale = 0;
  std::size_t active_nodes = 0;
  std::size_t edges = 0;
  int ell = 0;
  std::vector<PhaseStats> phases;
};

struct Hopset {
  std::size_t n = 0;
  Int128 denominator = 1;
  std::uint64_t effective_beta = 0;
  Rational effective_eps;
  std::vector<HopsetEdge> edges;
  Provenance provenance;
  bool recorded = false;  // crossings were recorded during the build
  std::vector<ScaleSummary> scales;

  std::size_t star_count() const {
    return static_cast<std::size_t>(
        std::count_if(edges.begin(), edges.end(), [](const HopsetEdge& e) { return e.kind == EdgeKind::node_star; }));
  }

  std::vector<ExtraEdge> extra_edges() const {
    std::vector<ExtraEdge> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back({e.u, e.v, e.w});
    return out;
  }
};

inline std::string hex_digest(std::uint64_t d) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << d;
  return s.str();
}

namespace detail {

inline HopsetEdge normalized(Vertex a, Vertex b, WeightValue w, int scale, EdgeKind kind,
                             std::vector<std::pair<Vertex, Vertex>> crossings) {
  if (a > b) {
    std::swap(a, b);
    std::reverse(crossings.begin(), crossings.end());
    for (auto& c : crossings) std::swap(c.first, c.second);
  }
  return HopsetEdge{a, b, w, scale, kind, std::move(crossings), {}};
}

inline std::vector<std::pair<Vertex, Vertex>> consecutive_pairs(const std::vector<Vertex>& route) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (std::size_t i = 0; i + 1 < route.size(); ++i) out.emplace_back(route[i], route[i + 1]);
  return out;
}

}  // namespace detail

inline std::optional<std::string> validate_witness(const Graph& g, Int128 denominator, const HopsetEdge& e) {
  const auto& p = e.witness;
  if (p.empty()) return "missing witness";
  if (p.front() != e.u || p.back() != e.v) return "witness endpoints do not match the edge";
  WeightValue total = WeightValue::zero();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto w = g.edge_weight(p[i], p[i + 1]);
    if (!w) return "witness step (" + std::to_string(p[i]) + "," + std::to_string(p[i + 1]) + ") is not a graph edge";
    total += WeightValue::from_integer(*w, denominator);
  }
  if (total > e.w) return "witness weight " + total.to_string() + " exceeds edge weight " + e.w.to_string();
  return std::nullopt;
}

// Expands recorded crossings into G-paths. Segments inside a node follow the
// laminar family's contracted forest.
inline void attach_witness_paths(const LaminarFamily* laminar, Hopset& hs) {
  if (!hs.recorded) throw ParameterError("hopset was built without route recording; rebuild with path reporting");
  auto segment = [&](Vertex from, Vertex to, std::vector<Vertex>& out) {
    if (from == to) return;
    if (!laminar) throw ParameterError("witness segment needs the laminar family");
    const auto path = laminar->tree_path(from, to);
    out.insert(out.end(), path.begin() + 1, path.end());
  };
  for (auto& e : hs.edges) {
    std::vector<Vertex> path{e.u};
    for (const auto& [a, b] : e.crossings) {
      segment(path.back(), a, path);
      path.push_back(b);
    }
    segment(path.back(), e.v, path);
    e.witness = std::move(path);
  }
}

inline Hopset build_hopset(const Graph& g, const HopsetParams& params) {
  const auto n = g.vertex_count();
  const HopsetPlan pl = plan(params, n);
  const std::vector<int> scales = planned_scales(pl, g, params.lambda_hint);
  check_dynamic_range(pl, scales);

  Hopset hs;
  hs.n = n;
  hs.denominator = pl.denominator;
  hs.effective_beta = pl.effective_beta;
  hs.effective_eps = pl.effective_eps;
  hs.recorded = params.path_reporting;
  hs.provenance = {params.mode,   params.kappa,          params.rho,          params.eps,
                   params.seed,   params.degree_mode,    params.path_reporting, params.eps_internal,
                   g.digest()};

  std::optional<LaminarFamily> laminar;
  if (params.mode == HopsetMode::reduced) {
    laminar = build_laminar(g, pl.eps_reduction);
    for (const auto& s : star_edges(*laminar, pl.denominator))
      hs.edges.push_back(detail::normalized(s.center, s.member, s.w, s.scale, EdgeKind::node_star, {}));
  }

  std::vector<std::vector<HopsetEdge>> per_scale(scales.size());
  std::vector<ScaleSummary> summaries(scales.size());
  const WeightedAdjacency direct_graph =
      params.mode == HopsetMode::direct ? WeightedAdjacency::from_graph(g, 1) : WeightedAdjacency{};

  parallel_for(scales.size(), params.jobs, [&](std::size_t idx) {
    const int k = scales[idx];
    ScaleSummary& summary = summaries[idx];
    summary.scale = k;
    SingleScaleOptions options;
    options.record_routes = params.path_reporting;
    const std::uint64_t seed = derive_seed(params.seed, static_cast<std::uint64_t>(k));
    auto& out = per_scale[idx];

    if (params.mode == HopsetMode::direct) {
      summary.active_nodes = n;
      if (n < 2) return;
      const PhaseSchedule sched = pl.schedule(n, k);
      summary.ell = sched.ell;
      auto built = build_single_scale(direct_graph, sched, 1, seed, options, k);
      for (auto& e : built.edges) out.push_back(detail::normalized(e.u, e.v, e.w, k, e.kind, detail::consecutive_pairs(e.route)));
      summary.phases = std::move(built.phases);
    } else {
      const ScaleGraph sg = materialize_scale_graph(g, *laminar, k, pl.denominator);
      summary.active_nodes = sg.active_count();
      if (sg.active_count() < 2) return;
      const PhaseSchedule sched = pl.schedule(sg.active_count(), k);
      summary.ell = sched.ell;
      auto built = build_single_scale(sg.adjacency(), sched, pl.denominator, seed, options, k);
      auto crossing = [&](std::uint32_t a, std::uint32_t b) {
        const auto lo = std::min(a, b);
        const auto hi = std::max(a, b);
        auto it = std::lower_bound(sg.edges.begin(), sg.edges.end(), std::make_pair(lo, hi),
                                   [](const ScaleGraphEdge& e, const std::pair<std::uint32_t, std::uint32_t>& key) {
                                     return std::tie(e.x, e.y) < std::tie(key.first, key.second);
                                   });
        return a == lo ? std::make_pair(it->rep_u, it->rep_v) : std::make_pair(it->rep_v, it->rep_u);
      };
      for (auto& e : built.edges) {
        std::vector<std::pair<Vertex, Vertex>> cross;
        for (std::size_t i = 0; i + 1 < e.route.size(); ++i) cross.push_back(crossing(e.route[i], e.route[i + 1]));
        out.push_back(detail::normalized(sg.centers[e.u], sg.centers[e.v], e.w, k, e.kind, std::move(cross)));
      }
      summary.phases = std::move(built.phases);
    }
    summary.edges = out.size();
  });

  for (auto& list : per_scale)
    for (auto& e : list) hs.edges.push_back(std::move(e));
  hs.scales = std::move(summaries);
  std::stable_sort(hs.edges.begin(), hs.edges.end(), [](const HopsetEdge& a, const HopsetEdge& b) {
    return std::tie(a.scale, a.u, a.v, a.kind, a.w) < std::tie(b.scale, b.u, b.v, b.kind, b.w);
  });
  if (params.path_reporting) attach_witness_paths(laminar ? &*laminar : nullptr, hs);
  return hs;
}

}  // namespace hopsets
