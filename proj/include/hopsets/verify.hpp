#pragma once

// Oracle verification of the hopset contract
//   d_G(u,v) <= d^{(beta)}_{G+H}(u,v) <= (1 + eps) d_G(u,v)
// with exact Dijkstra distances and exact hop-limited Bellman-Ford, compared
// in integer arithmetic with no tolerance.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hopsets/errors.hpp"
#include "hopsets/explore.hpp"
#include "hopsets/graph.hpp"
#include "hopsets/hopset.hpp"
#include "hopsets/parallel.hpp"
#include "hopsets/rng.hpp"
#include "hopsets/weight.hpp"

namespace hopsets {

inline constexpr std::size_t kMaxAllPairs = 500;
inline constexpr int kReportSchemaVersion = 1;

// Exact integer distances, infinity when unreachable.
using DistanceMatrix = std::vector<std::vector<WeightValue>>;

inline DistanceMatrix exact_apsp(const Graph& g, unsigned jobs = 1, std::size_t max_n = kMaxAllPairs) {
  if (g.vertex_count() > max_n)
    throw ParameterError("exact_apsp: n = " + std::to_string(g.vertex_count()) + " exceeds " + std::to_string(max_n));
  const auto adj = WeightedAdjacency::from_graph(g, 1);
  DistanceMatrix d(g.vertex_count());
  parallel_for(g.vertex_count(), jobs, [&](std::size_t s) { d[s] = shortest_distances(adj, static_cast<Vertex>(s)); });
  return d;
}

struct AllPairs {};
struct SamplePairs {
  std::size_t count = 0;
  std::uint64_t seed = 1;
};
struct BandPairs {
  int k = 0;  // pairs with d_G in (2^k, 2^{k+1}]
};
using PairMode = std::variant<AllPairs, SamplePairs, BandPairs>;

inline std::string describe(const PairMode& mode) {
  if (std::holds_alternative<AllPairs>(mode)) return "all";
  if (const auto* s = std::get_if<SamplePairs>(&mode))
    return "sample(" + std::to_string(s->count) + "," + std::to_string(s->seed) + ")";
  return "band(" + std::to_string(std::get<BandPairs>(mode).k) + ")";
}

struct StretchViolation {
  Vertex u = 0;
  Vertex v = 0;
  Int128 d_graph = 0;      // exact, integer
  WeightValue d_limited;   // units of 1/denominator
  std::string reason;      // "shortcut" or "stretch"
};

struct VerifyOptions {
  unsigned jobs = 1;
  std::size_t max_all_pairs = kMaxAllPairs;
  std::optional<std::uint64_t> hop_budget;  // default: the hopset's effective_beta
  std::optional<Rational> eps;              // default: the hopset's effective_eps
  std::size_t max_listed_violations = 100;
};

struct VerificationReport {
  std::size_t n = 0;
  std::string pair_mode;
  std::uint64_t hop_budget = 0;
  Rational eps;
  Int128 denominator = 1;
  std::size_t hopset_edges = 0;
  std::size_t star_edges = 0;
  std::map<int, std::size_t> per_scale_sizes;
  std::size_t pairs_checked = 0;
  std::size_t violation_count = 0;
  std::vector<StretchViolation> violations;
  Rational max_stretch{0};  // over pairs reached within the budget
  bool unbounded = false;   // some checked pair has no path within the budget
  Rational min_stretch{0};
  std::uint64_t max_rounds = 0;  // Bellman-Ford rounds before values settled
  double wall_ms = 0.0;
  std::uint64_t seed = 0;

  bool passed() const { return violation_count == 0; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "hopset-verification";
    j["version"] = kReportSchemaVersion;
    j["n"] = n;
    j["pair_mode"] = pair_mode;
    j["hop_budget"] = hop_budget;
    j["eps"] = format_rational(eps);
    j["pairs_checked"] = pairs_checked;
    j["passed"] = passed();
    j["max_stretch"] = unbounded ? std::string("inf") : format_rational(max_stretch);
    j["max_stretch_approx"] = unbounded ? std::numeric_limits<double>::infinity() : to_double(max_stretch);
    j["min_stretch"] = format_rational(min_stretch);
    j["max_rounds"] = max_rounds;
    j["hopset_edges"] = hopset_edges;
    j["star_edges"] = star_edges;
    nlohmann::ordered_json scales = nlohmann::ordered_json::object();
    for (const auto& [k, c] : per_scale_sizes) scales[std::to_string(k)] = c;
    j["per_scale_sizes"] = scales;
    j["violation_count"] = violation_count;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& v : violations) {
      nlohmann::ordered_json e;
      e["u"] = v.u + 1;
      e["v"] = v.v + 1;
      e["d_graph"] = to_string(v.d_graph);
      e["d_limited"] = v.d_limited.is_infinite() ? std::string("inf")
                                                 : format_rational(v.d_limited.as_rational(denominator));
      e["reason"] = v.reason;
      list.push_back(e);
    }
    j["violations"] = list;
    j["seed"] = seed;
    j["wall_ms"] = wall_ms;
    return j;
  }
};

namespace detail {

struct SourceOutcome {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<StretchViolation> listed;
  bool have_ratio = false;
  BigInt max_num, max_den, min_num, min_den;
  std::uint64_t rounds = 0;
  bool unreached = false;
};

}  // namespace detail

inline VerificationReport verify_stretch(const Graph& g, const Hopset& hs, const PairMode& mode,
                                         const VerifyOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  const auto n = g.vertex_count();
  if (hs.n != n)
    throw ParameterError("hopset has n = " + std::to_string(hs.n) + " but the graph has n = " + std::to_string(n));
  if (std::holds_alternative<AllPairs>(mode) && n > options.max_all_pairs)
    throw ParameterError("all-pairs verification is limited to n <= " + std::to_string(options.max_all_pairs));

  VerificationReport report;
  report.n = n;
  report.pair_mode = describe(mode);
  report.hop_budget = options.hop_budget ? *options.hop_budget : hs.effective_beta;
  report.eps = options.eps ? *options.eps : hs.effective_eps;
  report.denominator = hs.denominator;
  report.hopset_edges = hs.edges.size();
  report.star_edges = hs.star_count();
  for (const auto& e : hs.edges) ++report.per_scale_sizes[e.scale];

  // Targets per source.
  std::vector<std::vector<Vertex>> targets(n);
  bool every_target = false;
  if (std::holds_alternative<AllPairs>(mode) || std::holds_alternative<BandPairs>(mode)) {
    every_target = true;
  } else {
    const auto& s = std::get<SamplePairs>(mode);
    report.seed = s.seed;
    const auto comp = connected_components(g);
    std::vector<std::vector<Vertex>> members;
    for (Vertex v = 0; v < n; ++v) {
      if (comp[v] >= members.size()) members.resize(comp[v] + 1);
      members[comp[v]].push_back(v);
    }
    std::vector<std::uint64_t> cumulative(n, 0);  // ordered pairs starting at v, prefix sums
    std::uint64_t total = 0;
    for (Vertex v = 0; v < n; ++v) cumulative[v] = (total += members[comp[v]].size() - 1);
    if (total > 0) {
      Rng rng(derive_seed(s.seed, 0x76657269));
      for (std::size_t i = 0; i < s.count; ++i) {
        const std::uint64_t r = uniform_below(rng, total);
        const Vertex src = static_cast<Vertex>(std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin());
        const auto& group = members[comp[src]];
        const auto pos = static_cast<std::size_t>(std::lower_bound(group.begin(), group.end(), src) - group.begin());
        auto j = static_cast<std::size_t>(uniform_below(rng, group.size() - 1));
        if (j >= pos) ++j;
        const Vertex dst = group[j];
        targets[src].push_back(dst);
      }
    }
  }

  std::optional<int> band;
  if (const auto* b = std::get_if<BandPairs>(&mode)) band = b->k;

  const auto extra = hs.extra_edges();
  const UnionAdjacency union_graph(g, hs.denominator, extra);
  const auto base = WeightedAdjacency::from_graph(g, 1);
  const BigInt eps_num = numerator(report.eps);
  const BigInt eps_den = denominator(report.eps);
  const BigInt D = to_bigint(hs.denominator);

  std::vector<detail::SourceOutcome> outcomes(n);
  parallel_for(n, options.jobs, [&](std::size_t si) {
    const auto s = static_cast<Vertex>(si);
    if (!every_target && targets[s].empty()) return;
    auto& out = outcomes[s];
    const auto dg = shortest_distances(base, s);
    const HopLimitedRow row = hop_limited_row(union_graph, s, report.hop_budget);
    out.rounds = row.rounds;
    auto check = [&](Vertex v) {
      if (v == s || dg[v].is_infinite()) return;
      const Int128 d = dg[v].raw();
      if (band) {
        const Int128 lo = *band >= 126 ? kInt128Max : (Int128{1} << *band);
        const Int128 hi = *band + 1 >= 126 ? kInt128Max : (Int128{1} << (*band + 1));
        if (!(d > lo && d <= hi)) return;
      }
      ++out.checked;
      const WeightValue lim = row.dist[v];
      const BigInt scaled_dg = to_bigint(d) * D;
      std::string reason;
      if (lim.is_infinite()) {
        reason = "stretch";
        out.unreached = true;
      } else {
        const BigInt dl = to_bigint(lim.raw());
        if (dl < scaled_dg)
          reason = "shortcut";
        else if (dl * eps_den > (eps_den + eps_num) * scaled_dg)
          reason = "stretch";
        const BigInt& num = dl;
        const BigInt& den = scaled_dg;
        if (!out.have_ratio) {
          out.max_num = out.min_num = num;
          out.max_den = out.min_den = den;
          out.have_ratio = true;
        } else {
          if (num * out.max_den > out.max_num * den) out.max_num = num, out.max_den = den;
          if (num * out.min_den < out.min_num * den) out.min_num = num, out.min_den = den;
        }
      }
      if (!reason.empty()) {
        ++out.violations;
        if (out.listed.size() < options.max_listed_violations) out.listed.push_back({s, v, d, lim, reason});
      }
    };
    if (every_target)
      for (Vertex v = 0; v < n; ++v) check(v);
    else
      for (Vertex v : targets[s]) check(v);
  });

  bool have_ratio = false;
  bool any_infinite = false;
  BigInt max_num = 0, max_den = 1, min_num = 0, min_den = 1;
  for (const auto& o : outcomes) {
    report.pairs_checked += o.checked;
    report.violation_count += o.violations;
    report.max_rounds = std::max(report.max_rounds, o.rounds);
    any_infinite = any_infinite || o.unreached;
    for (const auto& v : o.listed) {
      if (report.violations.size() < options.max_listed_violations) report.violations.push_back(v);
    }
    if (!o.have_ratio) continue;
    if (!have_ratio || o.max_num * max_den > max_num * o.max_den) max_num = o.max_num, max_den = o.max_den;
    if (!have_ratio || o.min_num * min_den < min_num * o.min_den) min_num = o.min_num, min_den = o.min_den;
    have_ratio = true;
  }
  if (have_ratio) {
    report.max_stretch = Rational(max_num, max_den);
    report.min_stretch = Rational(min_num, min_den);
  }
  report.unbounded = any_infinite;
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

struct SizeStats {
  std::size_t n = 0;
  int kappa = 2;
  std::size_t total = 0;
  std::size_t star_edges = 0;
  std::map<int, std::size_t> per_scale;
  double normalized = 0.0;      // total / (n^{1+1/kappa} ln n)
  double star_bound = 0.0;      // n log2 n
  bool star_within_bound = true;
};

inline SizeStats size_stats(const Hopset& hs, std::size_t n, int kappa) {
  SizeStats s;
  s.n = n;
  s.kappa = kappa;
  s.total = hs.edges.size();
  s.star_edges = hs.star_count();
  for (const auto& e : hs.edges) ++s.per_scale[e.scale];
  const double nd = static_cast<double>(n);
  const double denom = n > 1 ? std::pow(nd, 1.0 + 1.0 / kappa) * std::log(nd) : 0.0;
  s.normalized = denom > 0 ? static_cast<double>(s.total) / denom : 0.0;
  s.star_bound = n > 1 ? nd * std::log2(nd) : 0.0;
  s.star_within_bound = static_cast<double>(s.star_edges) <= s.star_bound;
  return s;
}

}  // namespace hopsets
