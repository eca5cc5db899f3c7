#pragma once

// Per-scale phase schedule of the superclustering/interconnection
// construction: phase count, distance thresholds, cluster radii, sampling
// degrees and the hopbound recurrence. Thresholds and hop values are exact
// rationals; only the sampling degrees are floating point.

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hopsets/errors.hpp"
#include "hopsets/weight.hpp"

namespace hopsets {

enum class DegreeMode { basic, refined };

inline const char* to_string(DegreeMode mode) { return mode == DegreeMode::basic ? "basic" : "refined"; }

inline DegreeMode parse_degree_mode(const std::string& text) {
  if (text == "basic") return DegreeMode::basic;
  if (text == "refined") return DegreeMode::refined;
  throw ParameterError("unknown degree mode '" + text + "' (expected basic or refined)");
}

inline std::uint64_t saturate_u64(const BigInt& value) {
  if (value < 0) return 0;
  if (value > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(value);
}

// Phase-count structure; depends only on (kappa, rho, mode).
struct PhaseLayout {
  int i0 = 0;   // last phase of the first stage
  int i1 = 0;   // last phase with a superclustering step
  int ell = 0;  // concluding (interconnect-only) phase
};

inline void check_kappa_rho(int kappa, const Rational& rho) {
  if (kappa < 2) throw ParameterError("kappa must be >= 2");
  if (rho <= 0) throw ParameterError("rho must be positive");
  if (rho > Rational(1, 2)) throw ParameterError("rho must be <= 1/2");
  if (kappa * rho < 1)
    throw ParameterError("kappa*rho = " + format_rational(kappa * rho) +
                         " < 1: the first stage would have a negative last phase; choose rho >= 1/kappa");
}

inline PhaseLayout phase_layout(int kappa, const Rational& rho, DegreeMode mode) {
  check_kappa_rho(kappa, rho);
  PhaseLayout layout;
  const Rational kr = kappa * rho;
  while (Rational(BigInt(1) << (layout.i0 + 1)) <= kr) ++layout.i0;
  const auto stage2 = static_cast<int>(ceil_nonnegative(Rational(kappa + 1) / kr));
  layout.i1 = layout.i0 + stage2 - (mode == DegreeMode::basic ? 2 : 1);
  layout.ell = layout.i1 + 1;
  return layout;
}

// h_0 = 1, h_{i+1} = (h_i + 1)(1/eps + 2) + 2i + 5, for i < ell.
inline std::vector<Rational> hop_recurrence(const Rational& eps, int ell) {
  std::vector<Rational> h{Rational(1)};
  const Rational factor = 1 / eps + 2;
  for (int i = 0; i < ell; ++i) h.push_back((h.back() + 1) * factor + 2 * i + 5);
  return h;
}

struct PhaseSchedule {
  std::size_t n = 0;
  int kappa = 2;
  Rational rho{1, 2};
  Rational eps;   // internal epsilon driving thresholds and the hop recurrence
  Rational rhat;  // 2^{k+1}
  DegreeMode degree_mode = DegreeMode::basic;

  int i0 = 0;
  int i1 = 0;
  int ell = 0;
  Rational alpha;
  std::vector<Rational> delta;   // delta_0 .. delta_ell
  std::vector<Rational> radius;  // R_0 .. R_ell
  std::vector<double> deg;       // deg_0 .. deg_{i1}
  std::vector<Rational> h;       // h_0 .. h_ell
  std::uint64_t beta = 0;        // floor(2 h_ell + 1), saturated
  bool kappa_in_theorem_range = false;  // kappa <= log2(n)/4

  // Stretch slack of the single-scale guarantee: 16 c (ell+1) eps with c = 2.
  Rational zeta() const { return 32 * (ell + 1) * eps; }

  std::uint64_t hops(int i) const { return saturate_u64(floor_nonnegative(h.at(i))); }

  // delta_i and delta_i / 2 in units of 1/denominator, floored. A distance
  // d = raw/denominator satisfies d <= delta_i iff raw <= the floored value.
  WeightValue superclustering_depth(int i, Int128 denominator) const {
    return WeightValue::from_raw(to_int128(floor_nonnegative(delta.at(i) * to_bigint(denominator))));
  }
  WeightValue interconnection_depth(int i, Int128 denominator) const {
    return WeightValue::from_raw(to_int128(floor_nonnegative(delta.at(i) * to_bigint(denominator) / 2)));
  }
};

// Evaluates the recurrences for any eps in (0, 1); construction goes through
// compute_schedule.
inline PhaseSchedule evaluate_schedule(std::size_t n, int kappa, const Rational& rho, const Rational& eps,
                                       const Rational& rhat, DegreeMode mode = DegreeMode::basic) {
  if (n < 1) throw ParameterError("schedule needs n >= 1");
  if (eps <= 0 || eps >= 1) throw ParameterError("epsilon " + format_rational(eps) + " must lie in (0, 1)");
  if (rhat <= 0) throw ParameterError("scale radius must be positive");
  const PhaseLayout layout = phase_layout(kappa, rho, mode);

  PhaseSchedule s;
  s.n = n;
  s.kappa = kappa;
  s.rho = rho;
  s.eps = eps;
  s.rhat = rhat;
  s.degree_mode = mode;
  s.i0 = layout.i0;
  s.i1 = layout.i1;
  s.ell = layout.ell;

  Rational eps_pow = 1;
  for (int i = 0; i < s.ell; ++i) eps_pow *= eps;
  s.alpha = eps_pow * rhat;

  const Rational inv = 1 / eps;
  Rational growth = 1;  // (1/eps)^i
  Rational r = 0;
  for (int i = 0; i <= s.ell; ++i) {
    const Rational d = s.alpha * growth + 4 * r;
    s.radius.push_back(r);
    s.delta.push_back(d);
    r = d + r;
    growth *= inv;
  }

  const double nd = static_cast<double>(n);
  const double rho_d = to_double(rho);
  for (int i = 0; i <= s.i1; ++i) {
    double deg;
    if (i <= s.i0) {
      const double p2 = std::ldexp(1.0, i);
      deg = std::pow(nd, p2 / kappa);
      if (mode == DegreeMode::refined) deg /= std::ldexp(1.0, (1 << i) - 1);
    } else if (mode == DegreeMode::refined && i == s.i0 + 1) {
      deg = std::pow(nd, rho_d / 2);
    } else {
      deg = std::pow(nd, rho_d);
    }
    s.deg.push_back(deg);
  }

  s.h = hop_recurrence(eps, s.ell);
  s.beta = saturate_u64(floor_nonnegative(2 * s.h.back() + 1));
  s.kappa_in_theorem_range = std::ldexp(1.0, 4 * kappa) <= nd;
  return s;
}

inline PhaseSchedule compute_schedule(std::size_t n, int kappa, const Rational& rho, const Rational& eps,
                                      const Rational& rhat, DegreeMode mode = DegreeMode::basic) {
  if (eps <= 0 || eps >= Rational(1, 10))
    throw ParameterError("internal epsilon " + format_rational(eps) + " must lie in (0, 1/10)");
  return evaluate_schedule(n, kappa, rho, eps, rhat, mode);
}

}  // namespace hopsets
