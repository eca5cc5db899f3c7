#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "hopsets/errors.hpp"
#include "hopsets/graph.hpp"
#include "hopsets/rng.hpp"
#include "hopsets/weight.hpp"

namespace hopsets {

// G(n, p) with uniform integer weights in [wmin, wmax].
struct ErdosRenyi {
  std::size_t n = 0;
  double p = 0.0;
  EdgeWeight wmin = 1;
  EdgeWeight wmax = 1;
};

// Path 0-1-...-(n-1); edge i has weight floor(base^i), at least 1.
struct GeometricPath {
  std::size_t n = 0;
  Rational base = 1;
};

// 4-neighbour grid, row-major ids, uniform integer weights.
struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  EdgeWeight wmin = 1;
  EdgeWeight wmax = 1;
};

using GraphModel = std::variant<ErdosRenyi, GeometricPath, Grid>;

namespace detail {

inline void check_weight_range(EdgeWeight wmin, EdgeWeight wmax) {
  if (wmin < 1 || wmin > wmax || wmax > kMaxEdgeWeight)
    throw ParameterError("weights must satisfy 1 <= wmin <= wmax <= 2^62");
}

}  // namespace detail

inline Graph generate_graph(const GraphModel& model, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x67656e));
  return std::visit(
      [&](const auto& m) -> Graph {
        using M = std::decay_t<decltype(m)>;
        std::vector<Edge> edges;
        if constexpr (std::is_same_v<M, ErdosRenyi>) {
          if (m.n < 2) throw ParameterError("er: n must be >= 2");
          if (!(m.p > 0.0 && m.p <= 1.0)) throw ParameterError("er: p must lie in (0, 1]");
          detail::check_weight_range(m.wmin, m.wmax);
          for (Vertex u = 0; u < m.n; ++u)
            for (Vertex v = u + 1; v < m.n; ++v)
              if (bernoulli(rng, m.p)) edges.push_back({u, v, uniform_int(rng, m.wmin, m.wmax)});
          return Graph::from_edges(m.n, std::move(edges));
        } else if constexpr (std::is_same_v<M, GeometricPath>) {
          if (m.n < 2) throw ParameterError("path: n must be >= 2");
          if (m.base < 1) throw ParameterError("path: geometric base must be >= 1");
          Rational power = 1;
          for (Vertex i = 0; i + 1 < m.n; ++i) {
            BigInt w = floor_nonnegative(power);
            if (w < 1) w = 1;
            if (w > kMaxEdgeWeight) throw ParameterError("path: edge " + std::to_string(i) + " weight exceeds 2^62");
            edges.push_back({i, i + 1, static_cast<EdgeWeight>(w)});
            power *= m.base;
          }
          return Graph::from_edges(m.n, std::move(edges));
        } else {
          if (m.rows * m.cols < 2) throw ParameterError("grid: needs at least 2 vertices");
          detail::check_weight_range(m.wmin, m.wmax);
          auto id = [&](std::size_t r, std::size_t c) { return static_cast<Vertex>(r * m.cols + c); };
          for (std::size_t r = 0; r < m.rows; ++r)
            for (std::size_t c = 0; c < m.cols; ++c) {
              if (c + 1 < m.cols) edges.push_back({id(r, c), id(r, c + 1), uniform_int(rng, m.wmin, m.wmax)});
              if (r + 1 < m.rows) edges.push_back({id(r, c), id(r + 1, c), uniform_int(rng, m.wmin, m.wmax)});
            }
          return Graph::from_edges(m.rows * m.cols, std::move(edges));
        }
      },
      model);
}

inline std::string describe(const GraphModel& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, ErdosRenyi>) {
          std::ostringstream p;
          p.precision(17);
          p << m.p;
          return "er n=" + std::to_string(m.n) + " p=" + p.str() + " wmin=" + std::to_string(m.wmin) +
                 " wmax=" + std::to_string(m.wmax);
        } else if constexpr (std::is_same_v<M, GeometricPath>) {
          return "path n=" + std::to_string(m.n) + " base=" + format_rational(m.base);
        } else {
          return "grid rows=" + std::to_string(m.rows) + " cols=" + std::to_string(m.cols) +
                 " wmin=" + std::to_string(m.wmin) + " wmax=" + std::to_string(m.wmax);
        }
      },
      model);
}

}  // namespace hopsets
