#pragma once

// Text hopset format, version 1:
//
//   h 1 <n> <effective_beta> <eps_num>/<eps_den>
//   c provenance mode=... kappa=... rho=... eps=... seed=... degree=... paths=... eps_internal=... graph=<hex>
//   e <u> <v> <w_num>/<w_den> <scale> <kind>        (1-based vertices)
//   p <edge-index> <v1> <v2> ...                    (0-based edge index, 1-based vertices)
//
// Weights are written over the build's denominator without reduction, so a
// read reproduces them bit for bit.

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "hopsets/dimacs.hpp"
#include "hopsets/errors.hpp"
#include "hopsets/hopset.hpp"

namespace hopsets {

inline constexpr int kHopsetFormatVersion = 1;

inline std::string provenance_line(const Provenance& p) {
  std::ostringstream s;
  s << "provenance mode=" << to_string(p.mode) << " kappa=" << p.kappa << " rho=" << format_rational(p.rho)
    << " eps=" << format_rational(p.eps) << " seed=" << p.seed << " degree=" << to_string(p.degree_mode)
    << " paths=" << (p.path_reporting ? 1 : 0)
    << " eps_internal=" << (p.eps_internal ? format_rational(*p.eps_internal) : std::string("none"))
    << " graph=" << hex_digest(p.graph_digest);
  return s.str();
}

inline Provenance parse_provenance(std::string_view line, std::size_t line_no) {
  Provenance p;
  std::map<std::string, std::string> kv;
  const auto fields = detail::split_fields(line);
  std::size_t first = 0;
  if (first < fields.size() && fields[first] == "c") ++first;
  if (first < fields.size() && fields[first] == "provenance") ++first;
  for (std::size_t i = first; i < fields.size(); ++i) {
    const auto eq = fields[i].find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "malformed provenance field");
    kv[std::string(fields[i].substr(0, eq))] = std::string(fields[i].substr(eq + 1));
  }
  auto get = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(line_no, std::string("provenance lacks ") + key);
    return it->second;
  };
  try {
    p.mode = parse_hopset_mode(get("mode"));
    p.kappa = std::stoi(get("kappa"));
    p.rho = parse_rational(get("rho"));
    p.eps = parse_rational(get("eps"));
    p.seed = std::stoull(get("seed"));
    p.degree_mode = parse_degree_mode(get("degree"));
    p.path_reporting = get("paths") == "1";
    if (get("eps_internal") != "none") p.eps_internal = parse_rational(get("eps_internal"));
    p.graph_digest = std::stoull(get("graph"), nullptr, 16);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(line_no, std::string("bad provenance value: ") + e.what());
  }
  return p;
}

inline void write_hopset(std::ostream& out, const Hopset& hs) {
  out << "h " << kHopsetFormatVersion << ' ' << hs.n << ' ' << hs.effective_beta << ' '
      << numerator(hs.effective_eps) << '/' << denominator(hs.effective_eps) << '\n';
  out << "c " << provenance_line(hs.provenance) << '\n';
  const std::string den = to_string(hs.denominator);
  for (const auto& e : hs.edges)
    out << "e " << (e.u + 1) << ' ' << (e.v + 1) << ' ' << to_string(e.w.raw()) << '/' << den << ' ' << e.scale << ' '
        << to_string(e.kind) << '\n';
  for (std::size_t i = 0; i < hs.edges.size(); ++i) {
    const auto& w = hs.edges[i].witness;
    if (w.empty()) continue;
    out << "p " << i;
    for (Vertex v : w) out << ' ' << (v + 1);
    out << '\n';
  }
}

inline std::string hopset_to_string(const Hopset& hs) {
  std::ostringstream s;
  write_hopset(s, hs);
  return s.str();
}

inline Hopset read_hopset(std::istream& in) {
  Hopset hs;
  bool have_header = false;
  struct RawEdge {
    BigInt num, den;
  };
  std::vector<RawEdge> weights;
  std::string line;
  std::size_t line_no = 0;
  auto vertex = [&](std::string_view f) {
    const auto v = detail::parse_number<std::uint64_t>(f, line_no, "vertex id");
    if (v < 1 || v > hs.n) throw ParseError(line_no, "vertex id out of range [1, " + std::to_string(hs.n) + "]");
    return static_cast<Vertex>(v - 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto f = detail::split_fields(line);
    if (f.empty()) continue;
    if (f[0] == "c") {
      if (f.size() > 1 && f[1] == "provenance") hs.provenance = parse_provenance(line, line_no);
      continue;
    }
    if (f[0] == "h") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (f.size() != 5) throw ParseError(line_no, "expected 'h <version> <n> <beta> <eps>'");
      if (detail::parse_number<int>(f[1], line_no, "version") != kHopsetFormatVersion)
        throw ParseError(line_no, "unsupported hopset format version");
      hs.n = detail::parse_number<std::size_t>(f[2], line_no, "vertex count");
      hs.effective_beta = detail::parse_number<std::uint64_t>(f[3], line_no, "hopbound");
      try {
        hs.effective_eps = parse_rational(f[4]);
      } catch (const ParseError& e) {
        throw ParseError(line_no, e.what());
      }
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(line_no, "content before header");
    if (f[0] == "e") {
      if (f.size() != 6) throw ParseError(line_no, "expected 'e <u> <v> <num>/<den> <scale> <kind>'");
      HopsetEdge e;
      e.u = vertex(f[1]);
      e.v = vertex(f[2]);
      if (e.u > e.v) std::swap(e.u, e.v);
      const auto slash = f[3].find('/');
      if (slash == std::string_view::npos) throw ParseError(line_no, "weight must be written as num/den");
      RawEdge w{BigInt(to_bigint(parse_int128(f[3].substr(0, slash)))),
                BigInt(to_bigint(parse_int128(f[3].substr(slash + 1))))};
      if (w.den <= 0 || w.num <= 0) throw ParseError(line_no, "weight must be a positive fraction");
      weights.push_back(w);
      e.scale = detail::parse_number<int>(f[4], line_no, "scale");
      try {
        e.kind = parse_edge_kind(std::string(f[5]));
      } catch (const ParseError&) {
        throw ParseError(line_no, "unknown edge kind '" + std::string(f[5]) + "'");
      }
      hs.edges.push_back(std::move(e));
    } else if (f[0] == "p") {
      if (f.size() < 3) throw ParseError(line_no, "expected 'p <edge-index> <v1> ...'");
      const auto idx = detail::parse_number<std::size_t>(f[1], line_no, "edge index");
      if (idx >= hs.edges.size()) throw ParseError(line_no, "witness for unknown edge " + std::to_string(idx));
      auto& w = hs.edges[idx].witness;
      w.clear();
      for (std::size_t i = 2; i < f.size(); ++i) w.push_back(vertex(f[i]));
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(f[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing hopset header");

  BigInt den = 1;
  for (const auto& w : weights) den = boost::multiprecision::lcm(den, w.den);
  hs.denominator = to_int128(den);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if ((weights[i].num * (den / weights[i].den)) >= to_bigint(kInt128Max))
      throw ParseError(0, "edge " + std::to_string(i) + " weight exceeds the 128-bit range");
    hs.edges[i].w = WeightValue::from_raw(to_int128(weights[i].num * (den / weights[i].den)));
  }
  return hs;
}

inline Hopset read_hopset(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_hopset(in);
}

inline Hopset read_hopset_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open hopset file " + path.string());
  return read_hopset(in);
}

}  // namespace hopsets
