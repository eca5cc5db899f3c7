#pragma once

// DIMACS shortest-path format (.gr): "c" comments, one "p sp <n> <m>" header,
// "a <u> <v> <w>" arcs with 1-based vertex ids. Arcs are read as undirected
// edges; (u,v)/(v,u) pairs and duplicates collapse to the minimum weight.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hopsets/errors.hpp"
#include "hopsets/graph.hpp"

namespace hopsets {

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no, const char* what) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(line_no, std::string("malformed ") + what + " '" + std::string(field) + "'");
  return value;
}

}  // namespace detail

inline Graph read_dimacs(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::uint64_t n = 0;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty() || fields[0] == "c") continue;
    if (fields[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      if (fields.size() != 4 || fields[1] != "sp") throw ParseError(line_no, "expected 'p sp <n> <m>'");
      n = detail::parse_number<std::uint64_t>(fields[2], line_no, "vertex count");
      detail::parse_number<std::uint64_t>(fields[3], line_no, "arc count");
      if (n >= kNoVertex) throw ParseError(line_no, "vertex count too large");
      have_header = true;
    } else if (fields[0] == "a") {
      if (!have_header) throw ParseError(line_no, "arc before problem line");
      if (fields.size() != 4) throw ParseError(line_no, "expected 'a <u> <v> <w>'");
      const auto u = detail::parse_number<std::int64_t>(fields[1], line_no, "vertex id");
      const auto v = detail::parse_number<std::int64_t>(fields[2], line_no, "vertex id");
      const auto w = detail::parse_number<std::int64_t>(fields[3], line_no, "weight");
      if (u < 1 || u > static_cast<std::int64_t>(n) || v < 1 || v > static_cast<std::int64_t>(n))
        throw ParseError(line_no, "vertex id out of range [1, " + std::to_string(n) + "]");
      if (w < 1) throw ParseError(line_no, "weight " + std::to_string(w) + " < 1");
      if (w > kMaxEdgeWeight) throw ParseError(line_no, "weight exceeds 2^62");
      edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w});
    } else {
      throw ParseError(line_no, "unknown line type '" + std::string(fields[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(line_no, "missing 'p sp' problem line");
  return Graph::from_edges(n, std::move(edges));
}

inline Graph read_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_dimacs(in);
}

inline Graph read_dimacs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file " + path.string());
  return read_dimacs(in);
}

inline void write_dimacs(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {}) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p sp " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << "a " << (e.u + 1) << ' ' << (e.v + 1) << ' ' << e.w << '\n';
}

}  // namespace hopsets
