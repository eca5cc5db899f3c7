#pragma once

// Command-line front end: gen, build, verify, query, stats, bench.
// Exit codes: 0 ok, 1 usage, 2 I/O or parse error, 3 parameter rejection,
// 4 contract violation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hopsets/hopsets.hpp"

namespace hopsets::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIoError = 2, kParameter = 3, kContract = 4 };

namespace detail {

// Opens `path` for writing, or returns the fallback stream for "" and "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw IoError("cannot open " + path + " for writing");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }
  void close() {
    if (!file_) return;
    file_->close();
    if (!*file_) throw IoError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline std::vector<Vertex> parse_sources(const std::string& spec, std::size_t n) {
  std::vector<Vertex> out;
  if (spec == "all") {
    for (Vertex v = 0; v < n; ++v) out.push_back(v);
    return out;
  }
  std::stringstream s(spec);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.empty()) continue;
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("malformed vertex id '" + item + "'");
    }
    if (v < 1 || v > n) throw ParameterError("vertex " + item + " outside [1, " + std::to_string(n) + "]");
    out.push_back(static_cast<Vertex>(v - 1));
  }
  if (out.empty()) throw ParameterError("no sources given");
  return out;
}

struct BuildFlags {
  int kappa = 2;
  std::string rho = "1/2";
  std::string eps = "0.3";
  std::uint64_t seed = 1;
  std::string mode = "reduced";
  std::string degree = "basic";
  bool paths = false;
  std::string eps_internal;
  std::string lambda;
};

inline HopsetParams to_params(const BuildFlags& f, unsigned jobs) {
  HopsetParams p;
  p.kappa = f.kappa;
  p.rho = parse_rational(f.rho);
  p.eps = parse_rational(f.eps);
  p.seed = f.seed;
  p.mode = parse_hopset_mode(f.mode);
  p.degree_mode = parse_degree_mode(f.degree);
  p.path_reporting = f.paths;
  if (!f.eps_internal.empty()) p.eps_internal = parse_rational(f.eps_internal);
  if (!f.lambda.empty()) p.lambda_hint = parse_int128(f.lambda);
  p.jobs = jobs;
  return p;
}

inline void add_build_flags(CLI::App* cmd, BuildFlags& f) {
  cmd->add_option("--kappa", f.kappa, "size/hopbound trade-off kappa >= 2")->capture_default_str();
  cmd->add_option("--rho", f.rho, "time exponent, 1/kappa <= rho <= 1/2")->capture_default_str();
  cmd->add_option("--eps", f.eps, "target stretch slack")->capture_default_str();
  cmd->add_option("--seed", f.seed, "sampling seed")->capture_default_str();
  cmd->add_option("--mode", f.mode, "direct or reduced")->capture_default_str();
  cmd->add_option("--degree", f.degree, "basic or refined degree sequence")->capture_default_str();
  cmd->add_flag("--paths", f.paths, "record witness paths");
  cmd->add_option("--eps-internal", f.eps_internal, "override the single-scale epsilon");
  cmd->add_option("--lambda", f.lambda, "upper bound on the largest distance (direct mode)");
}

inline PairMode parse_pair_mode(const std::string& pairs, std::size_t samples, std::uint64_t pair_seed, int band) {
  if (pairs == "all") return AllPairs{};
  if (pairs == "sample") return SamplePairs{samples, pair_seed};
  if (pairs == "band") return BandPairs{band};
  throw ParameterError("unknown pair mode '" + pairs + "' (expected all, sample or band)");
}

inline void print_summary(std::ostream& out, const VerificationReport& r) {
  auto row = [&](const std::string& k, const std::string& v) {
    out << k << std::string(k.size() < 18 ? 18 - k.size() : 1, ' ') << v << '\n';
  };
  row("pairs", r.pair_mode);
  row("pairs checked", std::to_string(r.pairs_checked));
  row("hop budget", std::to_string(r.hop_budget));
  row("eps", format_rational(r.eps));
  row("hopset edges", std::to_string(r.hopset_edges));
  row("star edges", std::to_string(r.star_edges));
  if (r.unbounded)
    row("max stretch", "inf");
  else {
    std::ostringstream s;
    s.precision(9);
    s << to_double(r.max_stretch);
    row("max stretch", format_rational(r.max_stretch) + " (" + s.str() + ")");
  }
  row("violations", std::to_string(r.violation_count));
  for (const auto& v : r.violations)
    out << "  violation " << v.reason << " u=" << v.u + 1 << " v=" << v.v + 1 << " d_G=" << to_string(v.d_graph)
        << " d_lim="
        << (v.d_limited.is_infinite() ? std::string("inf") : format_rational(v.d_limited.as_rational(r.denominator)))
        << '\n';
  row("result", r.passed() ? "PASS" : "FAIL");
}

struct BenchRow {
  std::size_t n = 0, m = 0;
  int kappa = 2;
  std::string rho, eps, mode;
  std::uint64_t seed = 0;
  int ell = 0;
  std::uint64_t beta = 0;
  std::size_t hopset_edges = 0, s_edges = 0;
  double build_ms = 0;
  std::string max_stretch;
};

inline GraphModel bench_model(const nlohmann::json& cfg, std::size_t n) {
  const std::string model = cfg.value("model", "er");
  if (model == "er")
    return ErdosRenyi{n, cfg.value("p", 0.1), cfg.value("wmin", EdgeWeight{1}), cfg.value("wmax", EdgeWeight{8})};
  if (model == "path") return GeometricPath{n, parse_rational(cfg.value("base", std::string("1")))};
  if (model == "grid") {
    const auto side = static_cast<std::size_t>(std::max(1.0, std::floor(std::sqrt(static_cast<double>(n)))));
    return Grid{side, (n + side - 1) / side, cfg.value("wmin", EdgeWeight{1}), cfg.value("wmax", EdgeWeight{8})};
  }
  throw ParameterError("unknown bench model '" + model + "'");
}

template <typename T>
std::vector<T> list_of(const nlohmann::json& cfg, const char* key, std::vector<T> fallback) {
  if (!cfg.contains(key)) return fallback;
  const auto& v = cfg.at(key);
  if (!v.is_array()) return {v.get<T>()};
  return v.get<std::vector<T>>();
}

inline std::string json_to_rational_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  std::ostringstream s;
  s << v.dump();
  return s.str();
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hopset construction, verification and approximate shortest paths", "hopsets"};
  app.require_subcommand(1);
  unsigned jobs = default_jobs();
  app.add_option("--jobs", jobs, "worker threads (default: HOPSETS_JOBS or 1)");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic graph in DIMACS format");
  std::string model = "er", gen_out;
  std::size_t gen_n = 0, rows = 0, cols = 0;
  double p = 0.1;
  EdgeWeight wmin = 1, wmax = 1;
  std::string base = "1";
  std::uint64_t gen_seed = 1;
  gen->add_option("--model", model, "er, path or grid")->capture_default_str();
  gen->add_option("--n", gen_n, "vertex count (er, path)");
  gen->add_option("--p", p, "edge probability (er)");
  gen->add_option("--wmin", wmin, "minimum weight");
  gen->add_option("--wmax", wmax, "maximum weight");
  gen->add_option("--base", base, "geometric base (path)");
  gen->add_option("--rows", rows, "grid rows");
  gen->add_option("--cols", cols, "grid columns");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  // build
  auto* build = app.add_subcommand("build", "build a hopset for a DIMACS graph");
  std::string graph_path, hopset_path, build_out;
  detail::BuildFlags flags;
  build->add_option("-g,--graph", graph_path, "input graph (.gr)")->required();
  build->add_option("-o,--output", build_out, "hopset file (default stdout)");
  detail::add_build_flags(build, flags);

  // verify
  auto* verify = app.add_subcommand("verify", "check the (beta, eps) contract against exact oracles");
  std::string pairs = "all", format = "text", report_path;
  std::size_t samples = 1000;
  std::uint64_t pair_seed = 1;
  int band = 0;
  verify->add_option("-g,--graph", graph_path, "input graph (.gr)")->required();
  verify->add_option("-H,--hopset", hopset_path, "hopset file")->required();
  verify->add_option("--pairs", pairs, "all, sample or band")->capture_default_str();
  verify->add_option("--samples", samples, "pair count for --pairs sample")->capture_default_str();
  verify->add_option("--pair-seed", pair_seed, "seed for --pairs sample")->capture_default_str();
  verify->add_option("--band", band, "scale k for --pairs band");
  verify->add_option("--format", format, "text or json")->capture_default_str();
  verify->add_option("--report", report_path, "write the JSON report here");

  // query
  auto* query = app.add_subcommand("query", "approximate distances from a set of sources");
  std::string sources = "1", csv_out, paths_out, targets = "all";
  query->add_option("-g,--graph", graph_path, "input graph (.gr)")->required();
  query->add_option("-H,--hopset", hopset_path, "hopset file")->required();
  query->add_option("-s,--sources", sources, "comma-separated 1-based ids, or all")->capture_default_str();
  query->add_option("-o,--output", csv_out, "CSV output (default stdout)");
  query->add_option("--paths-out", paths_out, "write extracted paths here");
  query->add_option("--targets", targets, "targets for path extraction")->capture_default_str();

  // stats
  auto* stats = app.add_subcommand("stats", "size accounting of a hopset file");
  stats->add_option("-H,--hopset", hopset_path, "hopset file")->required();
  stats->add_option("--format", format, "text or json")->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "parameter sweep from a JSON config, CSV output");
  std::string config_path, bench_out;
  bench->add_option("-c,--config", config_path, "sweep configuration (JSON)")->required();
  bench->add_option("-o,--output", bench_out, "CSV output (default stdout)");

  std::vector<const char*> argv{"hopsets"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (jobs < 1) jobs = 1;

  try {
    if (*gen) {
      GraphModel m;
      if (model == "er")
        m = ErdosRenyi{gen_n, p, wmin, wmax};
      else if (model == "path")
        m = GeometricPath{gen_n, parse_rational(base)};
      else if (model == "grid")
        m = Grid{rows, cols, wmin, wmax};
      else
        throw ParameterError("unknown model '" + model + "'");
      const Graph g = generate_graph(m, gen_seed);
      detail::Output o(gen_out, out);
      write_dimacs(o.get(), g,
                   {"provenance generator=" + describe(m) + " seed=" + std::to_string(gen_seed) +
                    " digest=" + hex_digest(g.digest())});
      o.close();
      return kOk;
    }

    if (*build) {
      const Graph g = read_dimacs_file(graph_path);
      const HopsetParams params = detail::to_params(flags, jobs);
      const Hopset hs = build_hopset(g, params);
      detail::Output o(build_out, out);
      write_hopset(o.get(), hs);
      o.close();
      err << "built " << hs.edges.size() << " edges (" << hs.star_count() << " star), effective beta "
          << hs.effective_beta << ", eps " << format_rational(hs.effective_eps) << '\n';
      return kOk;
    }

    if (*verify) {
      const Graph g = read_dimacs_file(graph_path);
      const Hopset hs = read_hopset_file(hopset_path);
      if (hs.provenance.graph_digest != 0 && hs.provenance.graph_digest != g.digest())
        err << "warning: hopset was built for graph " << hex_digest(hs.provenance.graph_digest) << ", not "
            << hex_digest(g.digest()) << '\n';
      VerifyOptions vo;
      vo.jobs = jobs;
      const auto report = verify_stretch(g, hs, detail::parse_pair_mode(pairs, samples, pair_seed, band), vo);
      if (format == "json")
        out << report.to_json().dump(2) << '\n';
      else if (format == "text")
        detail::print_summary(out, report);
      else
        throw ParameterError("unknown format '" + format + "'");
      if (!report_path.empty()) {
        detail::Output o(report_path, out);
        o.get() << report.to_json().dump(2) << '\n';
        o.close();
      }
      return report.passed() ? kOk : kContract;
    }

    if (*query) {
      const Graph g = read_dimacs_file(graph_path);
      const Hopset hs = read_hopset_file(hopset_path);
      const auto srcs = detail::parse_sources(sources, g.vertex_count());
      detail::Output o(csv_out, out);
      o.get() << "# provenance graph=" << hex_digest(g.digest()) << " hopset " << provenance_line(hs.provenance)
              << " beta=" << hs.effective_beta << " sources=" << sources << '\n';
      o.get() << "source,vertex,estimate_num,estimate_den\n";
      std::unique_ptr<detail::Output> paths;
      std::vector<Vertex> path_targets;
      if (!paths_out.empty()) {
        paths = std::make_unique<detail::Output>(paths_out, out);
        path_targets = detail::parse_sources(targets, g.vertex_count());
      }
      AspResult single;
      single.denominator = hs.denominator;
      single.budget = hs.effective_beta;
      asp_stream(g, hs, srcs, jobs, [&](const HopLimitedRow& row) {
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
          o.get() << row.source + 1 << ',' << v + 1 << ',';
          if (row.dist[v].is_infinite()) {
            o.get() << "inf,1\n";
          } else {
            const Rational q = row.dist[v].as_rational(hs.denominator);
            o.get() << numerator(q) << ',' << denominator(q) << '\n';
          }
        }
        if (paths) {
          single.sources = {row.source};
          single.rows = {row};
          for (Vertex t : path_targets) {
            if (t == row.source || row.dist[t].is_infinite()) continue;
            const GraphPath gp = extract_path(g, hs, single, row.source, t);
            for (std::size_t i = 0; i < gp.vertices.size(); ++i)
              paths->get() << (i ? " " : "") << gp.vertices[i] + 1;
            paths->get() << '\n';
          }
        }
      });
      o.close();
      if (paths) paths->close();
      return kOk;
    }

    if (*stats) {
      const Hopset hs = read_hopset_file(hopset_path);
      const SizeStats s = size_stats(hs, hs.n, hs.provenance.kappa);
      if (format == "json") {
        nlohmann::ordered_json j;
        j["n"] = s.n;
        j["kappa"] = s.kappa;
        j["edges"] = s.total;
        j["star_edges"] = s.star_edges;
        j["star_bound"] = s.star_bound;
        j["star_within_bound"] = s.star_within_bound;
        j["normalized"] = s.normalized;
        nlohmann::ordered_json per = nlohmann::ordered_json::object();
        for (const auto& [k, c] : s.per_scale) per[std::to_string(k)] = c;
        j["per_scale"] = per;
        out << j.dump(2) << '\n';
      } else {
        out << "n                 " << s.n << '\n'
            << "edges             " << s.total << '\n'
            << "star edges        " << s.star_edges << " (bound n log2 n = " << s.star_bound << ")\n"
            << "|H|/(n^(1+1/k) ln n) " << s.normalized << '\n';
        for (const auto& [k, c] : s.per_scale) out << "  scale " << k << ": " << c << '\n';
      }
      return kOk;
    }

    if (*bench) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot open bench config " + config_path);
      nlohmann::json cfg;
      try {
        cfg = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("bench config: ") + e.what());
      }
      detail::Output o(bench_out, out);
      o.get() << "n,m,kappa,rho,eps,mode,seed,ell,beta,hopset_edges,s_edges,build_ms,verify_max_stretch\n";
      try {
        const auto ns = detail::list_of<std::size_t>(cfg, "n", {64});
        const auto kappas = detail::list_of<int>(cfg, "kappa", {2});
        const auto modes = detail::list_of<std::string>(cfg, "mode", {"reduced"});
        const auto seeds = detail::list_of<std::uint64_t>(cfg, "seeds", {1});
        std::vector<std::string> rhos{"1/2"}, epss{"0.3"};
        if (cfg.contains("rho")) {
          rhos.clear();
          for (const auto& v : cfg["rho"].is_array() ? cfg["rho"] : nlohmann::json::array({cfg["rho"]}))
            rhos.push_back(detail::json_to_rational_text(v));
        }
        if (cfg.contains("eps")) {
          epss.clear();
          for (const auto& v : cfg["eps"].is_array() ? cfg["eps"] : nlohmann::json::array({cfg["eps"]}))
            epss.push_back(detail::json_to_rational_text(v));
        }
        const std::size_t verify_pairs = cfg.value("verify_pairs", std::size_t{0});
        for (std::size_t n : ns)
          for (int kappa : kappas)
            for (const auto& rho : rhos)
              for (const auto& eps : epss)
                for (const auto& mode : modes)
                  for (std::uint64_t seed : seeds) {
                    const Graph g = generate_graph(detail::bench_model(cfg, n), seed);
                    detail::BuildFlags f;
                    f.kappa = kappa;
                    f.rho = rho;
                    f.eps = eps;
                    f.mode = mode;
                    f.seed = seed;
                    const HopsetParams params = detail::to_params(f, jobs);
                    const HopsetPlan pl = plan(params, g.vertex_count());
                    const auto t0 = std::chrono::steady_clock::now();
                    const Hopset hs = build_hopset(g, params);
                    const double ms =
                        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
                    std::string stretch = "";
                    if (verify_pairs > 0) {
                      VerifyOptions vo;
                      vo.jobs = jobs;
                      const auto r = verify_stretch(g, hs, SamplePairs{verify_pairs, seed}, vo);
                      std::ostringstream s;
                      s.precision(9);
                      if (r.unbounded)
                        s << "inf";
                      else
                        s << to_double(r.max_stretch);
                      stretch = s.str();
                    }
                    o.get() << g.vertex_count() << ',' << g.edge_count() << ',' << kappa << ','
                            << format_rational(params.rho) << ',' << format_rational(params.eps) << ',' << mode << ','
                            << seed << ',' << pl.layout.ell << ',' << hs.effective_beta << ',' << hs.edges.size()
                            << ',' << hs.star_count() << ',' << ms << ',' << stretch << '\n';
                  }
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(0, std::string("bench config: ") + e.what());
      }
      o.close();
      return kOk;
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kParameter;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kContract;
  }
  return kUsage;
}

}  // namespace hopsets::cli
