#pragma once

#include <cstdint>
#include <exception>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "subcount/counting.hpp"
#include "subcount/degrees.hpp"
#include "subcount/estimator.hpp"
#include "subcount/graph.hpp"
#include "subcount/pattern.hpp"
#include "subcount/report.hpp"
#include "subcount/sampling.hpp"
#include "subcount/verify.hpp"

namespace subcount {

enum class Command { exact, estimate, estimate_anchored, sample_size, degrees, verify };
enum class OutputFormat { text, csv };

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitVerification = 3,
  kExitOverflow = 4,
};

struct RunConfig {
  Command command = Command::exact;
  std::string graph_path;
  std::string degrees_csv_path;
  std::string pattern_spec = "clique:3";
  std::optional<int> root;
  TreeStrategy tree_strategy = TreeStrategy::bfs;
  std::optional<std::uint64_t> delta;
  std::optional<std::uint64_t> samples;
  std::optional<double> epsilon;
  std::optional<double> s;
  double p_conf = 0.05;
  std::string anchor_spec = "root";
  std::optional<std::string> sampler;
  std::uint64_t seed = 0;
  OutputFormat output_format = OutputFormat::text;
  std::optional<double> lambda;
  std::optional<unsigned> h;
  std::optional<double> moment;
  std::optional<unsigned> anchor_size;
  std::uint64_t trials = 1000;
  unsigned threads = 1;
  /// The exact value is reported next to estimates when n is at most this.
  std::uint64_t exact_limit = 5000;
};

namespace detail {

/// Error raised while handling a particular flag or file.
struct Failure {
  int code;
  std::string message;
};

class Stage {
 public:
  explicit Stage(std::string name) : name_(std::move(name)) {}

  template <class Fn>
  auto operator()(Fn fn) const -> decltype(fn()) {
    try {
      return fn();
    } catch (const ParameterError& e) {
      throw Failure{kExitUsage, name_ + ": " + e.what()};
    } catch (const CapabilityError& e) {
      throw Failure{kExitUsage, name_ + ": " + e.what()};
    } catch (const OverflowError& e) {
      throw Failure{kExitOverflow, name_ + ": " + e.what()};
    } catch (const Error& e) {
      throw Failure{kExitData, name_ + ": " + e.what()};
    }
  }

 private:
  std::string name_;
};

inline Graph read_graph_file(const RunConfig& c) {
  if (c.graph_path.empty()) throw Failure{kExitUsage, "--graph is required"};
  return Stage("--graph " + c.graph_path)([&] {
    std::ifstream in(c.graph_path);
    if (!in) throw ParseError(0, "cannot open file");
    return load_graph(in);
  });
}

inline Pattern read_pattern(const RunConfig& c, bool with_anchor) {
  Pattern p = Stage("--pattern " + c.pattern_spec)([&] {
    Pattern q = parse_pattern_spec(c.pattern_spec);
    return c.root ? q.with_root(*c.root) : q;
  });
  if (with_anchor) {
    p = Stage("--anchor " + c.anchor_spec)([&] { return p.with_anchor(parse_anchor_spec(c.anchor_spec)); });
  }
  return p;
}

inline void emit(const report::Record& rec, const RunConfig& c, std::ostream& out) {
  if (c.output_format == OutputFormat::csv) {
    rec.write_csv(out);
  } else {
    rec.write_text(out);
  }
}

inline std::uint64_t require_delta(const RunConfig& c) {
  if (!c.delta) throw Failure{kExitUsage, "--delta is required"};
  if (*c.delta < 1) throw Failure{kExitUsage, "--delta must be a positive integer"};
  return *c.delta;
}

inline int count_drivers(const RunConfig& c) {
  return (c.samples ? 1 : 0) + (c.epsilon ? 1 : 0) + (c.s ? 1 : 0);
}

inline int run_exact(const RunConfig& c, std::ostream& out) {
  Graph g = read_graph_file(c);
  Pattern p = read_pattern(c, false);
  report::Record rec;
  Stage("counting")([&] {
    rec.add("emb", exact_emb(p, g).to_string()).add("hom", hom_count(p, g).to_string());
  });
  emit(rec, c, out);
  return kExitOk;
}

inline int run_estimate(const RunConfig& c, std::ostream& out, bool anchored) {
  Graph g = read_graph_file(c);
  Pattern p = read_pattern(c, anchored);
  std::uint64_t delta = require_delta(c);
  if (count_drivers(c) != 1) {
    throw Failure{kExitUsage, "exactly one of --samples, --epsilon, --s is required"};
  }
  auto t = Stage("--tree")([&] { return spanning_tree(p, c.tree_strategy); });
  const unsigned h = static_cast<unsigned>(p.size());
  const unsigned anchor_size = anchored ? static_cast<unsigned>(p.anchor()->size()) : 1;

  std::uint64_t n = Stage("sample size")([&]() -> std::uint64_t {
    if (c.samples) {
      if (*c.samples < 1) throw ParameterError("--samples must be positive");
      return *c.samples;
    }
    if (c.s) return sample_size_anchored(*c.s, c.p_conf, delta, h, anchor_size);
    double s = *c.epsilon * degree_moment(g, h - 1);
    if (!(s > 0.0)) throw ParameterError("E[D^(h-1)] is zero; use --s or --samples");
    return sample_size_anchored(s, c.p_conf, delta, h, anchor_size);
  });

  EstimateOptions opts;
  opts.lambda = c.lambda;
  opts.threads = c.threads;
  std::optional<SamplerKind> kind;
  EstimateResult r = Stage("estimate")([&] {
    if (!anchored) return estimate(g, p, t, delta, n, c.p_conf, c.seed, opts);
    kind = c.sampler ? parse_sampler_kind(*c.sampler) : default_sampler(*p.anchor());
    return estimate_anchored(g, p, t, delta, n, c.p_conf, c.seed, *kind, opts);
  });

  report::Record rec;
  rec.add("command", anchored ? "estimate-anchored" : "estimate")
      .add("pattern", c.pattern_spec)
      .add("h", static_cast<int>(h))
      .add("root", p.root())
      .add("vertices", static_cast<std::uint64_t>(g.vertex_count()))
      .add("edges", static_cast<std::uint64_t>(g.edge_count()));
  if (anchored) {
    rec.add("anchor", c.anchor_spec)
        .add("sampler", to_string(*kind))
        .add("anchor_embeddings", r.anchor_population.to_string())
        .add("o_internal", r.internal_count);
  } else {
    rec.add("internal", r.internal_count);
  }
  report::append_estimate(rec, r);
  if (g.vertex_count() <= c.exact_limit) {
    double exact = Stage("exact comparison")([&] {
      double emb = exact_emb(p, g).to_double();
      return anchored ? emb / r.anchor_population.to_double()
                      : emb / static_cast<double>(g.vertex_count());
    });
    rec.add("exact", exact).add("exact_in_interval",
                                r.lower <= exact && exact <= r.upper ? "yes" : "no");
  }
  emit(rec, c, out);
  return kExitOk;
}

inline int run_sample_size(const RunConfig& c, std::ostream& out) {
  std::uint64_t delta = require_delta(c);
  if (!c.h) throw Failure{kExitUsage, "--h is required"};
  if (!c.s && !c.epsilon) throw Failure{kExitUsage, "--s or --epsilon is required"};
  report::Record rec;
  Stage("sample size")([&] {
    if (c.s) rec.add("N", sample_size_absolute(*c.s, c.p_conf, delta, *c.h));
    if (c.s && c.anchor_size) {
      rec.add("N_anchored", sample_size_anchored(*c.s, c.p_conf, delta, *c.h, *c.anchor_size));
    }
  });
  if (c.epsilon) {
    double moment = 0.0;
    if (c.moment) {
      moment = *c.moment;
    } else if (!c.graph_path.empty()) {
      Graph g = read_graph_file(c);
      moment = Stage("moment")([&] { return degree_moment(g, *c.h - 1); });
    } else {
      throw Failure{kExitUsage, "--epsilon needs --moment or --graph"};
    }
    Stage("sample size")([&] {
      rec.add("moment", moment)
          .add("N_relative", sample_size_relative(*c.epsilon, c.p_conf, delta, *c.h, moment));
    });
  }
  emit(rec, c, out);
  return kExitOk;
}

inline int run_degrees(const RunConfig& c, std::ostream& out) {
  DegreeDistribution dist;
  if (!c.degrees_csv_path.empty()) {
    dist = Stage("--degrees-csv " + c.degrees_csv_path)([&] {
      std::ifstream in(c.degrees_csv_path);
      if (!in) throw ParseError(0, "cannot open file");
      return DegreeDistribution::parse_csv(in);
    });
  } else {
    dist = DegreeDistribution::of(read_graph_file(c));
  }
  ProfileRequest req;
  req.h = c.h.value_or(3);
  req.s = c.s;
  req.epsilon = c.epsilon;
  req.p_conf = c.p_conf;
  req.anchor_size = c.anchor_size;
  auto prof = Stage("degree profile")([&] { return degree_profile(dist, req); });
  if (c.output_format == OutputFormat::csv) {
    report::write_profile_csv(out, prof);
  } else {
    report::write_profile_text(out, prof);
  }
  return kExitOk;
}

inline int run_verify(const RunConfig& c, std::ostream& out) {
  auto rep = Stage("verify")([&] { return verify::run_inequality_suite(c.trials, c.seed); });
  for (const auto& f : rep.failures) out << "FAIL " << f << '\n';
  out << rep.passed << '/' << rep.trials << " inequality checks passed\n";
  return rep.passed == rep.trials ? kExitOk : kExitVerification;
}

}  // namespace detail

/// Executes one command, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit status.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    switch (c.command) {
      case Command::exact: return detail::run_exact(c, out);
      case Command::estimate: return detail::run_estimate(c, out, false);
      case Command::estimate_anchored: return detail::run_estimate(c, out, true);
      case Command::sample_size: return detail::run_sample_size(c, out);
      case Command::degrees: return detail::run_degrees(c, out);
      case Command::verify: return detail::run_verify(c, out);
    }
  } catch (const detail::Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace subcount
