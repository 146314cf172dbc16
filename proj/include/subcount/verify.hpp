#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "subcount/counting.hpp"
#include "subcount/graph.hpp"
#include "subcount/pattern.hpp"

namespace subcount::verify {

/// Pattern family used for randomized checks.
inline std::vector<std::string> standard_pattern_specs() {
  return {"edge", "path:3", "path:4", "star:4", "cycle:4", "clique:3", "clique:4"};
}

/// Random small host: n uniform in [4, 8], edge probability one of
/// {0.3, 0.5, 0.8}.
template <class Engine>
Graph random_small_graph(Engine& engine) {
  static constexpr double kEdgeProbabilities[] = {0.3, 0.5, 0.8};
  std::size_t n = std::uniform_int_distribution<std::size_t>(4, 8)(engine);
  double p = kEdgeProbabilities[std::uniform_int_distribution<int>(0, 2)(engine)];
  return erdos_renyi(n, p, engine);
}

struct Instance {
  Graph graph;
  Pattern pattern;
  std::size_t delta = 0;
  WeightVector alpha;
};

/// Random instance: standard pattern with a uniform root, delta uniform in
/// [0, max degree + 1], weights uniform in [0, 3].
template <class Engine>
Instance random_instance(Engine& engine) {
  Graph g = random_small_graph(engine);
  auto specs = standard_pattern_specs();
  auto spec = specs[std::uniform_int_distribution<std::size_t>(0, specs.size() - 1)(engine)];
  Pattern p = parse_pattern_spec(spec);
  p = p.with_root(std::uniform_int_distribution<int>(0, p.size() - 1)(engine));
  std::size_t delta = std::uniform_int_distribution<std::size_t>(0, g.max_degree() + 1)(engine);
  std::uniform_real_distribution<double> weight(0.0, 3.0);
  std::vector<double> alpha(p.size());
  for (auto& a : alpha) a = weight(engine);
  return {std::move(g), std::move(p), delta, WeightVector(std::move(alpha))};
}

/// Relative tolerance for the floating-point weighted comparison.
inline constexpr double kWeightedTolerance = 1e-9;

struct Outcome {
  bool sidorenko = false;  ///< hom <= sum_v d_v^{h-1}
  bool truncated = false;  ///< hom_delta <= sum_v d_v^{h-1} 1{d_v >= delta}
  bool weighted = false;   ///< hom_{delta,alpha} <= sum_v d_v^{h-1+|alpha|} 1{d_v >= delta}
  bool all() const { return sidorenko && truncated && weighted; }
};

inline Outcome check_instance(const Instance& in) {
  const unsigned h = static_cast<unsigned>(in.pattern.size());
  Outcome out;
  out.sidorenko = hom_count(in.pattern, in.graph).to_double() <= star_bound(in.graph, h, 0);
  out.truncated =
      hom_trunc(in.pattern, in.graph, in.delta).to_double() <= star_bound(in.graph, h, in.delta);
  double lhs = hom_weighted(in.pattern, in.graph, in.delta, in.alpha);
  double rhs = degree_power_sum(in.graph, h - 1 + in.alpha.total(), in.delta);
  out.weighted = lhs <= rhs * (1.0 + kWeightedTolerance);
  return out;
}

struct SuiteReport {
  std::uint64_t trials = 0;
  std::uint64_t passed = 0;
  std::vector<std::string> failures;
};

/// Runs `trials` random instances seeded from `seed`.
inline SuiteReport run_inequality_suite(std::uint64_t trials, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  SuiteReport report;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Instance in = random_instance(engine);
    Outcome o = check_instance(in);
    ++report.trials;
    if (o.all()) {
      ++report.passed;
    } else {
      std::ostringstream msg;
      msg << "trial " << i << ": n=" << in.graph.vertex_count() << " h=" << in.pattern.size()
          << " delta=" << in.delta << (o.sidorenko ? "" : " sidorenko")
          << (o.truncated ? "" : " truncated") << (o.weighted ? "" : " weighted");
      report.failures.push_back(msg.str());
    }
  }
  return report;
}

}  // namespace subcount::verify
