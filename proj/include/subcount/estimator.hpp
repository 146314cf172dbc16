#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "subcount/count.hpp"
#include "subcount/counting.hpp"
#include "subcount/degrees.hpp"
#include "subcount/error.hpp"
#include "subcount/graph.hpp"
#include "subcount/pattern.hpp"
#include "subcount/sampling.hpp"

namespace subcount {

// ---------------------------------------------------------------------------
// Sample sizes. Each returns the smallest N for which the Hoeffding interval
// of half-width s holds with probability at least 1 - p.

namespace detail {

inline void check_confidence(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("confidence parameter p must lie in (0, 1]");
}

inline std::uint64_t ceil_samples(double value) {
  double n = std::ceil(value);
  if (!std::isfinite(n) || n >= 18446744073709551615.0) {
    throw OverflowError("required sample size exceeds 64-bit range");
  }
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
}

}  // namespace detail

/// ceil((delta-1)^{2(h - anchor_size)} ln(2/p) / (2 s^2)), at least 1.
inline std::uint64_t sample_size_anchored(double s, double p, std::uint64_t delta, unsigned h,
                                          unsigned anchor_size) {
  if (!(s > 0.0) || !std::isfinite(s)) throw ParameterError("half-width s must be positive");
  detail::check_confidence(p);
  if (delta < 1) throw ParameterError("delta must be a positive integer");
  if (h < 1) throw ParameterError("pattern size h must be >= 1");
  if (anchor_size < 1 || anchor_size > h) {
    throw ParameterError("anchor size must lie in [1, h]");
  }
  double range = real_pow(static_cast<double>(delta - 1), 2 * (h - anchor_size));
  return detail::ceil_samples(range * std::log(2.0 / p) / (2.0 * s * s));
}

/// ceil((delta-1)^{2(h-1)} ln(2/p) / (2 s^2)), at least 1.
inline std::uint64_t sample_size_absolute(double s, double p, std::uint64_t delta, unsigned h) {
  return sample_size_anchored(s, p, delta, h, 1);
}

/// sample_size_absolute with s = epsilon * E[D^{h-1}].
inline std::uint64_t sample_size_relative(double epsilon, double p, std::uint64_t delta,
                                          unsigned h, double moment) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (!(moment > 0.0)) throw ParameterError("moment E[D^(h-1)] must be positive");
  return sample_size_absolute(epsilon * moment, p, delta, h);
}

/// Half-width s for which `samples` meets the sample-size bound with
/// equality: range * sqrt(ln(2/p) / (2N)).
inline double hoeffding_half_width(double range, double p, std::uint64_t samples) {
  detail::check_confidence(p);
  if (samples < 1) throw ParameterError("sample count must be positive");
  return range * std::sqrt(std::log(2.0 / p) / (2.0 * static_cast<double>(samples)));
}

// ---------------------------------------------------------------------------

enum class EstimateTarget { per_vertex_density, per_anchor_density };

inline const char* to_string(EstimateTarget t) {
  return t == EstimateTarget::per_vertex_density ? "per_vertex_density"
                                                 : "per_anchor_density";
}

/// Point estimate with its one-sided-biased Hoeffding interval
/// [point - s, point + s + bias_term].
struct EstimateResult {
  double point = 0.0;
  double half_width_s = 0.0;
  double bias_term = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::uint64_t samples_n = 0;
  double confidence_p = 0.05;
  std::uint64_t delta = 1;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  EstimateTarget target = EstimateTarget::per_vertex_density;
  int internal_count = 0;          ///< i_T, or i_T^O for anchored estimates
  Count anchor_population;         ///< emb(O, G); zero for vertex sampling
  std::vector<Count> sample_values;  ///< per-sample counts, in draw order
};

struct EstimateOptions {
  /// Overrides lambda = E[D^{h-1} 1{D >= delta}] computed from the graph.
  std::optional<double> lambda;
  unsigned threads = 1;
};

namespace detail {

// Evaluates fn(i) for i in [0, n) on `threads` workers, each owning a
// contiguous block; results land at their own index.
template <class Fn>
std::vector<Count> parallel_counts(std::size_t n, unsigned threads, Fn fn) {
  std::vector<Count> out(n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(threads);
  std::size_t block = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = t * block; i < std::min(n, (t + 1) * block); ++i) out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

inline double mean_of(const std::vector<Count>& values) {
  Count sum;
  for (const auto& v : values) sum += v;
  return static_cast<double>(static_cast<long double>(sum.rep()) /
                             static_cast<long double>(values.size()));
}

inline double resolve_lambda(const Graph& g, unsigned h, std::uint64_t delta,
                             const EstimateOptions& opts) {
  if (opts.lambda) {
    if (!(*opts.lambda >= 0.0)) throw ParameterError("lambda must be non-negative");
    return *opts.lambda;
  }
  return degree_tail(g, h, delta);
}

}  // namespace detail

/// Estimates emb(H, G) / n from `n_samples` uniform vertices drawn with
/// replacement. All vertices are drawn before any counting starts, so the
/// result does not depend on `opts.threads`.
inline EstimateResult estimate(const Graph& g, const Pattern& p, const RootedSpanningTree& t,
                               std::uint64_t delta, std::uint64_t n_samples, double p_conf,
                               std::uint64_t seed, const EstimateOptions& opts = {}) {
  if (g.vertex_count() == 0) throw PreconditionError("host graph has no vertices");
  if (n_samples < 1) throw ParameterError("sample count must be positive");
  detail::check_confidence(p_conf);
  const unsigned h = static_cast<unsigned>(p.size());
  TruncatedCounter counter(p, t, delta);

  EstimateResult r;
  r.samples_n = n_samples;
  r.confidence_p = p_conf;
  r.delta = delta;
  r.seed = seed;
  r.target = EstimateTarget::per_vertex_density;
  r.lambda = detail::resolve_lambda(g, h, delta, opts);
  r.internal_count = t.internal_count();

  RandomSource source(seed);
  std::vector<Vertex> picks(n_samples);
  for (auto& v : picks) v = static_cast<Vertex>(source.below(g.vertex_count()));

  if (delta == 1 && h >= 2) {
    // No vertex of degree 0 can host an edge, so every count is zero.
    r.sample_values.assign(n_samples, Count());
    r.point = 0.0;
    r.half_width_s = 0.0;
  } else {
    r.sample_values =
        detail::parallel_counts(n_samples, opts.threads, [&](std::size_t i) { return counter(g, picks[i]); });
    r.point = detail::mean_of(r.sample_values);
    double range = real_pow(static_cast<double>(delta - 1), h - 1);
    r.half_width_s = hoeffding_half_width(range, p_conf, n_samples);
  }
  r.bias_term = r.internal_count * r.lambda;
  r.lower = r.point - r.half_width_s;
  r.upper = r.point + r.half_width_s + r.bias_term;
  return r;
}

/// Estimates emb(H, G) / emb(O, G) from `n_samples` uniform embeddings of the
/// anchor O drawn with replacement.
inline EstimateResult estimate_anchored(const Graph& g, const Pattern& p,
                                        const RootedSpanningTree& t, std::uint64_t delta,
                                        std::uint64_t n_samples, double p_conf,
                                        std::uint64_t seed, SamplerKind kind,
                                        const EstimateOptions& opts = {}) {
  if (g.vertex_count() == 0) throw PreconditionError("host graph has no vertices");
  if (n_samples < 1) throw ParameterError("sample count must be positive");
  detail::check_confidence(p_conf);
  const unsigned h = static_cast<unsigned>(p.size());
  AnchoredCounter counter(p, t, delta);
  AnchorSampler sampler(p, g, kind);
  const auto anchor_size = static_cast<unsigned>(p.anchor()->size());

  EstimateResult r;
  r.samples_n = n_samples;
  r.confidence_p = p_conf;
  r.delta = delta;
  r.seed = seed;
  r.target = EstimateTarget::per_anchor_density;
  r.lambda = detail::resolve_lambda(g, h, delta, opts);
  r.internal_count = o_internal_count(t, p);
  r.anchor_population = sampler.population();

  RandomSource source(seed);
  std::vector<Embedding> picks;
  picks.reserve(n_samples);
  for (std::uint64_t i = 0; i < n_samples; ++i) picks.push_back(sampler.draw(source));

  r.sample_values = detail::parallel_counts(n_samples, opts.threads,
                                            [&](std::size_t i) { return counter(g, picks[i]); });
  r.point = detail::mean_of(r.sample_values);
  double range = real_pow(static_cast<double>(delta - 1), h - anchor_size);
  r.half_width_s = hoeffding_half_width(range, p_conf, n_samples);
  r.bias_term = r.internal_count == 0
                    ? 0.0
                    : r.internal_count * r.lambda * static_cast<double>(g.vertex_count()) /
                          r.anchor_population.to_double();
  r.lower = r.point - r.half_width_s;
  r.upper = r.point + r.half_width_s + r.bias_term;
  return r;
}

// ---------------------------------------------------------------------------
// Degree-tail profile: the (delta, lambda, N) trade-off table.

struct ProfileRequest {
  unsigned h = 3;
  std::optional<double> s;
  std::optional<double> epsilon;
  double p_conf = 0.05;
  std::optional<unsigned> anchor_size;
};

struct ProfileRow {
  std::uint64_t delta = 1;
  double lambda = 0.0;
  std::optional<std::uint64_t> min_n_absolute;
  std::optional<std::uint64_t> min_n_relative;
  std::optional<std::uint64_t> min_n_anchored;
  /// Some requested minimum N exceeds the number of vertices.
  bool exceeds_population = false;
};

struct DegreeTailProfile {
  unsigned h = 1;
  double moment = 0.0;  ///< E[D^{h-1}]
  std::uint64_t population = 0;
  std::vector<ProfileRow> rows;  ///< ascending delta
};

/// Sweeps delta over every observed degree (degree 0 folded into delta = 1)
/// plus max degree + 1. lambda only changes at observed degrees, so no other
/// delta gives a new row.
inline DegreeTailProfile degree_profile(const DegreeDistribution& dist, const ProfileRequest& req) {
  if (dist.population() == 0) throw PreconditionError("degree distribution is empty");
  if (req.h < 1) throw ParameterError("pattern size h must be >= 1");
  detail::check_confidence(req.p_conf);

  DegreeTailProfile prof;
  prof.h = req.h;
  prof.population = dist.population();
  prof.moment = dist.moment(req.h - 1);

  std::set<std::uint64_t> grid;
  for (const auto& [d, c] : dist.counts()) grid.insert(std::max<std::uint64_t>(d, 1));
  grid.insert(dist.max_degree() + 1);

  for (std::uint64_t delta : grid) {
    ProfileRow row;
    row.delta = delta;
    row.lambda = dist.tail(req.h, delta);
    if (req.s) row.min_n_absolute = sample_size_absolute(*req.s, req.p_conf, delta, req.h);
    if (req.epsilon && prof.moment > 0.0) {
      row.min_n_relative = sample_size_relative(*req.epsilon, req.p_conf, delta, req.h, prof.moment);
    }
    if (req.anchor_size) {
      std::optional<double> s = req.s;
      if (!s && req.epsilon && prof.moment > 0.0) s = *req.epsilon * prof.moment;
      if (s) row.min_n_anchored = sample_size_anchored(*s, req.p_conf, delta, req.h, *req.anchor_size);
    }
    for (const auto& n : {row.min_n_absolute, row.min_n_relative, row.min_n_anchored}) {
      if (n && *n > prof.population) row.exceeds_population = true;
    }
    prof.rows.push_back(row);
  }
  return prof;
}

inline DegreeTailProfile degree_profile(const Graph& g, const ProfileRequest& req) {
  return degree_profile(DegreeDistribution::of(g), req);
}

}  // namespace subcount
