#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "subcount/estimator.hpp"
#include "subcount/verify.hpp"
#include "support/oracles.hpp"

namespace subcount {
namespace {

void expect_interval_shape(const EstimateResult& r) {
  EXPECT_LE(r.lower, r.point);
  EXPECT_LE(r.point, r.upper);
  EXPECT_NEAR(r.upper - r.point, r.half_width_s + r.bias_term, 1e-9 * (1 + r.upper));
  EXPECT_EQ(r.sample_values.size(), r.samples_n);
  long double sum = 0;
  for (const auto& v : r.sample_values) sum += v.to_double();
  EXPECT_NEAR(r.point, static_cast<double>(sum / r.samples_n), 1e-12 * (1 + r.point));
}

TEST(SampleSizeAbsolute, Examples) {
  for (unsigned h = 2; h <= 6; ++h) EXPECT_EQ(sample_size_absolute(0.01, 0.01, 1, h), 1u);
  EXPECT_EQ(sample_size_absolute(1.0, 1.0, 2, 2), 1u);
  EXPECT_EQ(sample_size_absolute(1.0, 0.05, 3, 3), oracle::sample_size(1.0L, 0.05L, 3, 4));
  EXPECT_EQ(sample_size_absolute(1.0, 0.05, 3, 3), 30u);
}

TEST(SampleSizeAbsolute, ParameterErrors) {
  EXPECT_THROW(sample_size_absolute(0.0, 0.05, 3, 3), ParameterError);
  EXPECT_THROW(sample_size_absolute(-1.0, 0.05, 3, 3), ParameterError);
  EXPECT_THROW(sample_size_absolute(1.0, 0.0, 3, 3), ParameterError);
  EXPECT_THROW(sample_size_absolute(1.0, 1.5, 3, 3), ParameterError);
  EXPECT_THROW(sample_size_absolute(1.0, 0.5, 0, 3), ParameterError);
  EXPECT_THROW(sample_size_absolute(1e-300, 0.05, 1000, 9), OverflowError);
}

TEST(SampleSizeRelative, Examples) {
  EXPECT_EQ(sample_size_relative(0.1, 0.05, 3, 3, 4.0), oracle::sample_size(0.4L, 0.05L, 3, 4));
  EXPECT_EQ(sample_size_relative(0.1, 0.05, 3, 3, 4.0), 185u);
  EXPECT_EQ(sample_size_relative(0.2, 0.01, 2, 4, 3.0),
            static_cast<std::uint64_t>(std::ceil(std::log(2.0 / 0.01) / (2 * 0.04 * 9.0))));
  EXPECT_THROW(sample_size_relative(0.1, 0.05, 3, 3, 0.0), ParameterError);
}

TEST(SampleSizeRelative, SubstitutionIdentity) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  for (int i = 0; i < 500; ++i) {
    double eps = unit(rng), p = unit(rng), moment = 10 * unit(rng);
    std::uint64_t delta = std::uniform_int_distribution<std::uint64_t>(1, 30)(rng);
    unsigned h = std::uniform_int_distribution<unsigned>(1, 5)(rng);
    EXPECT_EQ(sample_size_relative(eps, p, delta, h, moment),
              sample_size_absolute(eps * moment, p, delta, h));
  }
}

TEST(SampleSizeAnchored, Examples) {
  for (std::uint64_t delta : {1, 5, 100}) {
    EXPECT_EQ(sample_size_anchored(0.1, 0.05, delta, 4, 4),
              static_cast<std::uint64_t>(std::ceil(std::log(2.0 / 0.05) / (2 * 0.01))));
  }
  EXPECT_EQ(sample_size_anchored(0.7, 0.1, 6, 4, 1), sample_size_absolute(0.7, 0.1, 6, 4));
  EXPECT_EQ(sample_size_anchored(0.5, 0.05, 4, 4, 2), oracle::sample_size(0.5L, 0.05L, 4, 4));
  EXPECT_EQ(sample_size_anchored(0.5, 0.05, 4, 4, 2), 598u);
  EXPECT_THROW(sample_size_anchored(0.5, 0.05, 4, 4, 5), ParameterError);
  EXPECT_THROW(sample_size_anchored(0.5, 0.05, 4, 4, 0), ParameterError);
}

TEST(Estimate, DeltaOneIsDegenerate) {
  std::mt19937_64 rng(1);
  Graph g = erdos_renyi(30, 0.2, rng);
  Pattern p = Pattern::path(3);
  auto t = spanning_tree(p);
  auto r = estimate(g, p, t, 1, 50, 0.05, 9);
  EXPECT_EQ(r.point, 0.0);
  EXPECT_EQ(r.half_width_s, 0.0);
  EXPECT_EQ(r.lower, 0.0);
  EXPECT_DOUBLE_EQ(r.upper, t.internal_count() * degree_tail(g, 3, 1));
  expect_interval_shape(r);
}

TEST(Estimate, UntruncatedEdgeIsMeanDegree) {
  std::mt19937_64 rng(2);
  Graph g = erdos_renyi(50, 0.1, rng);
  Pattern p = Pattern::edge();
  auto r = estimate(g, p, spanning_tree(p), g.max_degree() + 1, 200, 0.05, 4);
  RandomSource replay(4);
  double sum = 0;
  for (int i = 0; i < 200; ++i) sum += g.degree(static_cast<Vertex>(replay.below(50)));
  EXPECT_DOUBLE_EQ(r.point, sum / 200);
  EXPECT_EQ(r.lambda, 0.0);
  EXPECT_EQ(r.bias_term, 0.0);
  expect_interval_shape(r);
}

TEST(Estimate, VertexTransitiveHostIsExact) {
  Graph k5 = complete_graph(5);
  Pattern p = Pattern::clique(3);
  auto t = spanning_tree(p);
  double truth = exact_emb(p, k5).to_double() / 5.0;
  EXPECT_EQ(truth, 12.0);
  for (std::uint64_t seed : {0, 1, 2, 3}) {
    auto r = estimate(k5, p, t, 10, 17, 0.05, seed);
    EXPECT_EQ(r.point, 12.0);
    EXPECT_LE(r.lower, truth);
    EXPECT_GE(r.upper, truth);
    EXPECT_DOUBLE_EQ(r.half_width_s, 81.0 * std::sqrt(std::log(40.0) / 34.0));
    expect_interval_shape(r);
  }
}

TEST(Estimate, ParametersAndErrors) {
  Graph g = complete_graph(4);
  Pattern p = Pattern::clique(3);
  auto t = spanning_tree(p);
  EXPECT_THROW(estimate(Graph(), p, t, 3, 10, 0.05, 0), PreconditionError);
  EXPECT_THROW(estimate(g, p, t, 3, 0, 0.05, 0), ParameterError);
  EXPECT_THROW(estimate(g, p, t, 3, 10, 0.0, 0), ParameterError);
  EstimateOptions opts;
  opts.lambda = 0.25;
  auto r = estimate(g, p, t, 3, 10, 0.05, 0, opts);
  EXPECT_EQ(r.lambda, 0.25);
  EXPECT_EQ(r.bias_term, 0.25 * t.internal_count());
  opts.lambda = -1;
  EXPECT_THROW(estimate(g, p, t, 3, 10, 0.05, 0, opts), ParameterError);
}

TEST(Estimate, ReproducibleAcrossThreadCounts) {
  std::mt19937_64 rng(3);
  Graph g = erdos_renyi(300, 0.03, rng);
  Pattern p = Pattern::path(4);
  auto t = spanning_tree(p);
  EstimateOptions one, eight;
  eight.threads = 8;
  auto a = estimate(g, p, t, 8, 1000, 0.05, 42, one);
  auto b = estimate(g, p, t, 8, 1000, 0.05, 42, eight);
  EXPECT_EQ(a.sample_values, b.sample_values);
  EXPECT_EQ(a.point, b.point);
  auto c = estimate(g, p, t, 8, 1000, 0.05, 43, one);
  EXPECT_NE(a.sample_values, c.sample_values);
}

// With the sampled mean replaced by the exact population mean, the interval
// holds deterministically.
TEST(Estimate, PopulationScaleIntervalIsValid) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto in = verify::random_instance(rng);
    const Graph& g = in.graph;
    const Pattern& p = in.pattern;
    auto t = spanning_tree(p);
    double truth = exact_emb(p, g).to_double() / g.vertex_count();
    for (std::size_t delta = 1; delta <= g.max_degree() + 1; ++delta) {
      TruncatedCounter bar(p, t, delta);
      Count total;
      for (Vertex v = 0; v < g.vertex_count(); ++v) total += bar(g, v);
      double mean = total.to_double() / g.vertex_count();
      // Treating every vertex as one sample reproduces the population mean.
      std::vector<Count> all;
      for (Vertex v = 0; v < g.vertex_count(); ++v) all.push_back(bar(g, v));
      EXPECT_EQ(detail::mean_of(all), mean);

      double upper = mean + t.internal_count() * degree_tail(g, p.size(), delta);
      EXPECT_LE(mean, truth + 1e-12);
      EXPECT_GE(upper, truth - 1e-12);
    }
  }
}

TEST(EstimateAnchored, CliqueWithStarAnchorHasNoBias) {
  Graph g = complete_graph(7);
  for (int h = 3; h <= 4; ++h) {
    Pattern p = Pattern::clique(h).with_anchor(parse_anchor_spec("star"));
    auto t = spanning_tree(p);
    EstimateOptions opts;
    opts.lambda = 5.0;
    for (std::uint64_t delta : {1, 2, 7}) {
      auto r = estimate_anchored(g, p, t, delta, 30, 0.05, 1, SamplerKind::enumerated, opts);
      EXPECT_EQ(r.bias_term, 0.0);
      EXPECT_EQ(r.internal_count, 0);
      EXPECT_EQ(r.point, 1.0);
      EXPECT_DOUBLE_EQ(r.half_width_s, std::sqrt(std::log(40.0) / 60.0));
      EXPECT_EQ(r.target, EstimateTarget::per_anchor_density);
    }
  }
}

TEST(EstimateAnchored, WholePatternAnchorIsExact) {
  std::mt19937_64 rng(5);
  Graph g = erdos_renyi(9, 0.6, rng);
  Pattern p = Pattern::cycle(4).with_anchor(parse_anchor_spec("all"));
  auto r = estimate_anchored(g, p, spanning_tree(p), 3, 25, 0.1, 2, SamplerKind::enumerated);
  EXPECT_EQ(r.point, 1.0);
  EXPECT_EQ(r.anchor_population, exact_emb(Pattern::cycle(4), g));
}

TEST(EstimateAnchored, TriangleFromEdges) {
  Graph k4 = complete_graph(4);
  Pattern p = Pattern::clique(3).with_anchor(parse_anchor_spec("edge"));
  auto t = spanning_tree(p);
  double ratio = exact_emb(p, k4).to_double() / anchor_emb(p, k4).to_double();
  EXPECT_EQ(ratio, 2.0);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto r = estimate_anchored(k4, p, t, 4, 40, 0.05, seed, SamplerKind::edge);
    for (const auto& v : r.sample_values) EXPECT_EQ(v, Count(2));
    EXPECT_EQ(r.point, ratio);
    EXPECT_EQ(r.anchor_population, Count(12));
    EXPECT_EQ(r.bias_term, 0.0);  // lambda = 0: no vertex has degree >= 4
    expect_interval_shape(r);
  }
}

TEST(EstimateAnchored, Errors) {
  Graph matching = load_graph("0 1\n2 3\n");
  Pattern w = Pattern::clique(3).with_anchor(parse_anchor_spec("wedge"));
  auto t = spanning_tree(w);
  EXPECT_THROW(estimate_anchored(matching, w, t, 3, 10, 0.05, 0, SamplerKind::wedge),
               PreconditionError);
  EXPECT_THROW(estimate_anchored(matching, w, t, 3, 10, 0.05, 0, SamplerKind::enumerated),
               PreconditionError);
  EXPECT_THROW(estimate_anchored(complete_graph(4), w, t, 3, 10, 0.05, 0, SamplerKind::edge),
               PreconditionError);
}

TEST(EstimateAnchored, IntervalHoldsAtPopulationScale) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 80; ++trial) {
    auto in = verify::random_instance(rng);
    for (auto spec : {"edge", "wedge", "root"}) {
      Pattern p = in.pattern;
      try {
        p = p.with_anchor(parse_anchor_spec(spec));
      } catch (const PreconditionError&) {
        continue;  // e.g. no wedge at this root
      }
      const Graph& g = in.graph;
      auto t = spanning_tree(p);
      auto all = enumerate_anchor_embeddings(p, g);
      if (all.empty()) continue;
      double truth = exact_emb(p, g).to_double() / all.size();
      for (std::size_t delta = 1; delta <= g.max_degree() + 1; ++delta) {
        AnchoredCounter bar(p, t, delta);
        Count total;
        for (const auto& nu : all) total += bar(g, nu);
        double mean = total.to_double() / all.size();
        double bias = o_internal_count(t, p) * degree_tail(g, p.size(), delta) *
                      g.vertex_count() / static_cast<double>(all.size());
        EXPECT_LE(mean, truth + 1e-12);
        EXPECT_GE(mean + bias, truth - 1e-9);
      }
    }
  }
}

TEST(DegreeProfile, RegularGraphIsAStep) {
  Graph c6 = load_graph("0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
  ProfileRequest req;
  req.h = 3;
  auto prof = degree_profile(c6, req);
  ASSERT_EQ(prof.rows.size(), 2u);
  EXPECT_EQ(prof.rows[0].delta, 2u);
  EXPECT_DOUBLE_EQ(prof.rows[0].lambda, 4.0);
  EXPECT_EQ(prof.rows[1].delta, 3u);
  EXPECT_DOUBLE_EQ(prof.rows[1].lambda, 0.0);
  EXPECT_DOUBLE_EQ(prof.moment, 4.0);
}

TEST(DegreeProfile, CsvExample) {
  auto dist = DegreeDistribution::parse_csv("degree,count\n1,4\n4,1\n");
  ProfileRequest req;
  req.h = 3;
  req.s = 1.0;
  req.epsilon = 0.5;
  req.anchor_size = 2;
  auto prof = degree_profile(dist, req);
  EXPECT_DOUBLE_EQ(prof.moment, 4.0);
  std::vector<std::uint64_t> deltas;
  for (const auto& row : prof.rows) deltas.push_back(row.delta);
  EXPECT_EQ(deltas, (std::vector<std::uint64_t>{1, 4, 5}));
  EXPECT_DOUBLE_EQ(prof.rows[0].lambda, prof.moment);  // delta <= min degree
  EXPECT_DOUBLE_EQ(prof.rows[1].lambda, 16.0 / 5.0);
  EXPECT_DOUBLE_EQ(prof.rows[2].lambda, 0.0);
  EXPECT_DOUBLE_EQ(dist.tail(3, 2), 16.0 / 5.0);
  const auto& last = prof.rows[2];
  EXPECT_EQ(*last.min_n_absolute, sample_size_absolute(1.0, 0.05, 5, 3));
  EXPECT_EQ(*last.min_n_relative, sample_size_relative(0.5, 0.05, 5, 3, 4.0));
  EXPECT_EQ(*last.min_n_anchored, sample_size_anchored(1.0, 0.05, 5, 3, 2));
  EXPECT_TRUE(last.exceeds_population);  // 256 ln 40 / 2 >> 5 vertices
  EXPECT_FALSE(prof.rows[0].exceeds_population);
}

TEST(DegreeProfile, RowsSortedAndLambdaNonIncreasing) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = erdos_renyi(std::uniform_int_distribution<std::size_t>(5, 80)(rng), 0.1, rng);
    ProfileRequest req;
    req.h = std::uniform_int_distribution<unsigned>(1, 5)(rng);
    req.epsilon = 0.3;
    auto prof = degree_profile(g, req);
    for (std::size_t i = 1; i < prof.rows.size(); ++i) {
      EXPECT_LT(prof.rows[i - 1].delta, prof.rows[i].delta);
      EXPECT_LE(prof.rows[i].lambda, prof.rows[i - 1].lambda);
    }
    EXPECT_EQ(prof.rows.back().delta, g.max_degree() + 1);
    EXPECT_EQ(prof.rows.back().lambda, 0.0);
    for (const auto& row : prof.rows) {
      EXPECT_NEAR(row.lambda, degree_tail(g, req.h, row.delta), 1e-9 * (1 + prof.moment));
    }
  }
}

}  // namespace
}  // namespace subcount
