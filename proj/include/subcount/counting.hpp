#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "subcount/count.hpp"
#include "subcount/error.hpp"
#include "subcount/graph.hpp"
#include "subcount/pattern.hpp"
#include "subcount/search.hpp"

namespace subcount {

/// Image of an anchor: entry i is the host vertex of `anchor.vertices[i]`.
using Embedding = std::vector<Vertex>;

/// Non-negative exponent per pattern vertex.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> alpha) : alpha_(std::move(alpha)) {
    for (double a : alpha_) {
      if (!(a >= 0.0) || !std::isfinite(a)) {
        throw ParameterError("weights must be finite and non-negative");
      }
    }
  }
  static WeightVector zero(int h) { return WeightVector(std::vector<double>(h, 0.0)); }

  const std::vector<double>& alpha() const { return alpha_; }
  double operator[](std::size_t i) const { return alpha_[i]; }
  std::size_t size() const { return alpha_.size(); }
  double total() const { return std::accumulate(alpha_.begin(), alpha_.end(), 0.0); }

 private:
  std::vector<double> alpha_;
};

namespace detail {

inline std::vector<std::vector<int>> pattern_adjacency(const Pattern& p) {
  std::vector<std::vector<int>> adj(p.size());
  for (int v = 0; v < p.size(); ++v) adj[v] = p.neighbors(v);
  return adj;
}

inline std::vector<std::vector<int>> anchor_adjacency(const Anchor& a) {
  std::vector<std::vector<int>> adj(a.size());
  for (auto [u, v] : a.edges) {
    int iu = a.index_of(u), iv = a.index_of(v);
    adj[iu].push_back(iv);
    adj[iv].push_back(iu);
  }
  for (auto& l : adj) std::sort(l.begin(), l.end());
  return adj;
}

inline Count count_matches(const Graph& g, const search::Plan& plan, bool injective) {
  Count total;
  search::for_each_match(g, plan, injective, [&](std::span<const Vertex>) { ++total; });
  return total;
}

inline const Anchor& require_anchor(const Pattern& p) {
  if (!p.anchor()) throw PreconditionError("pattern has no anchor subgraph");
  return *p.anchor();
}

inline void require_tree_for(const RootedSpanningTree& t, const Pattern& p) {
  if (t.size() != p.size() || t.root != p.root()) {
    throw PreconditionError("spanning tree was not built for this pattern");
  }
}

}  // namespace detail

/// hom_delta(H, G): homomorphisms whose root image has degree >= delta.
inline Count hom_trunc(const Pattern& p, const Graph& g, std::size_t delta) {
  auto adj = detail::pattern_adjacency(p);
  int root = p.root();
  auto plan = search::make_plan(adj, adj, std::span<const int>(&root, 1));
  plan.steps.front().min_degree = delta;
  return detail::count_matches(g, plan, false);
}

/// hom(H, G).
inline Count hom_count(const Pattern& p, const Graph& g) { return hom_trunc(p, g, 0); }

/// Sum over homomorphisms phi with d_{phi(root)} >= delta of
/// prod_w d_{phi(w)}^{alpha_w}.
inline double hom_weighted(const Pattern& p, const Graph& g, std::size_t delta,
                           const WeightVector& w) {
  if (w.size() != static_cast<std::size_t>(p.size())) {
    throw ParameterError("weight vector size differs from pattern size");
  }
  auto adj = detail::pattern_adjacency(p);
  int root = p.root();
  auto plan = search::make_plan(adj, adj, std::span<const int>(&root, 1));
  plan.steps.front().min_degree = delta;
  double total = 0.0;
  search::for_each_match(g, plan, false, [&](std::span<const Vertex> image) {
    double term = 1.0;
    for (int v = 0; v < p.size(); ++v) {
      if (w[v] != 0.0) term *= std::pow(static_cast<double>(g.degree(image[v])), w[v]);
    }
    total += term;
  });
  return total;
}

/// sum_v d_v^exponent 1{d_v >= delta}.
inline double degree_power_sum(const Graph& g, double exponent, std::size_t delta) {
  double sum = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) >= delta) sum += std::pow(static_cast<double>(g.degree(v)), exponent);
  }
  return sum;
}

/// sum_v d_v^{h-1} 1{d_v >= delta}; the upper bound for hom_delta of any
/// connected pattern on h vertices.
inline double star_bound(const Graph& g, unsigned h, std::size_t delta) {
  if (h == 0) throw ParameterError("pattern size h must be >= 1");
  double sum = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) >= delta) sum += real_pow(static_cast<double>(g.degree(v)), h - 1);
  }
  return sum;
}

/// X(v): embeddings of the pattern with the root mapped to v.
class RootedEmbeddingCounter {
 public:
  explicit RootedEmbeddingCounter(const Pattern& p) {
    auto adj = detail::pattern_adjacency(p);
    int root = p.root();
    plan_ = search::make_plan(adj, adj, std::span<const int>(&root, 1));
  }

  Count operator()(const Graph& g, Vertex v) {
    if (v >= g.vertex_count()) throw PreconditionError("vertex out of range");
    plan_.steps.front().fixed = v;
    return detail::count_matches(g, plan_, true);
  }

 private:
  search::Plan plan_;
};

/// X-bar(v): embeddings with root at v and every internal vertex of the tree
/// mapped to a host vertex of degree < delta. Placement follows the tree, so
/// each vertex after the root has at most delta-1 candidates.
class TruncatedCounter {
 public:
  TruncatedCounter(const Pattern& p, const RootedSpanningTree& t, std::size_t delta) {
    detail::require_tree_for(t, p);
    if (delta < 1) throw ParameterError("delta must be a positive integer");
    auto adj = detail::pattern_adjacency(p);
    int root = p.root();
    plan_ = search::make_plan(adj, t.adjacency(), std::span<const int>(&root, 1));
    for (auto& step : plan_.steps) {
      if (t.internal[step.vertex]) step.degree_limit = delta;
    }
  }

  Count operator()(const Graph& g, Vertex v) const {
    if (v >= g.vertex_count()) throw PreconditionError("vertex out of range");
    auto plan = plan_;
    plan.steps.front().fixed = v;
    return detail::count_matches(g, plan, true);
  }

 private:
  search::Plan plan_;
};

/// X-bar^O(nu): embeddings extending nu with every O-internal vertex mapped
/// to a host vertex of degree < delta.
class AnchoredCounter {
 public:
  AnchoredCounter(const Pattern& p, const RootedSpanningTree& t, std::size_t delta)
      : anchor_(detail::require_anchor(p)) {
    detail::require_tree_for(t, p);
    if (delta < 1) throw ParameterError("delta must be a positive integer");
    if (t.o_internal.size() != static_cast<std::size_t>(p.size())) {
      throw PreconditionError("tree was built before the anchor was set");
    }
    auto adj = detail::pattern_adjacency(p);
    plan_ = search::make_plan(adj, t.adjacency(), anchor_.vertices);
    for (auto& step : plan_.steps) {
      if (t.o_internal[step.vertex]) step.degree_limit = delta;
    }
  }

  /// Throws PreconditionError unless nu is an embedding of O into g.
  void check_embedding(const Graph& g, std::span<const Vertex> nu) const {
    if (nu.size() != anchor_.size()) {
      throw PreconditionError("anchor embedding has the wrong length");
    }
    for (std::size_t i = 0; i < nu.size(); ++i) {
      if (nu[i] >= g.vertex_count()) throw PreconditionError("anchor image out of range");
      for (std::size_t j = 0; j < i; ++j) {
        if (nu[i] == nu[j]) throw PreconditionError("anchor embedding is not injective");
      }
    }
    for (auto [u, v] : anchor_.edges) {
      if (!g.has_edge(nu[anchor_.index_of(u)], nu[anchor_.index_of(v)])) {
        throw PreconditionError("anchor embedding does not preserve edge " +
                                std::to_string(u) + "-" + std::to_string(v));
      }
    }
  }

  Count operator()(const Graph& g, std::span<const Vertex> nu) const {
    check_embedding(g, nu);
    auto plan = plan_;
    for (std::size_t i = 0; i < anchor_.size(); ++i) plan.steps[i].fixed = nu[i];
    return detail::count_matches(g, plan, true);
  }

 private:
  Anchor anchor_;
  search::Plan plan_;
};

/// X(v).
inline Count count_rooted_embeddings(const Pattern& p, const Graph& g, Vertex v) {
  return RootedEmbeddingCounter(p)(g, v);
}

/// X-bar(v) for tree t and truncation delta.
inline Count count_truncated(const Pattern& p, const RootedSpanningTree& t, const Graph& g,
                             Vertex v, std::size_t delta) {
  return TruncatedCounter(p, t, delta)(g, v);
}

/// X-bar^O(nu) for tree t and truncation delta.
inline Count count_anchored(const Pattern& p, const RootedSpanningTree& t, const Graph& g,
                            std::span<const Vertex> nu, std::size_t delta) {
  return AnchoredCounter(p, t, delta)(g, nu);
}

/// emb(H, G) as the sum of X(v) over all host vertices.
inline Count exact_emb(const Pattern& p, const Graph& g) {
  RootedEmbeddingCounter counter(p);
  Count total;
  for (Vertex v = 0; v < g.vertex_count(); ++v) total += counter(g, v);
  return total;
}

/// emb(O, G) for the pattern's anchor O (which may be disconnected).
inline Count anchor_emb(const Pattern& p, const Graph& g) {
  const Anchor& a = detail::require_anchor(p);
  auto adj = detail::anchor_adjacency(a);
  int first = 0;
  auto plan = search::make_plan(adj, adj, std::span<const int>(&first, 1));
  return detail::count_matches(g, plan, true);
}

/// Every element of Emb(O, G), in search order.
inline std::vector<Embedding> enumerate_anchor_embeddings(const Pattern& p, const Graph& g) {
  const Anchor& a = detail::require_anchor(p);
  auto adj = detail::anchor_adjacency(a);
  int first = 0;
  auto plan = search::make_plan(adj, adj, std::span<const int>(&first, 1));
  std::vector<Embedding> out;
  search::for_each_match(g, plan, true, [&](std::span<const Vertex> image) {
    out.emplace_back(image.begin(), image.end());
  });
  return out;
}

}  // namespace subcount
