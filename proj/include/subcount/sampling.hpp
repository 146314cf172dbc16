#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "subcount/counting.hpp"
#include "subcount/error.hpp"
#include "subcount/graph.hpp"
#include "subcount/pattern.hpp"

namespace subcount {

/// Seeded stream of uniform integer choices. Samplers draw all randomness
/// through `below`, which keeps them deterministic for a given seed and lets
/// tests substitute a source that enumerates every outcome.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n). Requires n >= 1.
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

 private:
  std::mt19937_64 engine_;
};

enum class SamplerKind { vertex, edge, wedge, enumerated };

inline SamplerKind parse_sampler_kind(const std::string& s) {
  if (s == "vertex") return SamplerKind::vertex;
  if (s == "edge") return SamplerKind::edge;
  if (s == "wedge") return SamplerKind::wedge;
  if (s == "enumerated") return SamplerKind::enumerated;
  throw ParameterError("unknown sampler '" + s + "'");
}

inline const char* to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::vertex: return "vertex";
    case SamplerKind::edge: return "edge";
    case SamplerKind::wedge: return "wedge";
    case SamplerKind::enumerated: return "enumerated";
  }
  return "?";
}

/// Direct sampler matching the anchor's shape, enumeration otherwise.
inline SamplerKind default_sampler(const Anchor& a) {
  switch (a.shape) {
    case AnchorShape::vertex: return SamplerKind::vertex;
    case AnchorShape::edge: return SamplerKind::edge;
    case AnchorShape::wedge: return SamplerKind::wedge;
    case AnchorShape::general: return SamplerKind::enumerated;
  }
  return SamplerKind::enumerated;
}

/// Draws uniform elements of Emb(O, G) for the pattern's anchor O.
///
/// vertex: uniform vertex. edge: uniform edge, then uniform orientation.
/// wedge: center c with probability d_c(d_c-1) / sum_v d_v(d_v-1), then a
/// uniform ordered pair of distinct neighbors. enumerated: uniform index into
/// the full list of embeddings.
class AnchorSampler {
 public:
  AnchorSampler(const Pattern& p, const Graph& g, SamplerKind kind) : g_(&g), kind_(kind) {
    if (!p.anchor()) throw PreconditionError("pattern has no anchor subgraph");
    const Anchor& a = *p.anchor();
    switch (kind) {
      case SamplerKind::vertex:
        if (a.shape != AnchorShape::vertex) {
          throw PreconditionError("vertex sampler needs a single-vertex anchor");
        }
        if (g.vertex_count() == 0) throw PreconditionError("host graph has no vertices");
        population_ = Count(g.vertex_count());
        break;
      case SamplerKind::edge:
        if (a.shape != AnchorShape::edge) {
          throw PreconditionError("edge sampler needs a single-edge anchor");
        }
        edges_ = g.edges();
        if (edges_.empty()) throw PreconditionError("host graph has no edges");
        population_ = Count(2) * Count(edges_.size());
        break;
      case SamplerKind::wedge: {
        if (a.shape != AnchorShape::wedge) {
          throw PreconditionError("wedge sampler needs a two-edge path anchor");
        }
        std::uint64_t total = 0;
        cumulative_.reserve(g.vertex_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
          std::uint64_t d = g.degree(v);
          total += d * (d == 0 ? 0 : d - 1);
          cumulative_.push_back(total);
        }
        if (total == 0) throw PreconditionError("host graph has no wedges");
        population_ = Count(total);
        break;
      }
      case SamplerKind::enumerated:
        embeddings_ = enumerate_anchor_embeddings(p, g);
        if (embeddings_.empty()) throw PreconditionError("anchor has no embedding in the host");
        population_ = Count(embeddings_.size());
        break;
    }
  }

  SamplerKind kind() const { return kind_; }

  /// emb(O, G).
  Count population() const { return population_; }

  template <class Source>
  Embedding draw(Source& source) const {
    switch (kind_) {
      case SamplerKind::vertex:
        return {static_cast<Vertex>(source.below(g_->vertex_count()))};
      case SamplerKind::edge: {
        auto [u, v] = edges_[source.below(edges_.size())];
        if (source.below(2) == 0) return {u, v};
        return {v, u};
      }
      case SamplerKind::wedge: {
        std::uint64_t r = source.below(cumulative_.back());
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
        auto center = static_cast<Vertex>(it - cumulative_.begin());
        auto adj = g_->neighbors(center);
        std::uint64_t i = source.below(adj.size());
        std::uint64_t j = source.below(adj.size() - 1);
        if (j >= i) ++j;
        return {center, adj[i], adj[j]};
      }
      case SamplerKind::enumerated:
        return embeddings_[source.below(embeddings_.size())];
    }
    return {};
  }

 private:
  const Graph* g_;
  SamplerKind kind_;
  Count population_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> cumulative_;
  std::vector<Embedding> embeddings_;
};

/// One uniform element of Emb(O, G).
template <class Source>
Embedding sample_anchor_embedding(const Pattern& p, const Graph& g, SamplerKind kind,
                                  Source& source) {
  return AnchorSampler(p, g, kind).draw(source);
}

}  // namespace subcount
