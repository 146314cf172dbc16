#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "subcount/count.hpp"
#include "subcount/error.hpp"

namespace subcount {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph in compressed sparse row form.
///
/// Vertex ids are dense `0..n-1`. Every adjacency list is sorted ascending and
/// free of duplicates and self-loops, and adjacency is symmetric.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}

  /// Builds a graph on `n` vertices. Parallel edges are merged; a self-loop
  /// or an endpoint `>= n` throws PreconditionError.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    std::vector<Edge> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u == v) {
        throw PreconditionError("self-loop at vertex " + std::to_string(u));
      }
      if (u >= n || v >= n) {
        throw PreconditionError("edge endpoint out of range");
      }
      arcs.emplace_back(u, v);
      arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    Graph g;
    g.offsets_.assign(n + 1, 0);
    g.neighbors_.reserve(arcs.size());
    for (auto [u, v] : arcs) {
      ++g.offsets_[u + 1];
      g.neighbors_.push_back(v);
    }
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    return g;
  }

  std::size_t vertex_count() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }

  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (Vertex v = 0; v < vertex_count(); ++v) best = std::max(best, degree(v));
    return best;
  }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> out(vertex_count());
    for (Vertex v = 0; v < vertex_count(); ++v) out[v] = degree(v);
    return out;
  }

  bool has_edge(Vertex u, Vertex v) const {
    auto adj = neighbors(u);
    return std::binary_search(adj.begin(), adj.end(), v);
  }

  /// Each undirected edge once as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < vertex_count(); ++u) {
      for (Vertex v : neighbors(u)) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
};

/// Reads a whitespace-separated edge list. '#' lines and blank lines are
/// skipped. The result spans ids `0..max_id`; ids that never occur become
/// isolated vertices. A comment of the exact form `# vertices <n>` raises the
/// vertex count to at least n.
inline Graph load_graph(std::istream& in) {
  std::vector<Edge> edges;
  std::size_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::istringstream directive(line.substr(first + 1));
      std::string key;
      std::size_t count = 0;
      if ((directive >> key) && key == "vertices" && (directive >> count)) {
        n = std::max(n, count);
      }
      continue;
    }

    std::istringstream fields(line);
    std::string tok[3];
    fields >> tok[0] >> tok[1];
    if (tok[1].empty() || (fields >> tok[2])) {
      throw ParseError(line_no, "expected two vertex ids");
    }
    Vertex ids[2];
    for (int i = 0; i < 2; ++i) {
      const auto& t = tok[i];
      if (t.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(line_no, "malformed vertex id '" + t + "'");
      }
      unsigned long long value = 0;
      try {
        value = std::stoull(t);
      } catch (const std::exception&) {
        throw ParseError(line_no, "malformed vertex id '" + t + "'");
      }
      if (value >= std::numeric_limits<Vertex>::max()) {
        throw ParseError(line_no, "vertex id '" + t + "' out of range");
      }
      ids[i] = static_cast<Vertex>(value);
    }
    if (ids[0] == ids[1]) throw ParseError(line_no, "self-loop");
    n = std::max<std::size_t>(n, std::max(ids[0], ids[1]) + std::size_t{1});
    edges.emplace_back(ids[0], ids[1]);
  }
  return Graph::from_edges(n, edges);
}

inline Graph load_graph(const std::string& text) {
  std::istringstream in(text);
  return load_graph(in);
}

/// Canonical edge list: a `# vertices n` line, then one `u v` line per edge
/// with u < v, ascending.
inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# vertices " << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

/// (1/n) * sum_v d_v^k.
inline double degree_moment(const Graph& g, unsigned k) {
  if (g.vertex_count() == 0) {
    throw UndefinedMomentError("degree moment of an empty graph");
  }
  double sum = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    sum += real_pow(static_cast<double>(g.degree(v)), k);
  }
  return sum / static_cast<double>(g.vertex_count());
}

/// E[D^{h-1} 1{D >= delta}] for D the degree of a uniform random vertex.
inline double degree_tail(const Graph& g, unsigned h, std::size_t delta) {
  if (g.vertex_count() == 0) {
    throw UndefinedMomentError("degree tail of an empty graph");
  }
  if (h == 0) throw ParameterError("pattern size h must be >= 1");
  double sum = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) >= delta) {
      sum += real_pow(static_cast<double>(g.degree(v)), h - 1);
    }
  }
  return sum / static_cast<double>(g.vertex_count());
}

/// G(n, p) with every pair decided by one Bernoulli draw, pairs visited in
/// lexicographic order.
template <class Engine>
Graph erdos_renyi(std::size_t n, double p, Engine& engine) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(engine)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

}  // namespace subcount
