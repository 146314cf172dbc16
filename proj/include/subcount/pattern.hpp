#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subcount/error.hpp"
#include "subcount/graph.hpp"

namespace subcount {

/// Undirected edge between pattern vertices, stored with first < second.
using PatternEdge = std::pair<int, int>;

inline PatternEdge normalized(int a, int b) {
  return a < b ? PatternEdge{a, b} : PatternEdge{b, a};
}

/// Shape of an anchor subgraph, which decides the direct samplers it admits.
enum class AnchorShape { vertex, edge, wedge, general };

/// Subgraph O of the pattern whose embeddings are sampled directly.
///
/// `vertices` fixes the order in which an embedding of O is written: an
/// embedding is a vector whose i-th entry is the image of `vertices[i]`.
/// Wedges are always ordered [center, end, end].
struct Anchor {
  std::vector<int> vertices;
  std::vector<PatternEdge> edges;
  AnchorShape shape = AnchorShape::general;

  std::size_t size() const { return vertices.size(); }

  bool contains(int v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
  }

  /// Position of pattern vertex v in `vertices`, or -1.
  int index_of(int v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
  }
};

/// How the anchor is chosen from a pattern.
struct AnchorSpec {
  enum class Kind { none, root, edge, wedge, star, all, vertices, edges };
  Kind kind = Kind::none;
  std::vector<int> vertices;
  std::vector<PatternEdge> edges;
};

/// Small connected rooted pattern graph H on vertices 0..h-1.
class Pattern {
 public:
  Pattern(int h, std::vector<PatternEdge> edges, int root = 0) : h_(h), root_(root) {
    if (h < 1) throw PreconditionError("pattern needs at least one vertex");
    if (root < 0 || root >= h) {
      throw PreconditionError("pattern root " + std::to_string(root) +
                              " outside 0.." + std::to_string(h - 1));
    }
    for (auto& [a, b] : edges) {
      if (a < 0 || b < 0 || a >= h || b >= h) {
        throw PreconditionError("pattern edge endpoint out of range");
      }
      if (a == b) throw PreconditionError("pattern has a self-loop");
      std::tie(a, b) = normalized(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adjacency_.assign(h, {});
    matrix_.assign(static_cast<std::size_t>(h) * h, false);
    for (auto [a, b] : edges_) {
      adjacency_[a].push_back(b);
      adjacency_[b].push_back(a);
      matrix_[a * h + b] = matrix_[b * h + a] = true;
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
    if (!connected()) throw PreconditionError("pattern is not connected");
  }

  static Pattern edge() { return path(2); }

  /// Path on k vertices 0-1-...-(k-1).
  static Pattern path(int k) {
    if (k < 1) throw ParameterError("path needs k >= 1");
    std::vector<PatternEdge> e;
    for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
    return Pattern(k, std::move(e));
  }

  /// Star K_{1,k} with center 0.
  static Pattern star(int k) {
    if (k < 0) throw ParameterError("star needs k >= 0");
    std::vector<PatternEdge> e;
    for (int i = 1; i <= k; ++i) e.emplace_back(0, i);
    return Pattern(k + 1, std::move(e));
  }

  static Pattern cycle(int k) {
    if (k < 3) throw ParameterError("cycle needs k >= 3");
    std::vector<PatternEdge> e;
    for (int i = 0; i < k; ++i) e.push_back(normalized(i, (i + 1) % k));
    return Pattern(k, std::move(e));
  }

  static Pattern clique(int k) {
    if (k < 1) throw ParameterError("clique needs k >= 1");
    std::vector<PatternEdge> e;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) e.emplace_back(i, j);
    }
    return Pattern(k, std::move(e));
  }

  int size() const { return h_; }
  int root() const { return root_; }
  const std::vector<PatternEdge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
  bool has_edge(int a, int b) const { return matrix_[a * h_ + b]; }
  const std::optional<Anchor>& anchor() const { return anchor_; }

  /// Same graph rooted at `root`. The anchor is not carried over.
  Pattern with_root(int root) const { return Pattern(h_, edges_, root); }

  /// Copy of this pattern with the anchor chosen by `spec`.
  Pattern with_anchor(const AnchorSpec& spec) const {
    Pattern p = *this;
    p.anchor_.reset();
    if (spec.kind == AnchorSpec::Kind::none) return p;
    p.anchor_ = resolve_anchor(spec);
    return p;
  }

 private:
  bool connected() const {
    std::vector<bool> seen(h_, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : adjacency_[v]) {
        if (!seen[u]) {
          seen[u] = true;
          ++reached;
          stack.push_back(u);
        }
      }
    }
    return reached == h_;
  }

  void require_edge(int a, int b) const {
    if (a < 0 || b < 0 || a >= h_ || b >= h_ || a == b || !has_edge(a, b)) {
      throw PreconditionError("anchor edge " + std::to_string(a) + "-" +
                              std::to_string(b) + " is not a pattern edge");
    }
  }

  Anchor resolve_anchor(const AnchorSpec& spec) const {
    using Kind = AnchorSpec::Kind;
    Anchor a;
    switch (spec.kind) {
      case Kind::none:
        break;
      case Kind::root:
        a.vertices = {root_};
        break;
      case Kind::edge:
        if (!spec.vertices.empty()) {
          if (spec.vertices.size() != 2) {
            throw PreconditionError("edge anchor needs two vertices");
          }
          a.vertices = spec.vertices;
        } else {
          if (adjacency_[root_].empty()) {
            throw PreconditionError("root has no neighbor for an edge anchor");
          }
          a.vertices = {root_, adjacency_[root_].front()};
        }
        require_edge(a.vertices[0], a.vertices[1]);
        a.edges = {normalized(a.vertices[0], a.vertices[1])};
        break;
      case Kind::wedge: {
        int center = -1, x = -1, y = -1;
        if (!spec.vertices.empty()) {
          if (spec.vertices.size() != 3) {
            throw PreconditionError("wedge anchor needs three vertices a-b-c");
          }
          x = spec.vertices[0];
          center = spec.vertices[1];
          y = spec.vertices[2];
        } else if (adjacency_[root_].size() >= 2) {
          center = root_;
          x = adjacency_[root_][0];
          y = adjacency_[root_][1];
        } else if (adjacency_[root_].size() == 1 &&
                   adjacency_[adjacency_[root_][0]].size() >= 2) {
          center = adjacency_[root_][0];
          x = root_;
          for (int u : adjacency_[center]) {
            if (u != root_) {
              y = u;
              break;
            }
          }
        } else {
          throw PreconditionError("pattern has no wedge at its root");
        }
        require_edge(x, center);
        require_edge(center, y);
        if (x == y) throw PreconditionError("wedge ends must differ");
        a.vertices = {center, x, y};
        a.edges = {normalized(center, x), normalized(center, y)};
        break;
      }
      case Kind::star:
        a.vertices = {root_};
        for (int u : adjacency_[root_]) {
          a.vertices.push_back(u);
          a.edges.push_back(normalized(root_, u));
        }
        break;
      case Kind::all:
        a.vertices.resize(h_);
        std::iota(a.vertices.begin(), a.vertices.end(), 0);
        a.edges = edges_;
        break;
      case Kind::vertices:
        a.vertices = spec.vertices;
        for (int v : a.vertices) {
          if (v < 0 || v >= h_) {
            throw PreconditionError("anchor vertex out of range");
          }
        }
        for (auto [u, v] : edges_) {
          if (a.contains(u) && a.contains(v)) a.edges.emplace_back(u, v);
        }
        break;
      case Kind::edges:
        for (auto [u, v] : spec.edges) {
          require_edge(u, v);
          a.edges.push_back(normalized(u, v));
          for (int w : {u, v}) {
            if (!a.contains(w)) a.vertices.push_back(w);
          }
        }
        break;
    }
    validate_anchor(a);
    return a;
  }

  void validate_anchor(Anchor& a) const {
    if (a.vertices.empty()) throw PreconditionError("anchor is empty");
    auto sorted = a.vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw PreconditionError("anchor repeats a vertex");
    }
    std::sort(a.edges.begin(), a.edges.end());
    a.edges.erase(std::unique(a.edges.begin(), a.edges.end()), a.edges.end());
    for (auto [u, v] : a.edges) {
      require_edge(u, v);
      if (!a.contains(u) || !a.contains(v)) {
        throw PreconditionError("anchor edge leaves the anchor vertex set");
      }
    }
    if (a.vertices.size() == 1 && a.vertices[0] != root_) {
      throw PreconditionError("a single-vertex anchor must be the root");
    }

    if (a.vertices.size() == 1) {
      a.shape = AnchorShape::vertex;
    } else if (a.vertices.size() == 2 && a.edges.size() == 1) {
      a.shape = AnchorShape::edge;
    } else if (a.vertices.size() == 3 && a.edges.size() == 2) {
      auto [p, q] = a.edges[0];
      auto [r, s] = a.edges[1];
      int center = (p == r || p == s) ? p : q;
      std::vector<int> ends;
      for (int v : a.vertices) {
        if (v != center) ends.push_back(v);
      }
      std::sort(ends.begin(), ends.end());
      a.vertices = {center, ends[0], ends[1]};
      a.shape = AnchorShape::wedge;
    } else {
      a.shape = AnchorShape::general;
    }
  }

  int h_;
  int root_;
  std::vector<PatternEdge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<bool> matrix_;
  std::optional<Anchor> anchor_;
};

enum class TreeStrategy { bfs, dfs, min_internal };

/// Largest pattern for which min_internal enumerates every spanning tree.
inline constexpr int kMaxExhaustiveTreeSize = 8;

/// Spanning tree T of a pattern, rooted at the pattern root, with the
/// internal / O-internal classification of its vertices.
struct RootedSpanningTree {
  int root = 0;
  std::vector<int> parent;  ///< -1 at the root
  std::vector<PatternEdge> edges;
  std::vector<int> degree;  ///< degree within T
  std::vector<bool> internal;
  std::vector<bool> o_internal;  ///< empty when the pattern has no anchor

  int size() const { return static_cast<int>(parent.size()); }

  /// i_T
  int internal_count() const {
    return static_cast<int>(std::count(internal.begin(), internal.end(), true));
  }

  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(parent.size());
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    return adj;
  }
};

/// Builds the rooted tree with the given edge set. Throws PreconditionError
/// unless the edges form a spanning tree of `p` using only pattern edges.
inline RootedSpanningTree tree_from_edges(const Pattern& p,
                                          std::vector<PatternEdge> edges) {
  const int h = p.size();
  for (auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= h || b >= h || a == b || !p.has_edge(a, b)) {
      throw PreconditionError("tree edge is not a pattern edge");
    }
    std::tie(a, b) = normalized(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (static_cast<int>(edges.size()) != h - 1 ||
      std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw PreconditionError("a spanning tree needs exactly h-1 distinct edges");
  }

  RootedSpanningTree t;
  t.root = p.root();
  t.edges = std::move(edges);
  t.parent.assign(h, -1);
  t.degree.assign(h, 0);
  auto adj = t.adjacency();
  std::vector<bool> seen(h, false);
  std::queue<int> queue;
  queue.push(t.root);
  seen[t.root] = true;
  int reached = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        t.parent[u] = v;
        ++reached;
        queue.push(u);
      }
    }
  }
  if (reached != h) throw PreconditionError("tree edges do not span the pattern");

  t.internal.assign(h, false);
  for (int v = 0; v < h; ++v) {
    t.degree[v] = static_cast<int>(adj[v].size());
    t.internal[v] = t.degree[v] > 1 || v == t.root;
  }

  if (const auto& anchor = p.anchor()) {
    t.o_internal.assign(h, false);
    for (int v = 0; v < h; ++v) {
      if (!anchor->contains(v)) {
        t.o_internal[v] = t.degree[v] >= 2;
      } else {
        t.o_internal[v] = std::any_of(adj[v].begin(), adj[v].end(),
                                      [&](int u) { return !anchor->contains(u); });
      }
    }
  }
  return t;
}

namespace detail {

inline void dfs_tree(const Pattern& p, int v, std::vector<bool>& seen,
                     std::vector<PatternEdge>& out) {
  seen[v] = true;
  for (int u : p.neighbors(v)) {
    if (!seen[u]) {
      out.push_back(normalized(v, u));
      dfs_tree(p, u, seen, out);
    }
  }
}

inline int count_internal(int h, int root, const std::vector<PatternEdge>& edges) {
  std::vector<int> deg(h, 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  int count = 0;
  for (int v = 0; v < h; ++v) count += (deg[v] > 1 || v == root) ? 1 : 0;
  return count;
}

// Minimum i_T over all spanning trees. Edge subsets are visited in
// lexicographic order, so the first minimizer is the lexicographically
// smallest edge set.
inline std::vector<PatternEdge> min_internal_tree(const Pattern& p) {
  const int h = p.size();
  const auto& all = p.edges();
  const int m = static_cast<int>(all.size());
  const int k = h - 1;
  if (k == 0) return {};

  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<PatternEdge> best;
  int best_count = h + 1;
  std::vector<int> uf(h);
  auto find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };

  while (true) {
    std::iota(uf.begin(), uf.end(), 0);
    bool acyclic = true;
    for (int i : pick) {
      int a = find(all[i].first), b = find(all[i].second);
      if (a == b) {
        acyclic = false;
        break;
      }
      uf[a] = b;
    }
    if (acyclic) {
      std::vector<PatternEdge> chosen;
      for (int i : pick) chosen.push_back(all[i]);
      int c = count_internal(h, p.root(), chosen);
      if (c < best_count) {
        best_count = c;
        best = std::move(chosen);
      }
    }
    int i = k - 1;
    while (i >= 0 && pick[i] == m - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return best;
}

}  // namespace detail

/// Spanning tree of `p` rooted at `p.root()`. bfs and dfs visit neighbors in
/// ascending id order; min_internal minimizes i_T by exhaustive search.
inline RootedSpanningTree spanning_tree(const Pattern& p,
                                        TreeStrategy strategy = TreeStrategy::bfs) {
  const int h = p.size();
  std::vector<PatternEdge> edges;
  switch (strategy) {
    case TreeStrategy::bfs: {
      std::vector<bool> seen(h, false);
      std::queue<int> queue;
      queue.push(p.root());
      seen[p.root()] = true;
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (int u : p.neighbors(v)) {
          if (!seen[u]) {
            seen[u] = true;
            edges.push_back(normalized(v, u));
            queue.push(u);
          }
        }
      }
      break;
    }
    case TreeStrategy::dfs: {
      std::vector<bool> seen(h, false);
      detail::dfs_tree(p, p.root(), seen, edges);
      break;
    }
    case TreeStrategy::min_internal:
      if (h > kMaxExhaustiveTreeSize) {
        throw CapabilityError("min_internal supports patterns with at most " +
                              std::to_string(kMaxExhaustiveTreeSize) +
                              " vertices; use bfs or dfs");
      }
      edges = detail::min_internal_tree(p);
      break;
  }
  return tree_from_edges(p, std::move(edges));
}

/// i_T^O, the number of O-internal vertices of t.
inline int o_internal_count(const RootedSpanningTree& t, const Pattern& p) {
  if (!p.anchor()) throw PreconditionError("pattern has no anchor subgraph");
  if (t.o_internal.size() != static_cast<std::size_t>(p.size())) {
    throw PreconditionError("tree was built before the anchor was set");
  }
  return static_cast<int>(std::count(t.o_internal.begin(), t.o_internal.end(), true));
}

// ---------------------------------------------------------------------------
// Text specs used on the command line.

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParameterError("malformed " + std::string(what) + " '" + std::string(s) + "'");
  }
  return value;
}

inline PatternEdge parse_edge(std::string_view s) {
  auto parts = split(s, '-');
  if (parts.size() != 2) throw ParameterError("malformed edge '" + std::string(s) + "'");
  return {parse_int(parts[0], "vertex"), parse_int(parts[1], "vertex")};
}

}  // namespace detail

/// Parses `edge`, `path:k`, `star:k`, `cycle:k`, `clique:k` or
/// `file:<path>[:root=<v>]`. A file pattern is an edge list over 0..h-1.
inline Pattern parse_pattern_spec(const std::string& spec) {
  if (spec == "edge") return Pattern::edge();
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw ParameterError("unknown pattern '" + spec + "'");
  }
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (kind == "file") {
    int root = 0;
    auto root_pos = rest.rfind(":root=");
    if (root_pos != std::string::npos) {
      root = detail::parse_int(std::string_view(rest).substr(root_pos + 6), "root");
      rest = rest.substr(0, root_pos);
    }
    std::ifstream in(rest);
    if (!in) throw ParseError(0, "cannot open pattern file '" + rest + "'");
    Graph g = load_graph(in);
    std::vector<PatternEdge> edges;
    for (auto [u, v] : g.edges()) {
      edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return Pattern(static_cast<int>(std::max<std::size_t>(g.vertex_count(), 1)),
                   std::move(edges), root);
  }
  int k = detail::parse_int(rest, "pattern size");
  if (kind == "path") return Pattern::path(k);
  if (kind == "star") return Pattern::star(k);
  if (kind == "cycle") return Pattern::cycle(k);
  if (kind == "clique") return Pattern::clique(k);
  throw ParameterError("unknown pattern '" + spec + "'");
}

/// Parses `none`, `root`, `edge[:a-b]`, `wedge[:a-b-c]` (b the center),
/// `star`, `all`, `vertices:a,b,...` (induced) or `edges:a-b,c-d,...`.
inline AnchorSpec parse_anchor_spec(const std::string& spec) {
  using Kind = AnchorSpec::Kind;
  AnchorSpec out;
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string_view rest =
      colon == std::string::npos ? std::string_view{} : std::string_view(spec).substr(colon + 1);
  if (kind == "none") {
    out.kind = Kind::none;
  } else if (kind == "root") {
    out.kind = Kind::root;
  } else if (kind == "star") {
    out.kind = Kind::star;
  } else if (kind == "all") {
    out.kind = Kind::all;
  } else if (kind == "edge" || kind == "wedge") {
    out.kind = kind == "edge" ? Kind::edge : Kind::wedge;
    if (colon != std::string::npos) {
      for (auto v : detail::split(rest, '-')) {
        out.vertices.push_back(detail::parse_int(v, "anchor vertex"));
      }
    }
  } else if (kind == "vertices") {
    out.kind = Kind::vertices;
    for (auto v : detail::split(rest, ',')) {
      out.vertices.push_back(detail::parse_int(v, "anchor vertex"));
    }
  } else if (kind == "edges") {
    out.kind = Kind::edges;
    for (auto e : detail::split(rest, ',')) out.edges.push_back(detail::parse_edge(e));
  } else {
    throw ParameterError("unknown anchor '" + spec + "'");
  }
  if (colon != std::string::npos &&
      (kind == "none" || kind == "root" || kind == "star" || kind == "all")) {
    throw ParameterError("anchor '" + kind + "' takes no arguments");
  }
  return out;
}

inline TreeStrategy parse_tree_strategy(const std::string& s) {
  if (s == "bfs") return TreeStrategy::bfs;
  if (s == "dfs") return TreeStrategy::dfs;
  if (s == "min_internal") return TreeStrategy::min_internal;
  throw ParameterError("unknown tree strategy '" + s + "'");
}

}  // namespace subcount
