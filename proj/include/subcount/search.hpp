#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "subcount/graph.hpp"

namespace subcount::search {

inline constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

/// One placement in a backtracking plan.
struct Step {
  int vertex = 0;
  /// Earlier-placed pattern vertex whose image's neighbors are the
  /// candidates; -1 means every host vertex is a candidate.
  int via = -1;
  std::optional<Vertex> fixed;
  /// Earlier-placed pattern neighbors (other than `via`) that must be
  /// adjacent to the image.
  std::vector<int> checks;
  std::size_t min_degree = 0;
  /// Images must have degree strictly below this.
  std::size_t degree_limit = kNoLimit;
};

/// Order in which pattern vertices are placed, and what each placement must
/// satisfy. Every step after the first of its component is reached through
/// an already-placed neighbor, so candidates never require a full scan.
struct Plan {
  int size = 0;
  std::vector<Step> steps;

  Step& step_for(int vertex) {
    for (auto& s : steps) {
      if (s.vertex == vertex) return s;
    }
    return steps.front();  // unreachable for valid vertices
  }
};

/// Builds a plan for a pattern on `adjacency.size()` vertices.
///
/// `sources` are placed first, in order. The remaining vertices are visited
/// breadth-first over `expand` (ascending ids), each drawing candidates from
/// the vertex that discovered it. Every edge of `adjacency` between placed
/// vertices is checked. Vertices unreachable from the sources start new
/// components with full scans.
inline Plan make_plan(const std::vector<std::vector<int>>& adjacency,
                      const std::vector<std::vector<int>>& expand,
                      std::span<const int> sources) {
  const int n = static_cast<int>(adjacency.size());
  Plan plan;
  plan.size = n;
  std::vector<int> order_pos(n, -1);
  std::vector<int> via(n, -1);
  std::queue<int> queue;

  auto place = [&](int v) {
    order_pos[v] = static_cast<int>(plan.steps.size());
    Step step;
    step.vertex = v;
    step.via = via[v];
    for (int u : adjacency[v]) {
      if (order_pos[u] >= 0 && order_pos[u] < order_pos[v] && u != via[v]) {
        step.checks.push_back(u);
      }
    }
    plan.steps.push_back(std::move(step));
    queue.push(v);
  };
  auto drain = [&] {
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      for (int u : expand[v]) {
        if (order_pos[u] < 0) {
          via[u] = v;
          place(u);
        }
      }
    }
  };

  for (int s : sources) {
    if (order_pos[s] < 0) place(s);
  }
  drain();
  for (int v = 0; v < n; ++v) {
    if (order_pos[v] < 0) {
      place(v);
      drain();
    }
  }
  return plan;
}

namespace detail {

template <class Leaf>
class Runner {
 public:
  Runner(const Graph& g, const Plan& plan, bool injective, Leaf& leaf)
      : g_(g), plan_(plan), injective_(injective), leaf_(leaf), image_(plan.size) {}

  void run() {
    if (plan_.steps.empty()) {
      leaf_(std::span<const Vertex>(image_));
      return;
    }
    place(0);
  }

 private:
  bool accepts(const Step& step, std::size_t depth, Vertex x) const {
    std::size_t d = g_.degree(x);
    if (d < step.min_degree || d >= step.degree_limit) return false;
    if (injective_) {
      for (std::size_t i = 0; i < depth; ++i) {
        if (image_[plan_.steps[i].vertex] == x) return false;
      }
    }
    for (int u : step.checks) {
      if (!g_.has_edge(image_[u], x)) return false;
    }
    return true;
  }

  void place(std::size_t depth) {
    const Step& step = plan_.steps[depth];
    auto visit = [&](Vertex x) {
      if (!accepts(step, depth, x)) return;
      image_[step.vertex] = x;
      if (depth + 1 == plan_.steps.size()) {
        leaf_(std::span<const Vertex>(image_));
      } else {
        place(depth + 1);
      }
    };
    if (step.fixed) {
      if (*step.fixed < g_.vertex_count()) visit(*step.fixed);
    } else if (step.via >= 0) {
      for (Vertex x : g_.neighbors(image_[step.via])) visit(x);
    } else {
      for (Vertex x = 0; x < g_.vertex_count(); ++x) visit(x);
    }
  }

  const Graph& g_;
  const Plan& plan_;
  bool injective_;
  Leaf& leaf_;
  std::vector<Vertex> image_;
};

}  // namespace detail

/// Enumerates every map of the plan's pattern into `g` that satisfies the
/// plan (injective when requested), calling `leaf(image)` for each; `image`
/// is indexed by pattern vertex.
template <class Leaf>
void for_each_match(const Graph& g, const Plan& plan, bool injective, Leaf&& leaf) {
  detail::Runner<std::remove_reference_t<Leaf>> runner(g, plan, injective, leaf);
  runner.run();
}

}  // namespace subcount::search
