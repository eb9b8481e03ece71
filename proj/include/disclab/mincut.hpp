#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace disclab {

// Dinic max-flow / min-cut on double capacities.  Small and deterministic;
// used by the project-selection step of the ratio search, where node counts
// stay in the tens of thousands.
class MaxFlowGraph {
 public:
  explicit MaxFlowGraph(std::size_t nodes) : head_(nodes, -1) {}

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  void add_edge(std::size_t from, std::size_t to, double capacity) {
    edges_.push_back({static_cast<int>(to), head_[from], capacity});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({static_cast<int>(from), head_[to], 0.0});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  double max_flow(std::size_t source, std::size_t sink) {
    double total = 0.0;
    // Residuals below this threshold count as saturated; capacities here are
    // sums of squared Haar coefficients, so the scale is set by the inputs.
    while (build_levels(source, sink)) {
      iter_ = head_;
      for (;;) {
        double pushed = push(source, sink, kInf);
        if (pushed <= 0.0) break;
        total += pushed;
      }
    }
    return total;
  }

  // After max_flow: nodes still reachable from the source in the residual
  // graph (the source side of a minimum cut).
  std::vector<char> source_side(std::size_t source) const {
    std::vector<char> mark(head_.size(), 0);
    std::vector<std::size_t> stack{source};
    mark[source] = 1;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (int e = head_[v]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
        const auto& edge = edges_[static_cast<std::size_t>(e)];
        if (edge.capacity > kEps && !mark[static_cast<std::size_t>(edge.to)]) {
          mark[static_cast<std::size_t>(edge.to)] = 1;
          stack.push_back(static_cast<std::size_t>(edge.to));
        }
      }
    }
    return mark;
  }

 private:
  static constexpr double kEps = 1e-18;

  struct Edge {
    int to;
    int next;
    double capacity;
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    level_.assign(head_.size(), -1);
    std::queue<std::size_t> queue;
    queue.push(source);
    level_[source] = 0;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop();
      for (int e = head_[v]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
        const auto& edge = edges_[static_cast<std::size_t>(e)];
        if (edge.capacity > kEps && level_[static_cast<std::size_t>(edge.to)] < 0) {
          level_[static_cast<std::size_t>(edge.to)] = level_[v] + 1;
          queue.push(static_cast<std::size_t>(edge.to));
        }
      }
    }
    return level_[sink] >= 0;
  }

  double push(std::size_t v, std::size_t sink, double limit) {
    if (v == sink) return limit;
    for (int& e = iter_[v]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
      auto& edge = edges_[static_cast<std::size_t>(e)];
      auto to = static_cast<std::size_t>(edge.to);
      if (edge.capacity > kEps && level_[to] == level_[v] + 1) {
        double pushed = push(to, sink, std::min(limit, edge.capacity));
        if (pushed > 0.0) {
          edge.capacity -= pushed;
          edges_[static_cast<std::size_t>(e) ^ 1].capacity += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  }

  std::vector<int> head_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

}  // namespace disclab
