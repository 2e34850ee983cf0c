#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vegraph/graph.hpp"

namespace vegraph {

/// A permutation of 1..n; order()[0] is eliminated first.
class EliminationOrdering {
 public:
  EliminationOrdering() = default;

  explicit EliminationOrdering(std::vector<Node> order) : order_(std::move(order)) {
    const int n = static_cast<int>(order_.size());
    pos_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
      Node v = order_[i];
      if (v < 1 || v > n || pos_[v] != 0)
        throw graph_error("elimination ordering is not a permutation of 1.." +
                          std::to_string(n));
      pos_[v] = i + 1;
    }
  }

  std::size_t size() const { return order_.size(); }
  const std::vector<Node>& order() const { return order_; }
  /// 1-based position of v in the ordering.
  int pos(Node v) const { return pos_.at(v); }
  Node last() const { return order_.back(); }

  friend bool operator==(const EliminationOrdering& a, const EliminationOrdering& b) {
    return a.order_ == b.order_;
  }

 private:
  std::vector<Node> order_;
  std::vector<int> pos_;
};

/// A triangle (a, middle, b): eliminating `middle` connected a to b.
struct Triangle {
  Node a = 0;
  Node middle = 0;
  Node b = 0;
  friend auto operator<=>(const Triangle&, const Triangle&) = default;
};

struct EliminationResult {
  std::vector<Arc> estar;  ///< sorted
  std::vector<Triangle> delta;  ///< in elimination order
  int width = 0;
  std::vector<int> fill_per_step;

  bool in_estar(Node u, Node v) const {
    return std::binary_search(estar.begin(), estar.end(), Arc{u, v});
  }
};

namespace detail {

/// Mutable adjacency used while eliminating. Self-loops are stored in both
/// directions so they count twice toward degree.
struct EliminationGraph {
  std::vector<std::set<Node>> out;
  std::vector<std::set<Node>> in;
  std::vector<bool> alive;

  explicit EliminationGraph(const DirectedGraph& g)
      : out(g.node_count() + 1), in(g.node_count() + 1), alive(g.node_count() + 1, true) {
    alive[0] = false;
    for (const Arc& a : g.arcs()) {
      out[a.from].insert(a.to);
      in[a.to].insert(a.from);
    }
  }

  int degree(Node v) const { return static_cast<int>(out[v].size() + in[v].size()); }

  int fill(Node v) const {
    int count = 0;
    for (Node a : in[v]) {
      if (a == v) continue;
      for (Node b : out[v]) {
        if (b == v || b == a) continue;
        if (!out[a].contains(b)) ++count;
      }
    }
    return count;
  }

  /// Removes v, connecting its in-neighbors to its out-neighbors.
  /// Calls on_triangle(a, b, added) for every in/out pair with a != b.
  template <typename OnTriangle>
  void eliminate(Node v, OnTriangle&& on_triangle) {
    std::vector<Node> ins, outs;
    for (Node a : in[v])
      if (a != v) ins.push_back(a);
    for (Node b : out[v])
      if (b != v) outs.push_back(b);
    for (Node a : ins) {
      for (Node b : outs) {
        if (a == b) continue;
        bool added = out[a].insert(b).second;
        if (added) in[b].insert(a);
        on_triangle(a, b, added);
      }
    }
    for (Node a : ins) out[a].erase(v);
    for (Node b : outs) in[b].erase(v);
    out[v].clear();
    in[v].clear();
    alive[v] = false;
  }

  std::vector<Node> neighbors(Node v) const {
    std::set<Node> all(out[v].begin(), out[v].end());
    all.insert(in[v].begin(), in[v].end());
    all.erase(v);
    return {all.begin(), all.end()};
  }
};

enum class GreedyScore { degree, fill };

inline EliminationOrdering greedy_order(const DirectedGraph& g,
                                        const std::vector<Node>& pinned_tail,
                                        GreedyScore score_kind) {
  const int n = g.node_count();
  std::vector<bool> pinned(n + 1, false);
  for (Node v : pinned_tail) {
    if (!g.contains(v))
      throw graph_error("pinned node " + std::to_string(v) + " is not in the graph");
    if (pinned[v]) throw graph_error("pinned node " + std::to_string(v) + " repeated");
    pinned[v] = true;
  }

  EliminationGraph work(g);
  auto score = [&](Node v) {
    return score_kind == GreedyScore::degree ? work.degree(v) : work.fill(v);
  };
  std::vector<int> current(n + 1, 0);
  std::set<std::pair<int, Node>> queue;
  for (Node v = 1; v <= n; ++v) {
    if (pinned[v]) continue;
    current[v] = score(v);
    queue.insert({current[v], v});
  }

  std::vector<Node> order;
  order.reserve(n);
  while (!queue.empty()) {
    Node v = queue.begin()->second;
    queue.erase(queue.begin());
    std::vector<Node> touched = work.neighbors(v);
    work.eliminate(v, [](Node, Node, bool) {});
    order.push_back(v);

    std::set<Node> stale(touched.begin(), touched.end());
    if (score_kind == GreedyScore::fill) {
      for (Node x : touched)
        for (Node y : work.neighbors(x)) stale.insert(y);
    }
    for (Node w : stale) {
      if (pinned[w] || !work.alive[w]) continue;
      int s = score(w);
      if (s != current[w]) {
        queue.erase({current[w], w});
        current[w] = s;
        queue.insert({s, w});
      }
    }
  }
  order.insert(order.end(), pinned_tail.begin(), pinned_tail.end());
  return EliminationOrdering(std::move(order));
}

}  // namespace detail

/// Builds the vertex elimination graph E*, the triangle set and the width of
/// `order` on `g`. Width is the out-degree of each vertex at the moment it is
/// eliminated (self-loop excluded), maximised over the ordering.
inline EliminationResult eliminate(const DirectedGraph& g, const EliminationOrdering& order) {
  if (static_cast<int>(order.size()) != g.node_count())
    throw graph_error("elimination ordering has " + std::to_string(order.size()) +
                      " entries for a graph with " + std::to_string(g.node_count()) +
                      " nodes");
  EliminationResult result;
  detail::EliminationGraph work(g);
  std::set<Arc> estar(g.arcs().begin(), g.arcs().end());
  result.fill_per_step.reserve(order.size());

  for (Node v : order.order()) {
    int out_degree = static_cast<int>(work.out[v].size()) - (work.out[v].contains(v) ? 1 : 0);
    result.width = std::max(result.width, out_degree);
    int fill = 0;
    work.eliminate(v, [&](Node a, Node b, bool added) {
      result.delta.push_back({a, v, b});
      if (added) {
        ++fill;
        estar.insert({a, b});
      }
    });
    result.fill_per_step.push_back(fill);
  }
  result.estar.assign(estar.begin(), estar.end());
  return result;
}

/// Greedy minimum-degree ordering (in-degree + out-degree in the partially
/// eliminated graph), ties by lowest id. `pinned_tail` nodes are never chosen
/// greedily and end the ordering in the given sequence.
inline EliminationOrdering order_min_degree(const DirectedGraph& g,
                                            const std::vector<Node>& pinned_tail = {}) {
  return detail::greedy_order(g, pinned_tail, detail::GreedyScore::degree);
}

/// Greedy minimum fill-in ordering; same tie-break and pinning as order_min_degree.
inline EliminationOrdering order_min_fill(const DirectedGraph& g,
                                          const std::vector<Node>& pinned_tail = {}) {
  return detail::greedy_order(g, pinned_tail, detail::GreedyScore::fill);
}

}  // namespace vegraph
