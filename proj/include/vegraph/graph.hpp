#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vegraph {

/// Node identifiers run from 1 to node_count.
using Node = int;

struct Arc {
  Node from = 0;
  Node to = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
  bool is_loop() const { return from == to; }
};

class graph_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable directed graph on nodes 1..n. Arcs are kept sorted and unique;
/// self-loops are allowed.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  DirectedGraph(int node_count, std::vector<Arc> arcs)
      : node_count_(node_count), arcs_(std::move(arcs)) {
    if (node_count_ < 1)
      throw graph_error("graph needs at least one node");
    for (const Arc& a : arcs_) {
      if (!contains(a.from) || !contains(a.to))
        throw graph_error("arc (" + std::to_string(a.from) + "," +
                          std::to_string(a.to) + ") has an endpoint outside 1.." +
                          std::to_string(node_count_));
    }
    std::sort(arcs_.begin(), arcs_.end());
    auto dup = std::adjacent_find(arcs_.begin(), arcs_.end());
    if (dup != arcs_.end())
      throw graph_error("duplicate arc (" + std::to_string(dup->from) + "," +
                        std::to_string(dup->to) + ")");
    out_.assign(node_count_ + 1, {});
    in_.assign(node_count_ + 1, {});
    for (const Arc& a : arcs_) {
      out_[a.from].push_back(a.to);
      in_[a.to].push_back(a.from);
    }
    for (auto& v : in_) std::sort(v.begin(), v.end());
  }

  int node_count() const { return node_count_; }
  std::size_t arc_count() const { return arcs_.size(); }
  std::span<const Arc> arcs() const { return arcs_; }

  bool contains(Node v) const { return v >= 1 && v <= node_count_; }

  /// Sorted successor list (includes v itself for a self-loop).
  std::span<const Node> out_neighbors(Node v) const { return out_.at(v); }
  std::span<const Node> in_neighbors(Node v) const { return in_.at(v); }

  /// Position of (u,v) in arcs(), if present.
  std::optional<std::size_t> arc_index(Node u, Node v) const {
    Arc key{u, v};
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), key);
    if (it == arcs_.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - arcs_.begin());
  }
  bool has_arc(Node u, Node v) const { return arc_index(u, v).has_value(); }

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.node_count_ == b.node_count_ && a.arcs_ == b.arcs_;
  }

 private:
  int node_count_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<Node>> out_;
  std::vector<std::vector<Node>> in_;
};

/// Nodes reachable from `source` (source itself included via the empty path).
inline std::vector<bool> reachable_from(const DirectedGraph& g, Node source) {
  std::vector<bool> seen(g.node_count() + 1, false);
  std::queue<Node> todo;
  seen[source] = true;
  todo.push(source);
  while (!todo.empty()) {
    Node u = todo.front();
    todo.pop();
    for (Node v : g.out_neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        todo.push(v);
      }
    }
  }
  return seen;
}

/// G+: (u,v) is an arc iff a nonempty path u -> v exists.
inline DirectedGraph transitive_closure(const DirectedGraph& g) {
  std::vector<Arc> closure;
  const int n = g.node_count();
  for (Node u = 1; u <= n; ++u) {
    // Start from the successors so that (u,u) appears only for nodes on a cycle.
    std::vector<bool> seen(n + 1, false);
    std::queue<Node> todo;
    for (Node v : g.out_neighbors(u)) {
      if (!seen[v]) {
        seen[v] = true;
        todo.push(v);
      }
    }
    while (!todo.empty()) {
      Node x = todo.front();
      todo.pop();
      for (Node y : g.out_neighbors(x)) {
        if (!seen[y]) {
          seen[y] = true;
          todo.push(y);
        }
      }
    }
    for (Node v = 1; v <= n; ++v)
      if (seen[v]) closure.push_back({u, v});
  }
  return DirectedGraph(n, std::move(closure));
}

/// Copy of `g` without self-loop arcs.
inline DirectedGraph without_loops(const DirectedGraph& g) {
  std::vector<Arc> arcs;
  for (const Arc& a : g.arcs())
    if (!a.is_loop()) arcs.push_back(a);
  return DirectedGraph(g.node_count(), std::move(arcs));
}

}  // namespace vegraph
