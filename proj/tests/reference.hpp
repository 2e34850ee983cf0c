#pragma once

// Slow, independent re-implementations used as test oracles. They rebuild an
// adjacency matrix and recompute every score from scratch at each step.

#include <set>
#include <vector>

#include "vegraph/elimination.hpp"

namespace vegraph::testing {

using Matrix = std::vector<std::vector<bool>>;

inline Matrix to_matrix(const DirectedGraph& g) {
  Matrix m(g.node_count() + 1, std::vector<bool>(g.node_count() + 1, false));
  for (const Arc& a : g.arcs()) m[a.from][a.to] = true;
  return m;
}

struct NaiveElimination {
  std::set<Arc> estar;
  std::vector<Triangle> delta;
  int width = 0;
};

inline NaiveElimination naive_eliminate(const DirectedGraph& g, const std::vector<Node>& order) {
  const int n = g.node_count();
  Matrix m = to_matrix(g);
  std::vector<bool> alive(n + 1, true);
  NaiveElimination out;
  for (const Arc& a : g.arcs()) out.estar.insert(a);
  for (Node v : order) {
    int outdeg = 0;
    for (Node b = 1; b <= n; ++b)
      if (b != v && alive[b] && m[v][b]) ++outdeg;
    out.width = std::max(out.width, outdeg);
    std::vector<std::pair<Node, Node>> adds;
    for (Node a = 1; a <= n; ++a) {
      if (a == v || !alive[a] || !m[a][v]) continue;
      for (Node b = 1; b <= n; ++b) {
        if (b == v || b == a || !alive[b] || !m[v][b]) continue;
        out.delta.push_back({a, v, b});
        adds.push_back({a, b});
      }
    }
    for (auto [a, b] : adds) {
      m[a][b] = true;
      out.estar.insert({a, b});
    }
    alive[v] = false;
    for (Node x = 1; x <= n; ++x) m[x][v] = m[v][x] = false;
  }
  return out;
}

enum class NaiveScore { degree, fill };

inline std::vector<Node> naive_greedy(const DirectedGraph& g, const std::vector<Node>& pinned,
                                      NaiveScore kind) {
  const int n = g.node_count();
  Matrix m = to_matrix(g);
  std::vector<bool> alive(n + 1, true), is_pinned(n + 1, false);
  for (Node p : pinned) is_pinned[p] = true;
  std::vector<Node> order;
  auto score = [&](Node v) {
    int s = 0;
    if (kind == NaiveScore::degree) {
      for (Node x = 1; x <= n; ++x) {
        if (!alive[x]) continue;
        if (m[v][x]) ++s;
        if (m[x][v]) ++s;
      }
      return s;
    }
    for (Node a = 1; a <= n; ++a)
      for (Node b = 1; b <= n; ++b)
        if (a != v && b != v && a != b && alive[a] && alive[b] && m[a][v] && m[v][b] && !m[a][b])
          ++s;
    return s;
  };
  for (;;) {
    Node best = 0;
    int best_score = 0;
    for (Node v = 1; v <= n; ++v) {
      if (!alive[v] || is_pinned[v]) continue;
      int s = score(v);
      if (best == 0 || s < best_score) {
        best = v;
        best_score = s;
      }
    }
    if (best == 0) break;
    for (Node a = 1; a <= n; ++a)
      for (Node b = 1; b <= n; ++b)
        if (a != best && b != best && a != b && alive[a] && alive[b] && m[a][best] && m[best][b])
          m[a][b] = true;
    alive[best] = false;
    for (Node x = 1; x <= n; ++x) m[x][best] = m[best][x] = false;
    order.push_back(best);
  }
  order.insert(order.end(), pinned.begin(), pinned.end());
  return order;
}

}  // namespace vegraph::testing
