#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vegraph/instance.hpp"

namespace vegraph {

struct GridSpec {
  int rows = 0;
  int cols = 0;
};

inline Node grid_node(const GridSpec& g, int row, int col) { return row * g.cols + col + 1; }

/// Hamiltonian cycle on a rows x cols grid as a formula with an underlying
/// graph. Every cell gets exactly one enabled outgoing and one enabled
/// incoming arc; acyclicity of all enabled arcs except those entering the
/// anchor (cell 1) forces those arcs to form a single cycle through the anchor.
/// The cycle's direction through the anchor is fixed: below -> anchor and
/// anchor -> right are forced, and their reverses are not in the graph.
inline GraphInstance gen_grid_hc(const GridSpec& spec) {
  if (spec.rows < 2 || spec.cols < 2)
    throw std::invalid_argument("grid needs at least 2 rows and 2 columns, got " +
                                std::to_string(spec.rows) + "x" + std::to_string(spec.cols));
  const Node anchor = grid_node(spec, 0, 0);
  const Node right = grid_node(spec, 0, 1);
  const Node below = grid_node(spec, 1, 0);

  std::vector<Arc> arcs;
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      Node u = grid_node(spec, r, c);
      auto link = [&](Node v) {
        arcs.push_back({u, v});
        arcs.push_back({v, u});
      };
      if (c + 1 < spec.cols) link(grid_node(spec, r, c + 1));
      if (r + 1 < spec.rows) link(grid_node(spec, r + 1, c));
    }
  }
  std::erase(arcs, Arc{right, anchor});
  std::erase(arcs, Arc{anchor, below});

  GraphInstance inst;
  inst.graph = DirectedGraph(spec.rows * spec.cols, std::move(arcs));
  const int m = static_cast<int>(inst.graph.arc_count());
  inst.base.var_count = m;
  for (int i = 0; i < m; ++i) inst.arc_var.push_back(i + 1);

  auto exactly_one = [&](const std::vector<Var>& vars) {
    inst.base.add(Clause(vars.begin(), vars.end()));
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (std::size_t j = i + 1; j < vars.size(); ++j) inst.base.add({-vars[i], -vars[j]});
  };
  for (Node v = 1; v <= inst.graph.node_count(); ++v) {
    std::vector<Var> outs, ins;
    for (Node w : inst.graph.out_neighbors(v)) outs.push_back(inst.var_of_arc(v, w));
    for (Node w : inst.graph.in_neighbors(v)) ins.push_back(inst.var_of_arc(w, v));
    exactly_one(outs);
    exactly_one(ins);
  }
  inst.base.add({inst.var_of_arc(below, anchor)});
  inst.base.add({inst.var_of_arc(anchor, right)});
  inst.constraints.push_back(Constraint::acyclic(anchor));
  return inst;
}

/// Random instance: m distinct non-loop arcs sampled uniformly, one fresh
/// variable per arc, no base clauses, and one constraint of the given kind
/// with distinct endpoints drawn uniformly.
inline GraphInstance gen_random(int n, int m, ConstraintKind kind, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one node");
  const long max_arcs = static_cast<long>(n) * (n - 1);
  if (m < 0 || m > max_arcs)
    throw std::invalid_argument("arc count " + std::to_string(m) + " outside 0.." +
                                std::to_string(max_arcs));
  if (kind != ConstraintKind::acyclic && n < 2)
    throw std::invalid_argument("reachability constraints need two distinct nodes");

  std::mt19937_64 rng(seed);
  std::vector<Arc> all;
  for (Node u = 1; u <= n; ++u)
    for (Node v = 1; v <= n; ++v)
      if (u != v) all.push_back({u, v});
  // partial Fisher-Yates
  for (int i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(m);

  GraphInstance inst;
  inst.graph = DirectedGraph(n, std::move(all));
  inst.base.var_count = m;
  for (int i = 0; i < m; ++i) inst.arc_var.push_back(i + 1);

  if (kind == ConstraintKind::acyclic) {
    inst.constraints.push_back(Constraint::acyclic());
  } else {
    std::uniform_int_distribution<Node> node(1, n);
    Node s = node(rng);
    Node t = s;
    while (t == s) t = node(rng);
    inst.constraints.push_back({kind, s, t, 0});
  }
  return inst;
}

}  // namespace vegraph
