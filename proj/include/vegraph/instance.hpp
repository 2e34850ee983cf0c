#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vegraph/cnf.hpp"
#include "vegraph/graph.hpp"

namespace vegraph {

enum class ConstraintKind { acyclic, reach, noreach, ereach };

inline std::string_view to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::acyclic: return "acyclic";
    case ConstraintKind::reach: return "reach";
    case ConstraintKind::noreach: return "noreach";
    case ConstraintKind::ereach: return "ereach";
  }
  return "?";
}

struct Constraint {
  ConstraintKind kind = ConstraintKind::acyclic;
  Node s = 0;
  Node t = 0;
  /// Acyclic only: when nonzero, arcs entering this node are ignored, so the
  /// constraint allows exactly the cycles that pass through it.
  Node cut = 0;

  static Constraint acyclic(Node cut = 0) { return {ConstraintKind::acyclic, 0, 0, cut}; }
  static Constraint reach(Node s, Node t) { return {ConstraintKind::reach, s, t, 0}; }
  static Constraint noreach(Node s, Node t) { return {ConstraintKind::noreach, s, t, 0}; }
  static Constraint ereach(Node s, Node t) { return {ConstraintKind::ereach, s, t, 0}; }

  bool has_endpoints() const { return kind != ConstraintKind::acyclic; }

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

inline std::string describe(const Constraint& c) {
  std::string out(to_string(c.kind));
  if (c.has_endpoints()) out += " " + std::to_string(c.s) + " " + std::to_string(c.t);
  else if (c.cut != 0) out += " " + std::to_string(c.cut);
  return out;
}

/// A formula with an underlying directed graph: base CNF, the graph, the
/// variable naming each arc, and the graph constraints to enforce.
struct GraphInstance {
  Cnf base;
  DirectedGraph graph;
  std::vector<Var> arc_var;  ///< parallel to graph.arcs()
  std::vector<Constraint> constraints;

  Var var_of_arc(Node u, Node v) const {
    auto idx = graph.arc_index(u, v);
    if (!idx)
      throw graph_error("no arc (" + std::to_string(u) + "," + std::to_string(v) + ")");
    return arc_var[*idx];
  }

  void validate() const {
    base.validate();
    if (arc_var.size() != graph.arc_count())
      throw format_error("arc variable map has " + std::to_string(arc_var.size()) +
                         " entries for " + std::to_string(graph.arc_count()) + " arcs");
    for (Var v : arc_var) {
      if (v < 1 || v > base.var_count)
        throw format_error("arc variable " + std::to_string(v) + " outside 1.." +
                           std::to_string(base.var_count));
    }
    for (const Constraint& c : constraints) {
      if (c.has_endpoints() && (!graph.contains(c.s) || !graph.contains(c.t)))
        throw graph_error("constraint '" + describe(c) + "' names a node outside the graph");
      if (c.cut != 0 && !graph.contains(c.cut))
        throw graph_error("constraint '" + describe(c) + "' names a node outside the graph");
    }
  }

  friend bool operator==(const GraphInstance&, const GraphInstance&) = default;
};

/// A graph whose arcs are named by literals (arc_lit parallel to graph.arcs()).
/// Encoders work on this so they can target either the instance's arc
/// variables or auxiliary copies of them.
struct LabeledGraph {
  DirectedGraph graph;
  std::vector<Lit> arc_lit;

  Lit lit(Node u, Node v) const { return arc_lit[*graph.arc_index(u, v)]; }
};

inline LabeledGraph label(const GraphInstance& inst) {
  return {inst.graph, std::vector<Lit>(inst.arc_var.begin(), inst.arc_var.end())};
}

/// Keeps the arcs for which keep(arc) holds.
template <typename Pred>
LabeledGraph filter_arcs(const LabeledGraph& lg, Pred keep) {
  std::vector<Arc> arcs;
  std::vector<Lit> lits;
  for (std::size_t i = 0; i < lg.graph.arc_count(); ++i) {
    if (keep(lg.graph.arcs()[i])) {
      arcs.push_back(lg.graph.arcs()[i]);
      lits.push_back(lg.arc_lit[i]);
    }
  }
  // arcs stay sorted, so the literal order survives the DirectedGraph sort
  return {DirectedGraph(lg.graph.node_count(), std::move(arcs)), std::move(lits)};
}

/// The labeled graph a constraint is actually stated over: acyclicity drops
/// arcs into its cut node; reachability-type constraints drop self-loops,
/// which never change whether one node reaches another.
inline LabeledGraph constraint_graph(const GraphInstance& inst, const Constraint& c) {
  LabeledGraph full = label(inst);
  if (c.kind == ConstraintKind::acyclic) {
    if (c.cut == 0) return full;
    return filter_arcs(full, [&](const Arc& a) { return a.to != c.cut; });
  }
  return filter_arcs(full, [](const Arc& a) { return !a.is_loop(); });
}

}  // namespace vegraph
