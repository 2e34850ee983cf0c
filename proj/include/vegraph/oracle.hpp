#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vegraph/cnf.hpp"
#include "vegraph/encoded.hpp"
#include "vegraph/graph.hpp"
#include "vegraph/instance.hpp"

namespace vegraph {

/// G_M: the arcs whose variable is true in m.
inline DirectedGraph decode_model(const GraphInstance& inst, const Model& m) {
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < inst.graph.arc_count(); ++i)
    if (m.value(inst.arc_var[i])) arcs.push_back(inst.graph.arcs()[i]);
  return DirectedGraph(inst.graph.node_count(), std::move(arcs));
}

/// Vertex sequence of some cycle (first vertex not repeated), or empty.
inline std::vector<Node> find_cycle(const DirectedGraph& g) {
  const int n = g.node_count();
  enum : char { white, grey, black };
  std::vector<char> color(n + 1, white);
  std::vector<Node> parent(n + 1, 0);
  for (Node root = 1; root <= n; ++root) {
    if (color[root] != white) continue;
    // iterative DFS: (node, next successor index)
    std::vector<std::pair<Node, std::size_t>> stack{{root, 0}};
    color[root] = grey;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      auto succ = g.out_neighbors(u);
      if (next == succ.size()) {
        color[u] = black;
        stack.pop_back();
        continue;
      }
      Node v = succ[next++];
      if (color[v] == grey) {
        std::vector<Node> cycle;
        for (Node x = u; x != v; x = parent[x]) cycle.push_back(x);
        cycle.push_back(v);
        return {cycle.rbegin(), cycle.rend()};
      }
      if (color[v] == white) {
        color[v] = grey;
        parent[v] = u;
        stack.push_back({v, 0});
      }
    }
  }
  return {};
}

/// Kahn's algorithm: acyclic iff every node can be removed in topological order.
inline bool check_acyclic(const DirectedGraph& g) {
  const int n = g.node_count();
  std::vector<int> indeg(n + 1, 0);
  for (const Arc& a : g.arcs()) ++indeg[a.to];
  std::vector<Node> ready;
  for (Node v = 1; v <= n; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  int removed = 0;
  while (!ready.empty()) {
    Node u = ready.back();
    ready.pop_back();
    ++removed;
    for (Node v : g.out_neighbors(u))
      if (--indeg[v] == 0) ready.push_back(v);
  }
  return removed == n;
}

/// s reaches itself by the empty path.
inline bool check_reach(const DirectedGraph& g, Node s, Node t) { return reachable_from(g, s)[t]; }

/// First node reachable from s (s included) that cannot reach t.
inline std::optional<Node> ereach_violation(const DirectedGraph& g, Node s, Node t) {
  auto from_s = reachable_from(g, s);
  // nodes that reach t: reverse search from t
  std::vector<bool> to_t(g.node_count() + 1, false);
  std::vector<Node> todo{t};
  to_t[t] = true;
  while (!todo.empty()) {
    Node v = todo.back();
    todo.pop_back();
    for (Node u : g.in_neighbors(v))
      if (!to_t[u]) {
        to_t[u] = true;
        todo.push_back(u);
      }
  }
  for (Node v = 1; v <= g.node_count(); ++v)
    if (from_s[v] && !to_t[v]) return v;
  return std::nullopt;
}

inline bool check_ereach(const DirectedGraph& g, Node s, Node t) {
  return !ereach_violation(g, s, t).has_value();
}

struct ConstraintVerdict {
  Constraint constraint;
  bool pass = false;
  /// A cycle for acyclicity, otherwise the offending node.
  std::vector<Node> witness;
};

/// Judges one constraint on a decoded graph.
inline ConstraintVerdict judge(const DirectedGraph& gm, const Constraint& c) {
  ConstraintVerdict v{c, true, {}};
  switch (c.kind) {
    case ConstraintKind::acyclic: {
      DirectedGraph scope = gm;
      if (c.cut != 0) {
        std::vector<Arc> kept;
        for (const Arc& a : gm.arcs())
          if (a.to != c.cut) kept.push_back(a);
        scope = DirectedGraph(gm.node_count(), std::move(kept));
      }
      if (!check_acyclic(scope)) {
        v.pass = false;
        v.witness = find_cycle(scope);
      }
      break;
    }
    case ConstraintKind::reach:
      if (!check_reach(gm, c.s, c.t)) v = {c, false, {c.t}};
      break;
    case ConstraintKind::noreach:
      if (check_reach(gm, c.s, c.t)) v = {c, false, {c.t}};
      break;
    case ConstraintKind::ereach:
      if (auto bad = ereach_violation(gm, c.s, c.t)) v = {c, false, {*bad}};
      break;
  }
  return v;
}

inline bool all_hold(const DirectedGraph& gm, const std::vector<Constraint>& cs) {
  for (const Constraint& c : cs)
    if (!judge(gm, c).pass) return false;
  return true;
}

struct VerificationReport {
  bool base_satisfied = false;
  long falsified_clause = -1;  ///< index into base clauses
  std::vector<Arc> decoded_arcs;
  std::vector<ConstraintVerdict> verdicts;

  bool all_pass() const {
    if (!base_satisfied) return false;
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
};

/// Checks m against the base clauses and every declared constraint.
inline VerificationReport verify(const GraphInstance& inst, const Model& m) {
  VerificationReport report;
  report.falsified_clause = m.first_falsified(inst.base);
  report.base_satisfied = report.falsified_clause < 0;
  DirectedGraph gm = decode_model(inst, m);
  report.decoded_arcs.assign(gm.arcs().begin(), gm.arcs().end());
  for (const Constraint& c : inst.constraints) report.verdicts.push_back(judge(gm, c));
  return report;
}

// ---------------------------------------------------------------------------
// Exhaustive checking

class enumeration_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Plain DPLL for deciding whether fixed base values extend to a model of the
/// added clauses. Deliberately unrelated to the CDCL solver it cross-checks.
class ExtensionSearch {
 public:
  ExtensionSearch(const std::vector<Clause>& clauses, int var_count)
      : clauses_(clauses), value_(var_count + 1, unknown) {}

  /// fixed[v] for v in 1..fixed.var_count() is held constant.
  bool extends(const Model& fixed) {
    std::fill(value_.begin(), value_.end(), unknown);
    trail_.clear();
    for (Var v = 1; v <= fixed.var_count(); ++v) value_[v] = fixed.value(v) ? 1 : 0;
    return search();
  }

 private:
  static constexpr signed char unknown = -1;

  signed char lit_value(Lit l) const {
    signed char v = value_[var_of(l)];
    if (v == unknown) return unknown;
    return l > 0 ? v : static_cast<signed char>(1 - v);
  }

  void assign(Lit l) {
    value_[var_of(l)] = l > 0 ? 1 : 0;
    trail_.push_back(var_of(l));
  }

  /// Unit propagation to fixpoint. Returns false on an empty clause; sets
  /// branch_lit to an unassigned literal of some open clause (0 if none).
  bool propagate(Lit& branch_lit) {
    bool changed = true;
    while (changed) {
      changed = false;
      branch_lit = 0;
      for (const Clause& c : clauses_) {
        Lit open = 0;
        int open_count = 0;
        bool sat = false;
        for (Lit l : c) {
          signed char v = lit_value(l);
          if (v == 1) {
            sat = true;
            break;
          }
          if (v == unknown) {
            open = l;
            ++open_count;
          }
        }
        if (sat) continue;
        if (open_count == 0) return false;
        if (open_count == 1) {
          assign(open);
          changed = true;
        } else if (branch_lit == 0) {
          branch_lit = open;
        }
      }
    }
    return true;
  }

  bool search() {
    const std::size_t mark = trail_.size();
    Lit branch = 0;
    if (!propagate(branch)) {
      undo(mark);
      return false;
    }
    if (branch == 0) return true;
    for (Lit choice : {branch, -branch}) {
      const std::size_t before = trail_.size();
      assign(choice);
      if (search()) return true;
      undo(before);
    }
    undo(mark);
    return false;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = unknown;
      trail_.pop_back();
    }
  }

  const std::vector<Clause>& clauses_;
  std::vector<signed char> value_;
  std::vector<Var> trail_;
};

}  // namespace detail

struct BruteForceResult {
  bool sound = true;
  bool complete = true;
  std::uint64_t base_models = 0;  ///< assignments satisfying the base clauses
  /// First counterexample for each direction (base assignment), if any.
  std::optional<Model> unsound_witness;
  std::optional<Model> incomplete_witness;
};

inline constexpr int max_enumerated_vars = 24;

/// Enumerates every assignment of the base variables. For each one that
/// satisfies the base clauses, an exhaustive search decides whether it
/// extends to a model of the added clauses; that must happen exactly when the
/// decoded graph meets all of the instance's constraints.
inline BruteForceResult brute_force_check(const GraphInstance& inst,
                                          const EncodedFormula& encoded) {
  const int base_vars = inst.base.var_count;
  if (base_vars > max_enumerated_vars)
    throw enumeration_error("instance has " + std::to_string(base_vars) +
                            " base variables; enumeration is limited to " +
                            std::to_string(max_enumerated_vars));
  BruteForceResult result;
  detail::ExtensionSearch search(encoded.added_clauses, encoded.new_var_count);
  const std::uint64_t total = std::uint64_t{1} << base_vars;
  Model m(base_vars);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (Var v = 1; v <= base_vars; ++v) m.set(v, (bits >> (v - 1)) & 1U);
    if (m.first_falsified(inst.base) >= 0) continue;
    ++result.base_models;
    const bool wanted = all_hold(decode_model(inst, m), inst.constraints);
    const bool extends = search.extends(m);
    if (extends && !wanted && result.sound) {
      result.sound = false;
      result.unsound_witness = m;
    }
    if (!extends && wanted && result.complete) {
      result.complete = false;
      result.incomplete_witness = m;
    }
  }
  return result;
}

}  // namespace vegraph
