#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vegraph/encoders.hpp"
#include "vegraph/instance.hpp"
#include "vegraph/oracle.hpp"

namespace vegraph::testing {

/// The 8-node simple cycle 1->2->...->8->1.
inline DirectedGraph cycle_graph(int n) {
  std::vector<Arc> arcs;
  for (Node i = 1; i <= n; ++i) arcs.push_back({i, i % n + 1});
  return DirectedGraph(n, std::move(arcs));
}

/// Instance over `g` with one free variable per arc (in arcs() order).
inline GraphInstance free_instance(const DirectedGraph& g,
                                   std::vector<Constraint> constraints = {}) {
  GraphInstance inst;
  inst.graph = g;
  inst.base.var_count = static_cast<int>(g.arc_count());
  for (std::size_t i = 0; i < g.arc_count(); ++i) inst.arc_var.push_back(static_cast<Var>(i + 1));
  inst.constraints = std::move(constraints);
  return inst;
}

inline GraphInstance cycle8_instance(std::vector<Constraint> constraints = {}) {
  return free_instance(cycle_graph(8), std::move(constraints));
}

inline const std::vector<Node>& cycle8_order() {
  static const std::vector<Node> order{2, 4, 6, 8, 1, 5, 3, 7};
  return order;
}

/// Forces every arc variable of inst true with unit clauses.
inline void force_all_arcs(GraphInstance& inst, bool value = true) {
  for (Var v : inst.arc_var) inst.base.add({value ? v : -v});
}

inline DirectedGraph graph_of(int n, std::vector<Arc> arcs) {
  return DirectedGraph(n, std::move(arcs));
}

/// Random digraph; each ordered pair (self-loops included when allowed) is an
/// arc with probability p.
inline DirectedGraph random_graph(std::mt19937_64& rng, int n, double p, bool loops = false) {
  std::bernoulli_distribution coin(p);
  std::vector<Arc> arcs;
  for (Node u = 1; u <= n; ++u)
    for (Node v = 1; v <= n; ++v)
      if ((u != v || loops) && coin(rng)) arcs.push_back({u, v});
  return DirectedGraph(n, std::move(arcs));
}

/// Digraph on n nodes whose arcs are the set bits of `mask` over all
/// non-loop ordered pairs in lexicographic order.
inline DirectedGraph graph_from_mask(int n, std::uint32_t mask) {
  std::vector<Arc> arcs;
  int bit = 0;
  for (Node u = 1; u <= n; ++u)
    for (Node v = 1; v <= n; ++v) {
      if (u == v) continue;
      if (mask & (1U << bit)) arcs.push_back({u, v});
      ++bit;
    }
  return DirectedGraph(n, std::move(arcs));
}

/// Satisfiability by plain DPLL, independent of the CDCL solver.
inline bool satisfiable(const Cnf& cnf) {
  detail::ExtensionSearch search(cnf.clauses, cnf.var_count);
  return search.extends(Model(0));
}

inline bool satisfiable(const GraphInstance& inst, const EncodedFormula& enc) {
  return satisfiable(enc.conjoin(inst.base));
}

struct NamedEncoding {
  std::string name;
  EncodedFormula formula;
};

/// Every method that applies to the instance's single constraint, under both
/// heuristic orderings where an ordering is used.
inline std::vector<NamedEncoding> all_encodings(const GraphInstance& inst) {
  using K = EncodingMethod::Kind;
  const ConstraintKind kind = inst.constraints.at(0).kind;
  std::vector<EncodingMethod> methods;
  if (kind == ConstraintKind::acyclic) {
    methods = {{K::ve}, {K::tc}, {K::tr}};
  } else if (kind == ConstraintKind::noreach) {
    methods = {{K::ve}};
  } else {
    methods = {{K::ve},
               {K::explicit_paths},
               {K::via_acyclic, AcyclicMethod::ve},
               {K::via_acyclic, AcyclicMethod::tc},
               {K::via_acyclic, AcyclicMethod::tr}};
  }
  std::vector<NamedEncoding> out;
  for (const auto& m : methods) {
    out.push_back({to_string(m), encode_instance(inst, {{m}, OrderingSpec::min_degree()})});
    const bool ordered =
        m.kind == K::ve || (m.kind == K::via_acyclic && m.inner == AcyclicMethod::ve);
    if (ordered && kind != ConstraintKind::noreach)
      out.push_back(
          {to_string(m) + "/minfill", encode_instance(inst, {{m}, OrderingSpec::min_fill()})});
  }
  return out;
}

/// Calls fn(model) for every model of cnf; cnf must be small.
template <typename Fn>
void for_each_model(const Cnf& cnf, Fn fn) {
  const std::uint64_t total = std::uint64_t{1} << cnf.var_count;
  Model m(cnf.var_count);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (Var v = 1; v <= cnf.var_count; ++v) m.set(v, (bits >> (v - 1)) & 1U);
    if (m.first_falsified(cnf) < 0) fn(m);
  }
}

/// Every node has one out-arc and one in-arc, and following out-arcs from
/// node 1 visits all nodes before returning.
inline bool is_hamiltonian_cycle(const DirectedGraph& g) {
  const int n = g.node_count();
  for (Node v = 1; v <= n; ++v)
    if (g.out_neighbors(v).size() != 1 || g.in_neighbors(v).size() != 1) return false;
  Node v = 1;
  for (int step = 1; step < n; ++step) {
    v = g.out_neighbors(v)[0];
    if (v == 1) return false;
  }
  return g.out_neighbors(v)[0] == 1;
}

}  // namespace vegraph::testing
