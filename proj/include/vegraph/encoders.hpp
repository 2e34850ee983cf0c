#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vegraph/cnf.hpp"
#include "vegraph/elimination.hpp"
#include "vegraph/encoded.hpp"
#include "vegraph/instance.hpp"

namespace vegraph {

class encode_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class AcyclicMethod { ve, tc, tr };

/// How a single constraint is turned into clauses.
struct EncodingMethod {
  enum class Kind { ve, tc, tr, explicit_paths, via_acyclic };
  Kind kind = Kind::ve;
  AcyclicMethod inner = AcyclicMethod::ve;  ///< via_acyclic only

  friend bool operator==(const EncodingMethod&, const EncodingMethod&) = default;
};

inline std::string_view to_string(AcyclicMethod m) {
  switch (m) {
    case AcyclicMethod::ve: return "ve";
    case AcyclicMethod::tc: return "tc";
    case AcyclicMethod::tr: return "tr";
  }
  return "?";
}

inline std::string to_string(const EncodingMethod& m) {
  using K = EncodingMethod::Kind;
  switch (m.kind) {
    case K::ve: return "ve";
    case K::tc: return "tc";
    case K::tr: return "tr";
    case K::explicit_paths: return "explicit";
    case K::via_acyclic: return "via-acyclic:" + std::string(to_string(m.inner));
  }
  return "?";
}

/// Accepts ve | tc | tr | explicit | via-acyclic:{ve|tc|tr}.
inline std::optional<EncodingMethod> parse_method(std::string_view name) {
  using K = EncodingMethod::Kind;
  if (name == "ve") return EncodingMethod{K::ve};
  if (name == "tc") return EncodingMethod{K::tc};
  if (name == "tr") return EncodingMethod{K::tr};
  if (name == "explicit") return EncodingMethod{K::explicit_paths};
  constexpr std::string_view via = "via-acyclic:";
  if (name.starts_with(via)) {
    auto inner = name.substr(via.size());
    if (inner == "ve") return EncodingMethod{K::via_acyclic, AcyclicMethod::ve};
    if (inner == "tc") return EncodingMethod{K::via_acyclic, AcyclicMethod::tc};
    if (inner == "tr") return EncodingMethod{K::via_acyclic, AcyclicMethod::tr};
  }
  return std::nullopt;
}

/// Which elimination ordering to use where a vertex elimination graph is needed.
struct OrderingSpec {
  enum class Heuristic { min_degree, min_fill, given };
  Heuristic heuristic = Heuristic::min_degree;
  std::vector<Node> given;  ///< first-eliminated first

  static OrderingSpec min_degree() { return {}; }
  static OrderingSpec min_fill() { return {Heuristic::min_fill, {}}; }
  static OrderingSpec from(std::vector<Node> order) { return {Heuristic::given, std::move(order)}; }
};

inline std::string to_string(const OrderingSpec& o) {
  switch (o.heuristic) {
    case OrderingSpec::Heuristic::min_degree: return "mindegree";
    case OrderingSpec::Heuristic::min_fill: return "minfill";
    case OrderingSpec::Heuristic::given: return "given";
  }
  return "?";
}

/// Heuristic orderings honour `pins`; a given ordering is returned as is.
inline EliminationOrdering resolve_ordering(const DirectedGraph& g, const OrderingSpec& spec,
                                            const std::vector<Node>& pins) {
  switch (spec.heuristic) {
    case OrderingSpec::Heuristic::min_degree: return order_min_degree(g, pins);
    case OrderingSpec::Heuristic::min_fill: return order_min_fill(g, pins);
    case OrderingSpec::Heuristic::given: break;
  }
  if (static_cast<int>(spec.given.size()) != g.node_count())
    throw graph_error("given ordering has " + std::to_string(spec.given.size()) +
                      " nodes, graph has " + std::to_string(g.node_count()));
  return EliminationOrdering(spec.given);
}

/// Nodes a constraint's vertex elimination encoding needs at the end of the
/// ordering: s then t for reachability, t for eventual reachability.
inline std::vector<Node> elimination_pins(const Constraint& c) {
  switch (c.kind) {
    case ConstraintKind::reach:
      if (c.s == c.t) return {c.t};
      return {c.s, c.t};
    case ConstraintKind::ereach: return {c.t};
    default: return {};
  }
}

namespace detail {

/// Collects clauses and auxiliary variables for one encoding call.
class Emitter {
 public:
  Emitter(VarAllocator& alloc, EncodedFormula& out, std::string prefix = {})
      : alloc_(alloc), out_(out), prefix_(std::move(prefix)) {}

  /// Allocates one contiguous block, one variable per key, and returns the first id.
  Var declare(const std::string& family, const std::vector<AuxKey>& keys) {
    Var first = alloc_.block(static_cast<int>(keys.size()));
    auto& fam = out_.aux[prefix_ + family];
    for (std::size_t i = 0; i < keys.size(); ++i) fam[keys[i]] = first + static_cast<Var>(i);
    return first;
  }

  void add(const char* rule, Clause c) {
    ++out_.stats.rules[prefix_ + rule];
    out_.added_clauses.push_back(std::move(c));
  }

  Emitter nested(const std::string& ns) { return Emitter(alloc_, out_, prefix_ + ns); }

  EncodedFormula& out() { return out_; }
  VarAllocator& alloc() { return alloc_; }

 private:
  VarAllocator& alloc_;
  EncodedFormula& out_;
  std::string prefix_;
};

inline void record_elimination(EncodeStats& stats, const EliminationResult& r) {
  stats.eliminated = true;
  stats.width = std::max(stats.width, r.width);
  stats.estar += r.estar.size();
  stats.delta += r.delta.size();
}

/// e'-style variables indexed by the arcs of E*.
class ArcVars {
 public:
  ArcVars() = default;
  ArcVars(std::vector<Arc> arcs, Var first) : arcs_(std::move(arcs)), first_(first) {}

  std::optional<Var> find(Node u, Node v) const {
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), Arc{u, v});
    if (it == arcs_.end() || *it != Arc{u, v}) return std::nullopt;
    return first_ + static_cast<Var>(it - arcs_.begin());
  }
  Var operator()(Node u, Node v) const { return *find(u, v); }

 private:
  std::vector<Arc> arcs_;
  Var first_ = 0;
};

inline std::vector<AuxKey> arc_keys(std::span<const Arc> arcs) {
  std::vector<AuxKey> keys;
  keys.reserve(arcs.size());
  for (const Arc& a : arcs) keys.push_back({a.from, a.to});
  return keys;
}

inline std::vector<AuxKey> node_keys(int n) {
  std::vector<AuxKey> keys;
  for (Node i = 1; i <= n; ++i) keys.push_back({i});
  return keys;
}

// ---------------------------------------------------------------------------
// Acyclicity

/// Transitive closure: t_ik for every ordered pair. t_jj in the transitivity
/// rule stands for the empty path, which turns it into e_ij -> t_ij.
inline void acyclic_tc(const LabeledGraph& lg, Emitter& em) {
  const int n = lg.graph.node_count();
  std::vector<AuxKey> keys;
  keys.reserve(static_cast<std::size_t>(n) * n);
  for (Node i = 1; i <= n; ++i)
    for (Node k = 1; k <= n; ++k) keys.push_back({i, k});
  const Var first = em.declare("tc", keys);
  auto tc = [&](Node i, Node k) { return first + (i - 1) * n + (k - 1); };

  for (std::size_t idx = 0; idx < lg.graph.arc_count(); ++idx) {
    const Arc& a = lg.graph.arcs()[idx];
    const Lit e = lg.arc_lit[idx];
    if (a.is_loop()) {
      em.add("self-loop", {-e});
      continue;
    }
    for (Node k = 1; k <= n; ++k) {
      if (k == a.to)
        em.add("transitivity", {-e, tc(a.from, a.to)});
      else
        em.add("transitivity", {-e, -tc(a.to, k), tc(a.from, k)});
    }
  }
  for (std::size_t idx = 0; idx < lg.graph.arc_count(); ++idx) {
    const Arc& a = lg.graph.arcs()[idx];
    if (!a.is_loop()) em.add("antisymmetry", {-lg.arc_lit[idx], -tc(a.to, a.from)});
  }
}

/// Tree reduction: d_in means the longest enabled path from i has length <= n.
inline void acyclic_tr(const LabeledGraph& lg, Emitter& em) {
  const int n = lg.graph.node_count();
  std::vector<AuxKey> keys;
  for (Node i = 1; i <= n; ++i)
    for (int level = 0; level < n; ++level) keys.push_back({i, level});
  const Var first = em.declare("depth", keys);
  auto depth = [&](Node i, int level) { return first + (i - 1) * n + level; };

  for (Node i = 1; i <= n; ++i) {
    Clause some_level;
    for (int level = 0; level < n; ++level) some_level.push_back(depth(i, level));
    em.add("has-depth", std::move(some_level));
  }
  for (std::size_t idx = 0; idx < lg.graph.arc_count(); ++idx) {
    const Arc& a = lg.graph.arcs()[idx];
    if (a.is_loop())
      em.add("self-loop", {-lg.arc_lit[idx]});
    else
      em.add("not-leaf", {-lg.arc_lit[idx], -depth(a.from, 0)});
  }
  for (Node i = 1; i <= n; ++i)
    for (int level = 0; level + 1 < n; ++level)
      em.add("depth-monotone", {-depth(i, level), depth(i, level + 1)});
  for (std::size_t idx = 0; idx < lg.graph.arc_count(); ++idx) {
    const Arc& a = lg.graph.arcs()[idx];
    if (a.is_loop()) continue;
    for (int level = 1; level < n; ++level)
      em.add("depth-decreases",
             {-depth(a.from, level), -lg.arc_lit[idx], depth(a.to, level - 1)});
  }
}

/// Vertex elimination: e'_ij over E*, closed under the triangles of the
/// ordering and antisymmetric on every bidirectional pair.
inline EliminationResult acyclic_ve(const LabeledGraph& lg, const EliminationOrdering& order,
                                    Emitter& em) {
  EliminationResult elim = eliminate(lg.graph, order);
  const Var first = em.declare("eprime", arc_keys(elim.estar));
  ArcVars ep(elim.estar, first);

  for (std::size_t idx = 0; idx < lg.graph.arc_count(); ++idx) {
    const Arc& a = lg.graph.arcs()[idx];
    em.add("arc-implies-eprime", {-lg.arc_lit[idx], ep(a.from, a.to)});
  }
  for (const Arc& a : elim.estar) {
    if (a.from < a.to && elim.in_estar(a.to, a.from))
      em.add("antisymmetry", {-ep(a.from, a.to), -ep(a.to, a.from)});
  }
  for (const Triangle& tr : elim.delta)
    em.add("triangle", {-ep(tr.a, tr.middle), -ep(tr.middle, tr.b), ep(tr.a, tr.b)});
  for (const Arc& a : lg.graph.arcs())
    if (a.is_loop()) em.add("self-loop", {-ep(a.from, a.to)});
  record_elimination(em.out().stats, elim);
  return elim;
}

inline void acyclic_with(AcyclicMethod method, const LabeledGraph& lg,
                         const OrderingSpec& ordering, Emitter& em) {
  switch (method) {
    case AcyclicMethod::tc: acyclic_tc(lg, em); return;
    case AcyclicMethod::tr: acyclic_tr(lg, em); return;
    case AcyclicMethod::ve: acyclic_ve(lg, resolve_ordering(lg.graph, ordering, {}), em); return;
  }
}

// ---------------------------------------------------------------------------
// Reachability building blocks. Graphs passed here carry no self-loops.

/// r_si over-approximates the nodes reachable from s. Returns the first r_si id.
inline Var forward_reach(const LabeledGraph& lg, Node s, Emitter& em) {
  const Var first = em.declare("reach", node_keys(lg.graph.node_count()));
  auto r = [&](Node i) { return first + i - 1; };
  em.add("source-reached", {r(s)});
  for (std::size_t idx = 0; idx < lg.graph.arc_count(); ++idx) {
    const Arc& a = lg.graph.arcs()[idx];
    em.add("reach-propagates", {-lg.arc_lit[idx], -r(a.from), r(a.to)});
  }
  return first;
}

/// Layered backward reachability: r^n_it means some enabled path of length at
/// most n leads from i to t. Returns a lookup (i, level) -> var.
inline auto layered_reach(const LabeledGraph& lg, Node t, Emitter& em) {
  const int n = lg.graph.node_count();
  std::vector<AuxKey> keys;
  for (Node i = 1; i <= n; ++i)
    for (int level = 0; level < n; ++level) keys.push_back({i, level});
  const Var first = em.declare("reach_n", keys);
  auto rn = [first, n](Node i, int level) { return first + (i - 1) * n + level; };

  // Step variables only for nodes that branch; single successors are inlined.
  std::vector<AuxKey> step_keys;
  for (Node i = 1; i <= n; ++i) {
    auto outs = lg.graph.out_neighbors(i);
    if (outs.size() < 2) continue;
    for (int level = 1; level < n; ++level)
      for (Node j : outs) step_keys.push_back({i, j, level});
  }
  Var step = step_keys.empty() ? 0 : em.declare("step", step_keys);

  for (Node i = 1; i <= n; ++i) em.add("base-level", {i == t ? rn(i, 0) : -rn(i, 0)});

  for (Node i = 1; i <= n; ++i) {
    auto outs = lg.graph.out_neighbors(i);
    for (int level = 1; level < n; ++level) {
      const Lit head = -rn(i, level);
      const Lit stay = rn(i, level - 1);
      if (outs.empty()) {
        em.add("level-step", {head, stay});
      } else if (outs.size() == 1) {
        Node j = outs[0];
        em.add("level-step", {head, stay, lg.lit(i, j)});
        em.add("level-step", {head, stay, rn(j, level - 1)});
      } else {
        Clause wide{head, stay};
        for (Node j : outs) {
          Var sv = step++;
          em.add("step-arc", {-sv, lg.lit(i, j)});
          em.add("step-reach", {-sv, rn(j, level - 1)});
          wide.push_back(sv);
        }
        em.add("level-step", std::move(wide));
      }
    }
  }
  return rn;
}

/// Shared part of reachability by acyclicity: a subgraph G' (e'_ij) of enabled
/// arcs in which every node marked r_it has an out-arc to another such node.
/// G' must then be made acyclic by the caller. Returns the first r_it id.
inline Var acyclic_witness(const LabeledGraph& lg, Node t, Emitter& em, LabeledGraph& witness) {
  const int n = lg.graph.node_count();
  const Var ep_first = em.declare("eprime", arc_keys(lg.graph.arcs()));
  const Var rt_first = em.declare("reach_to", node_keys(n));
  auto ep = [&](std::size_t idx) { return ep_first + static_cast<Var>(idx); };
  auto rt = [&](Node i) { return rt_first + i - 1; };

  for (std::size_t idx = 0; idx < lg.graph.arc_count(); ++idx)
    em.add("eprime-implies-arc", {-ep(idx), lg.arc_lit[idx]});
  for (std::size_t idx = 0; idx < lg.graph.arc_count(); ++idx)
    em.add("eprime-target-reaches", {-ep(idx), rt(lg.graph.arcs()[idx].to)});
  for (Node i = 1; i <= n; ++i) {
    if (i == t) continue;
    Clause c{-rt(i)};
    for (Node j : lg.graph.out_neighbors(i)) c.push_back(ep(*lg.graph.arc_index(i, j)));
    em.add("reaching-node-continues", std::move(c));
  }
  em.add("target-reaches", {rt(t)});

  witness.graph = lg.graph;
  witness.arc_lit.clear();
  for (std::size_t idx = 0; idx < lg.graph.arc_count(); ++idx) witness.arc_lit.push_back(ep(idx));
  return rt_first;
}

/// e'_ij over E* means an enabled i -> j path exists, justified either by the
/// arc itself or by a triangle through an earlier-eliminated middle vertex.
struct PathClosure {
  EliminationResult elim;
  ArcVars eprime;
};

inline PathClosure path_closure(const LabeledGraph& lg, const EliminationOrdering& order,
                                Emitter& em) {
  PathClosure pc{eliminate(lg.graph, order), {}};
  const auto& elim = pc.elim;
  const Var ep_first = em.declare("eprime", arc_keys(elim.estar));
  pc.eprime = ArcVars(elim.estar, ep_first);
  std::vector<AuxKey> tri_keys;
  for (const Triangle& tr : elim.delta) tri_keys.push_back({tr.a, tr.middle, tr.b});
  const Var tri_first = tri_keys.empty() ? 0 : em.declare("tri", tri_keys);

  std::map<Arc, std::vector<Var>> witnesses;
  for (std::size_t k = 0; k < elim.delta.size(); ++k)
    witnesses[{elim.delta[k].a, elim.delta[k].b}].push_back(tri_first + static_cast<Var>(k));

  for (const Arc& a : elim.estar) {
    Clause c{-pc.eprime(a.from, a.to)};
    if (auto idx = lg.graph.arc_index(a.from, a.to)) c.push_back(lg.arc_lit[*idx]);
    if (auto it = witnesses.find(a); it != witnesses.end())
      c.insert(c.end(), it->second.begin(), it->second.end());
    em.add("eprime-justified", std::move(c));
  }
  for (std::size_t k = 0; k < elim.delta.size(); ++k) {
    const Triangle& tr = elim.delta[k];
    const Var tv = tri_first + static_cast<Var>(k);
    em.add("triangle-first-leg", {-tv, pc.eprime(tr.a, tr.middle)});
    em.add("triangle-second-leg", {-tv, pc.eprime(tr.middle, tr.b)});
  }
  record_elimination(em.out().stats, elim);
  return pc;
}

inline void check_endpoints(const DirectedGraph& g, Node s, Node t) {
  if (!g.contains(s) || !g.contains(t))
    throw encode_error("endpoint (" + std::to_string(s) + "," + std::to_string(t) +
                       ") is not a node of the graph");
}

inline void require_distinct(Node s, Node t) {
  if (s == t)
    throw encode_error("reachability encoders need distinct endpoints, got s = t = " +
                       std::to_string(s));
}

// ---------------------------------------------------------------------------
// Constraint encoders over a labeled graph.

inline void noreach(const LabeledGraph& lg, Node s, Node t, Emitter& em) {
  check_endpoints(lg.graph, s, t);
  Var r = forward_reach(lg, s, em);
  em.add("target-unreached", {-(r + t - 1)});
}

inline void reach_explicit(const LabeledGraph& lg, Node s, Node t, Emitter& em) {
  check_endpoints(lg.graph, s, t);
  require_distinct(s, t);
  auto rn = layered_reach(lg, t, em);
  em.add("source-reaches", {rn(s, lg.graph.node_count() - 1)});
}

inline void ereach_explicit(const LabeledGraph& lg, Node s, Node t, Emitter& em) {
  check_endpoints(lg.graph, s, t);
  Var r = forward_reach(lg, s, em);
  auto rn = layered_reach(lg, t, em);
  const int n = lg.graph.node_count();
  for (Node i = 1; i <= n; ++i) em.add("reached-reaches-target", {-(r + i - 1), rn(i, n - 1)});
}

inline void nested_acyclic(const LabeledGraph& witness, AcyclicMethod inner,
                           const OrderingSpec& ordering, Emitter& em) {
  auto& stats = em.out().stats;
  const int vars_before = em.alloc().used();
  const std::size_t clauses_before = em.out().added_clauses.size();
  Emitter sub = em.nested("acyclic.");
  acyclic_with(inner, witness, ordering, sub);
  stats.nested_acyclic_vars += em.alloc().used() - vars_before;
  stats.nested_acyclic_clauses += em.out().added_clauses.size() - clauses_before;
}

inline void reach_via_acyclicity(const LabeledGraph& lg, Node s, Node t, AcyclicMethod inner,
                                 const OrderingSpec& ordering, Emitter& em) {
  check_endpoints(lg.graph, s, t);
  require_distinct(s, t);
  LabeledGraph witness;
  Var rt = acyclic_witness(lg, t, em, witness);
  em.add("source-reaches", {rt + s - 1});
  nested_acyclic(witness, inner, ordering, em);
}

inline void ereach_via_acyclicity(const LabeledGraph& lg, Node s, Node t, AcyclicMethod inner,
                                  const OrderingSpec& ordering, Emitter& em) {
  check_endpoints(lg.graph, s, t);
  Var r = forward_reach(lg, s, em);
  LabeledGraph witness;
  Var rt = acyclic_witness(lg, t, em, witness);
  for (Node i = 1; i <= lg.graph.node_count(); ++i)
    em.add("reached-reaches-target", {-(r + i - 1), rt + i - 1});
  nested_acyclic(witness, inner, ordering, em);
}

inline void check_pinned(const EliminationOrdering& order, std::span<const Node> tail,
                         const char* what) {
  const auto& o = order.order();
  if (o.size() < tail.size() ||
      !std::is_permutation(o.end() - static_cast<long>(tail.size()), o.end(), tail.begin(),
                           tail.end()))
    throw encode_error(std::string("elimination ordering must place ") + what + " last");
}

inline void reach_ve(const LabeledGraph& lg, Node s, Node t, const EliminationOrdering& order,
                     Emitter& em) {
  check_endpoints(lg.graph, s, t);
  require_distinct(s, t);
  const Node tail[] = {s, t};
  check_pinned(order, tail, "s and t");
  PathClosure pc = path_closure(lg, order, em);
  if (auto st = pc.eprime.find(s, t))
    em.add("source-reaches", {*st});
  else
    em.add("source-reaches", {});  // no s-t path even with every arc enabled
}

inline void ereach_ve(const LabeledGraph& lg, Node s, Node t, const EliminationOrdering& order,
                      Emitter& em) {
  check_endpoints(lg.graph, s, t);
  if (order.size() == 0 || order.last() != t)
    throw encode_error("elimination ordering must place t last");
  Var r = forward_reach(lg, s, em);
  PathClosure pc = path_closure(lg, order, em);
  std::vector<std::vector<Var>> later(lg.graph.node_count() + 1);
  for (const Arc& a : pc.elim.estar)
    if (order.pos(a.from) < order.pos(a.to)) later[a.from].push_back(pc.eprime(a.from, a.to));
  for (Node i = 1; i <= lg.graph.node_count(); ++i) {
    if (i == t) continue;
    Clause c{-(r + i - 1)};
    c.insert(c.end(), later[i].begin(), later[i].end());
    em.add("reached-moves-later", std::move(c));
  }
}

template <typename Body>
EncodedFormula run_encoder(const GraphInstance& inst, Body&& body) {
  EncodedFormula out;
  out.base_var_count = inst.base.var_count;
  VarAllocator alloc(inst.base.var_count);
  Emitter em(alloc, out);
  body(em);
  out.new_var_count = alloc.used();
  out.stats.aux_vars = out.new_var_count - out.base_var_count;
  out.stats.clauses = out.added_clauses.size();
  return out;
}

inline LabeledGraph acyclic_view(const GraphInstance& inst, const Constraint& c) {
  if (c.kind != ConstraintKind::acyclic) throw encode_error("expected an acyclicity constraint");
  return constraint_graph(inst, c);
}

inline LabeledGraph reach_view(const GraphInstance& inst) {
  return filter_arcs(label(inst), [](const Arc& a) { return !a.is_loop(); });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Public encoders. Each returns the clauses to conjoin with inst.base.

inline EncodedFormula encode_acyclicity_tc(const GraphInstance& inst,
                                           const Constraint& c = Constraint::acyclic()) {
  auto lg = detail::acyclic_view(inst, c);
  return detail::run_encoder(inst, [&](detail::Emitter& em) { detail::acyclic_tc(lg, em); });
}

inline EncodedFormula encode_acyclicity_tr(const GraphInstance& inst,
                                           const Constraint& c = Constraint::acyclic()) {
  auto lg = detail::acyclic_view(inst, c);
  return detail::run_encoder(inst, [&](detail::Emitter& em) { detail::acyclic_tr(lg, em); });
}

inline EncodedFormula encode_acyclicity_ve(const GraphInstance& inst,
                                           const EliminationOrdering& order,
                                           const Constraint& c = Constraint::acyclic()) {
  auto lg = detail::acyclic_view(inst, c);
  return detail::run_encoder(inst,
                             [&](detail::Emitter& em) { detail::acyclic_ve(lg, order, em); });
}

inline EncodedFormula encode_noreach(const GraphInstance& inst, Node s, Node t) {
  auto lg = detail::reach_view(inst);
  return detail::run_encoder(inst, [&](detail::Emitter& em) { detail::noreach(lg, s, t, em); });
}

inline EncodedFormula encode_reach_explicit(const GraphInstance& inst, Node s, Node t) {
  auto lg = detail::reach_view(inst);
  return detail::run_encoder(inst,
                             [&](detail::Emitter& em) { detail::reach_explicit(lg, s, t, em); });
}

inline EncodedFormula encode_reach_via_acyclicity(const GraphInstance& inst, Node s, Node t,
                                                  AcyclicMethod inner,
                                                  const OrderingSpec& ordering = {}) {
  auto lg = detail::reach_view(inst);
  return detail::run_encoder(inst, [&](detail::Emitter& em) {
    detail::reach_via_acyclicity(lg, s, t, inner, ordering, em);
  });
}

inline EncodedFormula encode_reach_ve(const GraphInstance& inst, Node s, Node t,
                                      const EliminationOrdering& order) {
  auto lg = detail::reach_view(inst);
  return detail::run_encoder(inst,
                             [&](detail::Emitter& em) { detail::reach_ve(lg, s, t, order, em); });
}

inline EncodedFormula encode_ereach_explicit(const GraphInstance& inst, Node s, Node t) {
  auto lg = detail::reach_view(inst);
  return detail::run_encoder(inst,
                             [&](detail::Emitter& em) { detail::ereach_explicit(lg, s, t, em); });
}

inline EncodedFormula encode_ereach_via_acyclicity(const GraphInstance& inst, Node s, Node t,
                                                   AcyclicMethod inner,
                                                   const OrderingSpec& ordering = {}) {
  auto lg = detail::reach_view(inst);
  return detail::run_encoder(inst, [&](detail::Emitter& em) {
    detail::ereach_via_acyclicity(lg, s, t, inner, ordering, em);
  });
}

inline EncodedFormula encode_ereach_ve(const GraphInstance& inst, Node s, Node t,
                                       const EliminationOrdering& order) {
  auto lg = detail::reach_view(inst);
  return detail::run_encoder(inst,
                             [&](detail::Emitter& em) { detail::ereach_ve(lg, s, t, order, em); });
}

// ---------------------------------------------------------------------------
// Whole-instance encoding

struct EncodingPlan {
  /// One method per constraint, or a single method applied to all of them.
  std::vector<EncodingMethod> methods{EncodingMethod{}};
  OrderingSpec ordering;
};

inline bool applicable(const EncodingMethod& m, ConstraintKind k) {
  using K = EncodingMethod::Kind;
  switch (k) {
    case ConstraintKind::acyclic: return m.kind == K::ve || m.kind == K::tc || m.kind == K::tr;
    case ConstraintKind::reach:
    case ConstraintKind::ereach:
      return m.kind == K::ve || m.kind == K::explicit_paths || m.kind == K::via_acyclic;
    case ConstraintKind::noreach: return true;  // single encoding
  }
  return false;
}

inline void encode_constraint(const GraphInstance& inst, const Constraint& c,
                              const EncodingMethod& m, const OrderingSpec& ordering,
                              detail::Emitter& em) {
  using K = EncodingMethod::Kind;
  if (!applicable(m, c.kind))
    throw encode_error("method '" + to_string(m) + "' does not apply to constraint '" +
                       describe(c) + "'");
  LabeledGraph lg = constraint_graph(inst, c);
  auto ordering_for = [&] { return resolve_ordering(lg.graph, ordering, elimination_pins(c)); };
  switch (c.kind) {
    case ConstraintKind::acyclic:
      if (m.kind == K::tc) detail::acyclic_tc(lg, em);
      else if (m.kind == K::tr) detail::acyclic_tr(lg, em);
      else detail::acyclic_ve(lg, ordering_for(), em);
      return;
    case ConstraintKind::noreach: detail::noreach(lg, c.s, c.t, em); return;
    case ConstraintKind::reach:
      detail::check_endpoints(lg.graph, c.s, c.t);
      detail::require_distinct(c.s, c.t);
      if (m.kind == K::explicit_paths) detail::reach_explicit(lg, c.s, c.t, em);
      else if (m.kind == K::via_acyclic)
        detail::reach_via_acyclicity(lg, c.s, c.t, m.inner, ordering, em);
      else detail::reach_ve(lg, c.s, c.t, ordering_for(), em);
      return;
    case ConstraintKind::ereach:
      detail::check_endpoints(lg.graph, c.s, c.t);
      if (m.kind == K::explicit_paths) detail::ereach_explicit(lg, c.s, c.t, em);
      else if (m.kind == K::via_acyclic)
        detail::ereach_via_acyclicity(lg, c.s, c.t, m.inner, ordering, em);
      else detail::ereach_ve(lg, c.s, c.t, ordering_for(), em);
      return;
  }
}

/// Encodes every constraint in declaration order with one shared allocator.
/// With several constraints, aux families are namespaced "c<k>.".
inline EncodedFormula encode_instance(const GraphInstance& inst, const EncodingPlan& plan) {
  if (plan.methods.size() != 1 && plan.methods.size() != inst.constraints.size())
    throw encode_error("plan has " + std::to_string(plan.methods.size()) + " methods for " +
                       std::to_string(inst.constraints.size()) + " constraints");
  return detail::run_encoder(inst, [&](detail::Emitter& em) {
    for (std::size_t k = 0; k < inst.constraints.size(); ++k) {
      const auto& m = plan.methods.size() == 1 ? plan.methods[0] : plan.methods[k];
      if (inst.constraints.size() == 1) {
        encode_constraint(inst, inst.constraints[k], m, plan.ordering, em);
      } else {
        detail::Emitter sub = em.nested("c" + std::to_string(k) + ".");
        encode_constraint(inst, inst.constraints[k], m, plan.ordering, sub);
      }
    }
  });
}

/// Elimination data per constraint under the ordering its vertex
/// elimination encoding would use. Does not encode anything.
struct GraphProfile {
  int width = 0;
  std::size_t estar = 0;
  std::size_t delta = 0;
};

inline GraphProfile elimination_profile(const GraphInstance& inst, const OrderingSpec& ordering) {
  GraphProfile p;
  for (const Constraint& c : inst.constraints) {
    LabeledGraph lg = constraint_graph(inst, c);
    auto r = eliminate(lg.graph, resolve_ordering(lg.graph, ordering, elimination_pins(c)));
    p.width = std::max(p.width, r.width);
    p.estar += r.estar.size();
    p.delta += r.delta.size();
  }
  return p;
}

}  // namespace vegraph
