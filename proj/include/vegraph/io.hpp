#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <optional>
#include <set>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "vegraph/cnf.hpp"
#include "vegraph/instance.hpp"

// GCNF: DIMACS CNF extended with the underlying graph.
//
//   c <comment>
//   p gcnf <var_count> <clause_count> <node_count>
//   g a <u> <v> <var>
//   g c acyclic [<cut>] | g c reach <s> <t> | g c noreach <s> <t> | g c ereach <s> <t>
//   <lit> ... 0
//
// The optional <cut> of an acyclicity line names a node whose incoming arcs
// are exempt from the constraint.

namespace vegraph {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline long parse_int(std::string_view tok, int line) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw format_error("expected an integer, got '" + std::string(tok) + "'", line);
  return value;
}

/// Accumulates 0-terminated clauses that may span lines.
class ClauseReader {
 public:
  explicit ClauseReader(int var_count) : var_count_(var_count) {}

  void feed(const std::vector<std::string_view>& toks, int line, std::vector<Clause>& out) {
    for (auto tok : toks) {
      long lit = parse_int(tok, line);
      if (lit == 0) {
        out.push_back(std::move(pending_));
        pending_.clear();
        continue;
      }
      if (std::labs(lit) > var_count_)
        throw format_error("literal " + std::to_string(lit) + " exceeds variable count " +
                               std::to_string(var_count_),
                           line);
      pending_.push_back(static_cast<Lit>(lit));
    }
  }
  bool pending() const { return !pending_.empty(); }

 private:
  int var_count_;
  Clause pending_;
};

}  // namespace detail

inline GraphInstance parse_gcnf(std::istream& in) {
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  long clause_count = 0;
  int node_count = 0;
  std::vector<Arc> arcs;
  std::vector<std::pair<Arc, Var>> arc_vars;
  std::set<Arc> seen_arcs;
  std::vector<Constraint> constraints;
  Cnf base;
  std::optional<detail::ClauseReader> reader;

  while (std::getline(in, raw)) {
    ++line_no;
    auto toks = detail::split_ws(raw);
    if (toks.empty() || toks[0][0] == 'c') continue;
    if (toks[0] == "p") {
      if (have_header) throw format_error("second header line", line_no);
      if (toks.size() != 5 || toks[1] != "gcnf")
        throw format_error("malformed header, expected 'p gcnf <vars> <clauses> <nodes>'",
                           line_no);
      long vars = detail::parse_int(toks[2], line_no);
      clause_count = detail::parse_int(toks[3], line_no);
      long nodes = detail::parse_int(toks[4], line_no);
      if (vars < 0 || clause_count < 0 || nodes < 1)
        throw format_error("malformed header, counts out of range", line_no);
      base.var_count = static_cast<int>(vars);
      node_count = static_cast<int>(nodes);
      reader.emplace(base.var_count);
      have_header = true;
      continue;
    }
    if (!have_header) throw format_error("content before 'p gcnf' header", line_no);

    if (toks[0] == "g") {
      if (reader->pending()) throw format_error("graph line inside an open clause", line_no);
      if (toks.size() < 2) throw format_error("truncated graph line", line_no);
      auto endpoint = [&](std::string_view tok) {
        long v = detail::parse_int(tok, line_no);
        if (v < 1 || v > node_count)
          throw format_error("node " + std::to_string(v) + " outside 1.." +
                                 std::to_string(node_count),
                             line_no);
        return static_cast<Node>(v);
      };
      if (toks[1] == "a") {
        if (toks.size() != 5) throw format_error("arc line needs 'g a <u> <v> <var>'", line_no);
        Arc a{endpoint(toks[2]), endpoint(toks[3])};
        long var = detail::parse_int(toks[4], line_no);
        if (var < 1 || var > base.var_count)
          throw format_error("arc variable " + std::to_string(var) + " outside 1.." +
                                 std::to_string(base.var_count),
                             line_no);
        if (!seen_arcs.insert(a).second)
          throw format_error("duplicate arc (" + std::to_string(a.from) + "," +
                                   std::to_string(a.to) + ")",
                             line_no);
        arc_vars.push_back({a, static_cast<Var>(var)});
      } else if (toks[1] == "c") {
        if (toks.size() < 3) throw format_error("constraint line needs a keyword", line_no);
        auto kw = toks[2];
        Constraint c;
        if (kw == "acyclic") {
          if (toks.size() == 3) c = Constraint::acyclic();
          else if (toks.size() == 4) c = Constraint::acyclic(endpoint(toks[3]));
          else throw format_error("'g c acyclic' takes at most one node", line_no);
        } else if (kw == "reach" || kw == "noreach" || kw == "ereach") {
          if (toks.size() != 5)
            throw format_error("'g c " + std::string(kw) + "' needs <s> <t>", line_no);
          Node s = endpoint(toks[3]);
          Node t = endpoint(toks[4]);
          c = kw == "reach"     ? Constraint::reach(s, t)
              : kw == "noreach" ? Constraint::noreach(s, t)
                                : Constraint::ereach(s, t);
        } else {
          throw format_error("unknown constraint keyword '" + std::string(kw) + "'", line_no);
        }
        constraints.push_back(c);
      } else {
        throw format_error("unknown graph line type '" + std::string(toks[1]) + "'", line_no);
      }
      continue;
    }

    reader->feed(toks, line_no, base.clauses);
    if (static_cast<long>(base.clauses.size()) > clause_count)
      throw format_error("more clauses than the header's " + std::to_string(clause_count),
                         line_no);
  }
  if (!have_header) throw format_error("missing 'p gcnf' header");
  if (reader->pending()) throw format_error("last clause is not 0-terminated", line_no);
  if (static_cast<long>(base.clauses.size()) != clause_count)
    throw format_error("header declares " + std::to_string(clause_count) + " clauses, found " +
                       std::to_string(base.clauses.size()));

  std::sort(arc_vars.begin(), arc_vars.end());
  GraphInstance inst;
  inst.base = std::move(base);
  for (const auto& [a, v] : arc_vars) {
    arcs.push_back(a);
    inst.arc_var.push_back(v);
  }
  inst.graph = DirectedGraph(node_count, std::move(arcs));
  inst.constraints = std::move(constraints);
  return inst;
}

inline GraphInstance parse_gcnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_gcnf(in);
}

inline void write_clauses(std::ostream& out, const std::vector<Clause>& clauses) {
  for (const Clause& c : clauses) {
    for (Lit l : c) out << l << ' ';
    out << "0\n";
  }
}

inline void write_gcnf(std::ostream& out, const GraphInstance& inst) {
  out << "p gcnf " << inst.base.var_count << ' ' << inst.base.clauses.size() << ' '
      << inst.graph.node_count() << '\n';
  for (std::size_t i = 0; i < inst.graph.arc_count(); ++i) {
    const Arc& a = inst.graph.arcs()[i];
    out << "g a " << a.from << ' ' << a.to << ' ' << inst.arc_var[i] << '\n';
  }
  for (const Constraint& c : inst.constraints) out << "g c " << describe(c) << '\n';
  write_clauses(out, inst.base.clauses);
}

inline std::string write_gcnf(const GraphInstance& inst) {
  std::ostringstream out;
  write_gcnf(out, inst);
  return out.str();
}

inline void write_dimacs(std::ostream& out, const Cnf& cnf) {
  out << "p cnf " << cnf.var_count << ' ' << cnf.clauses.size() << '\n';
  write_clauses(out, cnf.clauses);
}

inline std::string write_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  write_dimacs(out, cnf);
  return out.str();
}

inline Cnf parse_dimacs(std::istream& in) {
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  long clause_count = 0;
  Cnf cnf;
  std::optional<detail::ClauseReader> reader;
  while (std::getline(in, raw)) {
    ++line_no;
    auto toks = detail::split_ws(raw);
    if (toks.empty() || toks[0][0] == 'c' || toks[0] == "%") continue;
    if (toks[0] == "p") {
      if (have_header || toks.size() != 4 || toks[1] != "cnf")
        throw format_error("malformed header, expected 'p cnf <vars> <clauses>'", line_no);
      long vars = detail::parse_int(toks[2], line_no);
      clause_count = detail::parse_int(toks[3], line_no);
      if (vars < 0 || clause_count < 0) throw format_error("negative header count", line_no);
      cnf.var_count = static_cast<int>(vars);
      reader.emplace(cnf.var_count);
      have_header = true;
      continue;
    }
    if (!have_header) throw format_error("content before 'p cnf' header", line_no);
    reader->feed(toks, line_no, cnf.clauses);
  }
  if (!have_header) throw format_error("missing 'p cnf' header");
  if (reader->pending()) throw format_error("last clause is not 0-terminated", line_no);
  if (static_cast<long>(cnf.clauses.size()) != clause_count)
    throw format_error("header declares " + std::to_string(clause_count) + " clauses, found " +
                       std::to_string(cnf.clauses.size()));
  return cnf;
}

inline Cnf parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

/// Reads a model from solver output ('s'/'v' lines) or a bare literal list.
/// Variables that are not mentioned stay false. With allow_wider, literals
/// above var_count are skipped instead of rejected.
inline Model parse_model(std::istream& in, int var_count, bool allow_wider = false) {
  Model m(var_count);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto toks = detail::split_ws(raw);
    if (toks.empty() || toks[0] == "c" || toks[0] == "s") continue;
    std::size_t first = toks[0] == "v" ? 1 : 0;
    for (std::size_t i = first; i < toks.size(); ++i) {
      long lit = detail::parse_int(toks[i], line_no);
      if (lit == 0) continue;
      if (std::labs(lit) > var_count) {
        if (allow_wider) continue;
        throw format_error("model literal " + std::to_string(lit) + " outside 1.." +
                               std::to_string(var_count),
                           line_no);
      }
      m.set(static_cast<Var>(std::labs(lit)), lit > 0);
    }
  }
  return m;
}

inline Model parse_model(std::string_view text, int var_count, bool allow_wider = false) {
  std::istringstream in{std::string(text)};
  return parse_model(in, var_count, allow_wider);
}

/// One node id per line, first-eliminated first. Blank lines and 'c' comments are skipped.
inline std::vector<Node> parse_ordering(std::istream& in) {
  std::vector<Node> order;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto toks = detail::split_ws(raw);
    if (toks.empty() || toks[0] == "c") continue;
    for (auto tok : toks) order.push_back(static_cast<Node>(detail::parse_int(tok, line_no)));
  }
  return order;
}

}  // namespace vegraph
