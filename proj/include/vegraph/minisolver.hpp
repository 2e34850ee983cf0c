#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "vegraph/cnf.hpp"

// A small CDCL solver: two watched literals, first-UIP learning with clause
// minimisation, VSIDS branching, phase saving, Luby restarts and periodic
// deletion of inactive learnt clauses.

namespace vegraph {

enum class SolveStatus { sat, unsat, aborted };

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::sat: return "SAT";
    case SolveStatus::unsat: return "UNSAT";
    case SolveStatus::aborted: return "UNKNOWN";
  }
  return "?";
}

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::unsat;
  Model model;  ///< meaningful when status == sat
  SolverStats stats;
};

struct SolveOptions {
  std::uint64_t seed = 0;
  /// Stop with SolveStatus::aborted after this many conflicts.
  std::optional<std::uint64_t> conflict_budget;
};

namespace detail {

class Cdcl {
 public:
  explicit Cdcl(const Cnf& cnf, const SolveOptions& opts)
      : nvars_(cnf.var_count), opts_(opts), rng_(opts.seed) {
    const std::size_t n = static_cast<std::size_t>(nvars_) + 1;
    assigns_.assign(n, undef);
    level_.assign(n, 0);
    reason_.assign(n, no_reason);
    activity_.assign(n, 0.0);
    polarity_.assign(n, 0);
    seen_.assign(n, 0);
    watches_.assign(2 * n, {});
    heap_pos_.assign(n, -1);
    if (opts.seed != 0) {
      std::uniform_real_distribution<double> jitter(0.0, 1e-5);
      for (Var v = 1; v <= nvars_; ++v) activity_[v] = jitter(rng_);
    }
    for (Var v = 1; v <= nvars_; ++v) heap_insert(v);
    for (const Clause& c : cnf.clauses) {
      if (!add_input(c)) {
        trivially_unsat_ = true;
        break;
      }
    }
  }

  SolveResult solve() {
    SolveResult result;
    if (trivially_unsat_ || propagate() != no_reason) {
      result.status = SolveStatus::unsat;
      result.stats = stats_;
      return result;
    }
    std::uint64_t luby_index = 0;
    max_learnts_ = std::max<std::size_t>(clauses_.size() / 3, 2000);
    for (;;) {
      const std::uint64_t limit = 100 * luby(++luby_index);
      Outcome s = search(limit);
      if (s == Outcome::sat) {
        result.status = SolveStatus::sat;
        result.model = Model(nvars_);
        for (Var v = 1; v <= nvars_; ++v) result.model.set(v, assigns_[v] == 1);
        break;
      }
      if (s != Outcome::restart) {
        result.status = s == Outcome::unsat ? SolveStatus::unsat : SolveStatus::aborted;
        break;
      }
      ++stats_.restarts;
      backtrack(0);
    }
    result.stats = stats_;
    return result;
  }

 private:
  using ILit = std::uint32_t;  // 2*var + (negated ? 1 : 0)
  using CRef = std::uint32_t;
  static constexpr CRef no_reason = ~CRef{0};
  static constexpr signed char undef = -1;
  enum class Outcome { sat, unsat, aborted, restart };

  struct StoredClause {
    std::vector<ILit> lits;
    bool learnt = false;
    bool deleted = false;
    double activity = 0.0;
  };
  struct Watcher {
    CRef cref;
    ILit blocker;
  };

  static ILit to_ilit(Lit l) { return static_cast<ILit>(2 * var_of(l) + (l < 0 ? 1 : 0)); }
  static Var ivar(ILit l) { return static_cast<Var>(l >> 1); }
  static ILit neg(ILit l) { return l ^ 1U; }

  signed char value(ILit l) const {
    signed char v = assigns_[ivar(l)];
    if (v == undef) return undef;
    return static_cast<signed char>((l & 1U) ? 1 - v : v);
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  bool add_input(const Clause& input) {
    std::vector<ILit> lits;
    for (Lit l : input) lits.push_back(to_ilit(l));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i)
      if (lits[i] == neg(lits[i - 1])) return true;  // tautology
    // drop literals already false at level 0, skip clauses already true
    std::vector<ILit> kept;
    for (ILit l : lits) {
      signed char v = value(l);
      if (v == 1) return true;
      if (v == undef) kept.push_back(l);
    }
    if (kept.empty()) return false;
    if (kept.size() == 1) {
      enqueue(kept[0], no_reason);
      return propagate() == no_reason;
    }
    attach(store(std::move(kept), false));
    return true;
  }

  CRef store(std::vector<ILit> lits, bool learnt) {
    CRef cr = static_cast<CRef>(clauses_.size());
    clauses_.push_back({std::move(lits), learnt, false, 0.0});
    if (learnt) learnts_.push_back(cr);
    return cr;
  }

  void attach(CRef cr) {
    const auto& c = clauses_[cr].lits;
    watches_[neg(c[0])].push_back({cr, c[1]});
    watches_[neg(c[1])].push_back({cr, c[0]});
  }

  void enqueue(ILit l, CRef from) {
    Var v = ivar(l);
    assigns_[v] = (l & 1U) ? 0 : 1;
    level_[v] = decision_level();
    reason_[v] = from;
    trail_.push_back(l);
  }

  /// Returns the conflicting clause or no_reason.
  CRef propagate() {
    CRef conflict = no_reason;
    while (qhead_ < trail_.size()) {
      ILit p = trail_[qhead_++];  // p became true; visit clauses watching ~p
      ++stats_.propagations;
      auto& ws = watches_[p];
      std::size_t i = 0, j = 0;
      const ILit false_lit = neg(p);
      while (i < ws.size()) {
        Watcher w = ws[i];
        if (value(w.blocker) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        auto& c = clauses_[w.cref];
        if (c.deleted) {
          ++i;
          continue;
        }
        auto& lits = c.lits;
        if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
        ++i;
        ILit first = lits[0];
        if (first != w.blocker && value(first) == 1) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < lits.size(); ++k) {
          if (value(lits[k]) != 0) {
            std::swap(lits[1], lits[k]);
            watches_[neg(lits[1])].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, first};
        if (value(first) == 0) {
          conflict = w.cref;
          qhead_ = trail_.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (conflict != no_reason) break;
    }
    return conflict;
  }

  void analyze(CRef conflict, std::vector<ILit>& learnt, int& backjump) {
    learnt.assign(1, 0);
    int pending = 0;
    ILit p = 0;
    bool have_p = false;
    std::size_t index = trail_.size();
    CRef cr = conflict;
    do {
      auto& c = clauses_[cr];
      if (c.learnt) bump_clause(c);
      for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
        ILit q = c.lits[k];
        Var v = ivar(q);
        if (!seen_[v] && level_[v] > 0) {
          bump_var(v);
          seen_[v] = 1;
          if (level_[v] >= decision_level()) ++pending;
          else learnt.push_back(q);
        }
      }
      while (!seen_[ivar(trail_[--index])]) {}
      p = trail_[index];
      have_p = true;
      cr = reason_[ivar(p)];
      seen_[ivar(p)] = 0;
      --pending;
    } while (pending > 0);
    learnt[0] = neg(p);

    // drop literals implied by the rest of the clause
    to_clear_.assign(learnt.begin(), learnt.end());
    std::size_t keep = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      CRef r = reason_[ivar(learnt[k])];
      if (r == no_reason || !redundant(learnt[k])) learnt[keep++] = learnt[k];
    }
    learnt.resize(keep);
    for (ILit l : to_clear_) seen_[ivar(l)] = 0;

    backjump = 0;
    if (learnt.size() > 1) {
      std::size_t best = 1;
      for (std::size_t k = 2; k < learnt.size(); ++k)
        if (level_[ivar(learnt[k])] > level_[ivar(learnt[best])]) best = k;
      std::swap(learnt[1], learnt[best]);
      backjump = level_[ivar(learnt[1])];
    }
  }

  /// True if l is implied by literals already marked in seen_.
  bool redundant(ILit l) {
    std::vector<ILit> stack{l};
    const std::size_t clear_mark = to_clear_.size();
    while (!stack.empty()) {
      ILit x = stack.back();
      stack.pop_back();
      CRef r = reason_[ivar(x)];
      const auto& lits = clauses_[r].lits;
      for (std::size_t k = 1; k < lits.size(); ++k) {
        Var v = ivar(lits[k]);
        if (seen_[v] || level_[v] == 0) continue;
        if (reason_[v] == no_reason) {
          for (std::size_t z = clear_mark; z < to_clear_.size(); ++z) seen_[ivar(to_clear_[z])] = 0;
          to_clear_.resize(clear_mark);
          return false;
        }
        seen_[v] = 1;
        stack.push_back(lits[k]);
        to_clear_.push_back(lits[k]);
      }
    }
    return true;
  }

  void backtrack(int target) {
    if (decision_level() <= target) return;
    for (std::size_t k = trail_.size(); k-- > trail_lim_[target];) {
      Var v = ivar(trail_[k]);
      polarity_[v] = assigns_[v] == 1 ? 1 : 0;
      assigns_[v] = undef;
      reason_[v] = no_reason;
      if (heap_pos_[v] < 0) heap_insert(v);
    }
    trail_.resize(trail_lim_[target]);
    trail_lim_.resize(target);
    qhead_ = trail_.size();
  }

  Outcome search(std::uint64_t conflict_limit) {
    std::uint64_t conflicts_here = 0;
    std::vector<ILit> learnt;
    for (;;) {
      CRef conflict = propagate();
      if (conflict != no_reason) {
        ++stats_.conflicts;
        ++conflicts_here;
        if (decision_level() == 0) return Outcome::unsat;
        int backjump = 0;
        analyze(conflict, learnt, backjump);
        backtrack(backjump);
        if (learnt.size() == 1) {
          enqueue(learnt[0], no_reason);
        } else {
          CRef cr = store(learnt, true);
          attach(cr);
          bump_clause(clauses_[cr]);
          enqueue(learnt[0], cr);
        }
        var_inc_ /= 0.95;
        clause_inc_ /= 0.999;
        if (opts_.conflict_budget && stats_.conflicts >= *opts_.conflict_budget)
          return Outcome::aborted;
        continue;
      }
      if (conflicts_here >= conflict_limit) return Outcome::restart;
      if (learnts_.size() >= max_learnts_ + trail_.size()) reduce_db();

      Var next = 0;
      while (!heap_.empty()) {
        Var v = heap_pop();
        if (assigns_[v] == undef) {
          next = v;
          break;
        }
      }
      if (next == 0) return Outcome::sat;
      ++stats_.decisions;
      trail_lim_.push_back(trail_.size());
      enqueue(static_cast<ILit>(2 * next + (polarity_[next] ? 0 : 1)), no_reason);
    }
  }

  bool locked(CRef cr) const {
    const auto& c = clauses_[cr];
    Var v = ivar(c.lits[0]);
    return reason_[v] == cr && value(c.lits[0]) == 1;
  }

  void reduce_db() {
    std::sort(learnts_.begin(), learnts_.end(), [&](CRef a, CRef b) {
      const auto& ca = clauses_[a];
      const auto& cb = clauses_[b];
      if ((ca.lits.size() > 2) != (cb.lits.size() > 2)) return ca.lits.size() > 2;
      return ca.activity < cb.activity;
    });
    std::vector<CRef> kept;
    const std::size_t half = learnts_.size() / 2;
    for (std::size_t k = 0; k < learnts_.size(); ++k) {
      CRef cr = learnts_[k];
      auto& c = clauses_[cr];
      if (k < half && c.lits.size() > 2 && !locked(cr)) {
        c.deleted = true;
        c.lits.shrink_to_fit();
      } else {
        kept.push_back(cr);
      }
    }
    learnts_ = std::move(kept);
    for (auto& ws : watches_)
      ws.erase(std::remove_if(ws.begin(), ws.end(),
                              [&](const Watcher& w) { return clauses_[w.cref].deleted; }),
               ws.end());
    max_learnts_ += max_learnts_ / 10;
  }

  void bump_var(Var v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (Var u = 1; u <= nvars_; ++u) activity_[u] *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
  }

  void bump_clause(StoredClause& c) {
    c.activity += clause_inc_;
    if (c.activity > 1e20) {
      for (CRef cr : learnts_) clauses_[cr].activity *= 1e-20;
      clause_inc_ *= 1e-20;
    }
  }

  static std::uint64_t luby(std::uint64_t i) {
    // i-th element (1-based) of 1,1,2,1,1,2,4,...
    std::uint64_t k = 1;
    while ((std::uint64_t{1} << k) - 1 < i) ++k;
    while (i != (std::uint64_t{1} << k) - 1) {
      i -= (std::uint64_t{1} << (k - 1)) - 1;
      k = 1;
      while ((std::uint64_t{1} << k) - 1 < i) ++k;
    }
    return std::uint64_t{1} << (k - 1);
  }

  // max-heap on activity, ties by lower variable id
  bool heap_less(Var a, Var b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void heap_insert(Var v) {
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_pos_[v]);
  }
  void heap_up(int i) {
    Var v = heap_[i];
    while (i > 0) {
      int parent = (i - 1) / 2;
      if (!heap_less(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
  }
  Var heap_pop() {
    Var top = heap_[0];
    Var last = heap_.back();
    heap_.pop_back();
    heap_pos_[top] = -1;
    if (!heap_.empty()) {
      int i = 0;
      const int n = static_cast<int>(heap_.size());
      for (;;) {
        int child = 2 * i + 1;
        if (child >= n) break;
        if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
        if (!heap_less(heap_[child], last)) break;
        heap_[i] = heap_[child];
        heap_pos_[heap_[i]] = i;
        i = child;
      }
      heap_[i] = last;
      heap_pos_[last] = i;
    }
    return top;
  }

  int nvars_;
  SolveOptions opts_;
  std::mt19937_64 rng_;
  bool trivially_unsat_ = false;

  std::vector<StoredClause> clauses_;
  std::vector<CRef> learnts_;
  std::size_t max_learnts_ = 0;
  std::vector<std::vector<Watcher>> watches_;

  std::vector<signed char> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<char> polarity_;
  std::vector<char> seen_;
  std::vector<ILit> to_clear_;
  std::vector<ILit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<int> heap_pos_;

  SolverStats stats_;
};

}  // namespace detail

/// Complete CDCL decision procedure. Deterministic for a fixed seed.
inline SolveResult solve(const Cnf& cnf, const SolveOptions& opts = {}) {
  cnf.validate();
  return detail::Cdcl(cnf, opts).solve();
}

}  // namespace vegraph
