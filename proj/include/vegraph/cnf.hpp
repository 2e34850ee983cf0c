#pragma once

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace vegraph {

/// DIMACS conventions: variables are 1..n, literal -v is the negation of v.
using Var = int;
using Lit = int;
using Clause = std::vector<Lit>;

inline Var var_of(Lit l) { return std::abs(l); }

class format_error : public std::runtime_error {
 public:
  format_error(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct Cnf {
  int var_count = 0;
  std::vector<Clause> clauses;

  void add(Clause c) { clauses.push_back(std::move(c)); }

  /// Throws if a literal is 0 or names a variable above var_count.
  void validate() const {
    for (std::size_t i = 0; i < clauses.size(); ++i) {
      for (Lit l : clauses[i]) {
        if (l == 0 || var_of(l) > var_count)
          throw format_error("clause " + std::to_string(i + 1) + " has literal " +
                             std::to_string(l) + " outside 1.." + std::to_string(var_count));
      }
    }
  }

  friend bool operator==(const Cnf&, const Cnf&) = default;
};

/// Total assignment over 1..var_count.
class Model {
 public:
  Model() = default;
  explicit Model(int var_count) : values_(var_count + 1, 0) {}

  int var_count() const { return static_cast<int>(values_.size()) - 1; }

  bool value(Var v) const {
    if (v < 1 || v > var_count())
      throw std::out_of_range("variable " + std::to_string(v) + " outside model range 1.." +
                              std::to_string(var_count()));
    return values_[v] != 0;
  }
  bool satisfies(Lit l) const { return l > 0 ? value(l) : !value(-l); }
  void set(Var v, bool b) {
    if (v < 1 || v > var_count())
      throw std::out_of_range("variable " + std::to_string(v) + " outside model range");
    values_[v] = b ? 1 : 0;
  }

  bool satisfies(const Clause& c) const {
    for (Lit l : c)
      if (satisfies(l)) return true;
    return false;
  }

  /// Index of the first falsified clause, or -1.
  long first_falsified(const Cnf& cnf) const {
    for (std::size_t i = 0; i < cnf.clauses.size(); ++i)
      if (!satisfies(cnf.clauses[i])) return static_cast<long>(i);
    return -1;
  }

  /// Copy restricted or padded (with false) to var_count variables.
  Model resized(int var_count) const {
    Model m(var_count);
    for (int v = 1; v <= std::min(var_count, this->var_count()); ++v) m.values_[v] = values_[v];
    return m;
  }

  friend bool operator==(const Model&, const Model&) = default;

 private:
  std::vector<char> values_ = std::vector<char>(1, 0);
};

/// Hands out fresh variable ids in increasing order.
class VarAllocator {
 public:
  explicit VarAllocator(int used = 0) : used_(used) {}

  Var fresh() { return ++used_; }
  /// Allocates k consecutive ids and returns the first one.
  Var block(int k) {
    Var first = used_ + 1;
    used_ += k;
    return first;
  }
  int used() const { return used_; }

 private:
  int used_;
};

}  // namespace vegraph
