#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "vegraph/cnf.hpp"

namespace vegraph {

/// Index of an auxiliary variable inside its family, e.g. (i,j) for e'_ij.
using AuxKey = std::vector<int>;
using AuxFamily = std::map<AuxKey, Var>;
using AuxMap = std::map<std::string, AuxFamily>;

struct EncodeStats {
  int aux_vars = 0;
  std::size_t clauses = 0;
  /// Filled when the encoding is built on a vertex elimination graph.
  bool eliminated = false;
  int width = 0;
  std::size_t estar = 0;
  std::size_t delta = 0;
  /// Part of the totals spent on the nested acyclicity encoding of the
  /// reachability-by-acyclicity encoders.
  int nested_acyclic_vars = 0;
  std::size_t nested_acyclic_clauses = 0;
  /// Clause counts per rule, keyed by rule name.
  std::map<std::string, std::size_t> rules;
};

struct EncodedFormula {
  std::vector<Clause> added_clauses;
  int base_var_count = 0;
  int new_var_count = 0;
  AuxMap aux;
  EncodeStats stats;

  /// base conjoined with the added clauses, over new_var_count variables.
  Cnf conjoin(const Cnf& base) const {
    Cnf out;
    out.var_count = new_var_count;
    out.clauses.reserve(base.clauses.size() + added_clauses.size());
    out.clauses = base.clauses;
    out.clauses.insert(out.clauses.end(), added_clauses.begin(), added_clauses.end());
    return out;
  }
};

inline std::string aux_key_string(const AuxKey& key) {
  std::string s;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(key[i]);
  }
  return s;
}

/// Sidecar document: {family: {"i,j": var, ...}, ...}.
inline nlohmann::json aux_to_json(const AuxMap& aux) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [family, entries] : aux) {
    nlohmann::json fam = nlohmann::json::object();
    for (const auto& [key, var] : entries) fam[aux_key_string(key)] = var;
    doc[family] = std::move(fam);
  }
  return doc;
}

inline AuxMap aux_from_json(const nlohmann::json& doc) {
  AuxMap aux;
  for (const auto& [family, entries] : doc.items()) {
    auto& fam = aux[family];
    for (const auto& [key, var] : entries.items()) {
      AuxKey k;
      std::size_t start = 0;
      while (start <= key.size()) {
        std::size_t comma = key.find(',', start);
        if (comma == std::string::npos) comma = key.size();
        k.push_back(std::stoi(key.substr(start, comma - start)));
        start = comma + 1;
      }
      fam[k] = var.get<Var>();
    }
  }
  return aux;
}

}  // namespace vegraph
