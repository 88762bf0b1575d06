// Copyright 2026 The fkham Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// 3-SAT as a 3-local Hamiltonian: each clause becomes the projector onto its
// unique falsifying assignment, so H|z> = (#clauses falsified by z)|z>.

#pragma once

#include "fkham/ops.hpp"

#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

namespace fkham::sat {

using Clause = std::vector<int>;  // signed 1-based variable indices

struct CnfFormula {
  std::size_t n_vars = 0;
  std::vector<Clause> clauses;
};

/// Variables of a clause in first-occurrence order with repeated literals
/// merged. Throws on tautologies, empty clauses and clauses wider than 3.
inline Clause normalized_clause(const Clause& clause, std::size_t n_vars) {
  Clause out;
  for (int lit : clause) {
    const auto var = static_cast<std::size_t>(std::abs(lit));
    if (lit == 0 || var > n_vars)
      throw ValidationError("literal " + std::to_string(lit) + " out of range 1.." + std::to_string(n_vars));
    bool seen = false;
    for (int prev : out) {
      if (prev == -lit) throw ValidationError("tautological clause contains x" + std::to_string(var) + " and its negation");
      if (prev == lit) seen = true;
    }
    if (!seen) out.push_back(lit);
  }
  if (out.empty()) throw ValidationError("empty clause");
  if (out.size() > 3) throw ValidationError("clause has more than 3 literals");
  return out;
}

inline void validate(const CnfFormula& f) {
  for (const Clause& c : f.clauses) normalized_clause(c, f.n_vars);
}

/// |u><u| on the clause's variables (variable v on qubit v-1), u being the
/// unique falsifying assignment: bit 1 for each negated literal.
inline LocalTerm clause_to_term(const Clause& clause, std::size_t n_vars) {
  const Clause lits = normalized_clause(clause, n_vars);
  LocalTerm term;
  std::size_t u = 0;
  for (int lit : lits) {
    term.qubits.push_back(static_cast<std::size_t>(std::abs(lit)) - 1);
    u = (u << 1) | static_cast<std::size_t>(lit < 0);
  }
  term.matrix = outer(pow2(lits.size()), u, u);
  return term;
}

/// One projector per clause (duplicates kept), thresholds a = 0, b = 1.
inline HamiltonianSpec encode(const CnfFormula& formula) {
  HamiltonianSpec spec;
  spec.n_qubits = formula.n_vars;
  spec.terms.reserve(formula.clauses.size());
  for (const Clause& c : formula.clauses) spec.terms.push_back(clause_to_term(c, formula.n_vars));
  spec.a = 0.0;
  spec.b = 1.0;
  return spec;
}

/// DIMACS CNF: optional "c" comment lines, one "p cnf V C" header, clauses as
/// whitespace-separated literals terminated by 0. A line starting with '%' ends
/// the clause section.
inline CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  bool header = false;
  std::size_t declared = 0;
  Clause current;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == 'c') continue;
    if (first[0] == '%') break;
    if (first == "p") {
      if (header) throw ParseError("line " + std::to_string(lineno) + ": duplicate problem line");
      std::string fmt;
      long long v = -1;
      long long c = -1;
      if (!(ls >> fmt >> v >> c) || fmt != "cnf" || v < 0 || c < 0)
        throw ParseError("line " + std::to_string(lineno) + ": expected 'p cnf <vars> <clauses>'");
      f.n_vars = static_cast<std::size_t>(v);
      declared = static_cast<std::size_t>(c);
      header = true;
      continue;
    }
    if (!header) throw ParseError("line " + std::to_string(lineno) + ": clause before problem line");
    std::istringstream toks(line);
    std::string tok;
    while (toks >> tok) {
      char* end = nullptr;
      const long lit = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0')
        throw ParseError("line " + std::to_string(lineno) + ": bad literal '" + tok + "'");
      if (lit == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::labs(lit)) > f.n_vars)
        throw ParseError("line " + std::to_string(lineno) + ": literal " + tok + " exceeds variable count");
      current.push_back(static_cast<int>(lit));
    }
  }
  if (!header) throw ParseError("missing 'p cnf' problem line");
  if (!current.empty()) throw ParseError("last clause is not terminated by 0");
  if (f.clauses.size() != declared)
    throw ParseError("header declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  try {
    validate(f);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return f;
}

inline CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

}  // namespace fkham::sat
