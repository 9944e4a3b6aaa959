#pragma once

// Test-only reference implementations. These evaluate clauses and functions
// point by point and share no code path with the library's enumerators.

#include <cstdint>
#include <random>
#include <vector>

#include "cofsat/boolfn.hpp"
#include "cofsat/cnf.hpp"

namespace oracle {

using cofsat::boolfn::TruthTable;
using cofsat::cnf::Clause;
using cofsat::cnf::CnfFormula;
using cofsat::cnf::SolutionSet;
using cofsat::cnf::Var;

/// Brute-force AllSAT over f.universe() by direct clause evaluation.
inline SolutionSet brute_force_solutions(const CnfFormula& f) {
  const auto& u = f.universe();
  std::vector<SolutionSet::Row> rows;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << u.size()); ++a) {
    auto value = [&](Var v) {
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (u[j] == v) return ((a >> j) & 1u) != 0;
      }
      return false;
    };
    bool ok = true;
    for (const auto& c : f.clauses()) {
      bool sat = false;
      for (const auto& l : c) sat = sat || value(l.var()) == l.positive();
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    SolutionSet::Row row(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) row[j] = ((a >> j) & 1u) != 0;
    rows.push_back(row);
  }
  return SolutionSet(u, rows);
}

inline TruthTable random_table(unsigned n, std::mt19937_64& rng) {
  TruthTable t(n);
  std::bernoulli_distribution bit(0.5);
  for (std::uint32_t p = 0; p < t.num_points(); ++p) t.set(p, bit(rng));
  return t;
}

inline TruthTable random_nonzero_table(unsigned n, std::mt19937_64& rng) {
  while (true) {
    auto t = random_table(n, rng);
    if (!t.is_zero()) return t;
  }
}

/// Random k-CNF over variables 1..n with `m` clauses of distinct variables.
inline CnfFormula random_kcnf(unsigned n, std::size_t m, unsigned k,
                              std::mt19937_64& rng) {
  std::vector<Clause> clauses;
  std::uniform_int_distribution<Var> var(1, n);
  std::bernoulli_distribution sign(0.5);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<cofsat::cnf::Literal> lits;
    while (lits.size() < k) {
      const Var v = var(rng);
      bool fresh = true;
      for (const auto& l : lits) fresh = fresh && l.var() != v;
      if (fresh) lits.emplace_back(v, sign(rng));
    }
    clauses.push_back(*Clause::make(lits));
  }
  std::vector<Var> universe(n);
  for (unsigned i = 0; i < n; ++i) universe[i] = i + 1;
  return CnfFormula(clauses, universe);
}

/// Enumerates every function over n <= 3 variables.
inline std::vector<TruthTable> all_functions(unsigned n) {
  std::vector<TruthTable> out;
  const std::uint64_t count = std::uint64_t{1} << (1u << n);
  for (std::uint64_t w = 0; w < count; ++w) out.push_back(TruthTable::from_word(n, w));
  return out;
}

/// Pointwise cofactor check: alpha(x) == f(x) wherever g(x) == 1.
inline bool is_cofactor(const TruthTable& alpha, const TruthTable& f,
                        const TruthTable& g) {
  for (std::uint32_t x = 0; x < f.num_points(); ++x) {
    if (g.get(x) && alpha.get(x) != f.get(x)) return false;
  }
  return true;
}

}  // namespace oracle
