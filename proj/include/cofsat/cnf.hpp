#pragma once

// Symbolic CNF formulas over DIMACS-numbered variables: clause SAT sets,
// the partial assignments a clause admits, and reduction of a formula under
// a partial assignment.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cofsat/boolfn.hpp"

namespace cofsat::cnf {

/// DIMACS variable number, >= 1.
using Var = std::uint32_t;

class Literal {
 public:
  constexpr Literal(Var var, bool positive) : var_(var), positive_(positive) {}
  static Literal from_dimacs(int lit);

  constexpr Var var() const noexcept { return var_; }
  constexpr bool positive() const noexcept { return positive_; }
  constexpr Literal negated() const noexcept { return {var_, !positive_}; }
  int to_dimacs() const noexcept {
    return positive_ ? static_cast<int>(var_) : -static_cast<int>(var_);
  }
  /// Value of `var()` that makes this literal true.
  constexpr bool satisfying_value() const noexcept { return positive_; }

  friend constexpr bool operator==(Literal, Literal) = default;
  friend constexpr auto operator<=>(const Literal& a, const Literal& b) {
    if (auto c = a.var_ <=> b.var_; c != 0) return c;
    return a.positive_ <=> b.positive_;
  }

 private:
  Var var_;
  bool positive_;
};

/// Disjunction of literals in their written order, free of duplicates and
/// complementary pairs. The empty clause is the constant 0.
class Clause {
 public:
  Clause() = default;

  /// Drops repeated literals keeping first occurrences; returns nullopt for
  /// a tautology (contains both x and x').
  static std::optional<Clause> make(const std::vector<Literal>& lits);
  /// As make(), but throws UsageError on a tautology.
  static Clause of(std::initializer_list<int> dimacs);

  const std::vector<Literal>& literals() const noexcept { return lits_; }
  std::size_t size() const noexcept { return lits_.size(); }
  bool empty() const noexcept { return lits_.empty(); }
  auto begin() const noexcept { return lits_.begin(); }
  auto end() const noexcept { return lits_.end(); }

  /// Sorted distinct variables.
  std::vector<Var> vars() const;
  /// Same literal set, ignoring order.
  bool same_literals(const Clause& o) const;

  /// Exact equality including literal order.
  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> lits_;
};

/// Finite map Var -> {0,1}, ordered by variable.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  PartialAssignment(std::initializer_list<std::pair<const Var, bool>> init)
      : bindings_(init) {}

  /// Throws UsageError if `var` is already bound.
  void bind(Var var, bool value);
  std::optional<bool> lookup(Var var) const;
  bool binds(Var var) const { return bindings_.contains(var); }
  std::size_t size() const noexcept { return bindings_.size(); }
  bool empty() const noexcept { return bindings_.empty(); }
  std::vector<Var> vars() const;
  const std::map<Var, bool>& bindings() const noexcept { return bindings_; }

  /// Union with `o`; throws UsageError on any shared variable.
  PartialAssignment merged(const PartialAssignment& o) const;
  /// Bindings of `*this` whose variables are not bound in `o`.
  PartialAssignment minus(const PartialAssignment& o) const;
  bool subset_of(const PartialAssignment& o) const;
  /// Signed DIMACS literals in ascending variable order.
  std::vector<int> to_dimacs() const;

  friend bool operator==(const PartialAssignment&,
                         const PartialAssignment&) = default;

 private:
  std::map<Var, bool> bindings_;
};

class CnfFormula {
 public:
  CnfFormula() = default;
  /// Universe = occurring variables. Duplicate clauses (same literal set)
  /// keep their first occurrence.
  explicit CnfFormula(std::vector<Clause> clauses);
  /// Explicit universe; must contain every occurring variable.
  CnfFormula(std::vector<Clause> clauses, std::vector<Var> universe);

  const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  /// Sorted variable list the formula is considered over.
  const std::vector<Var>& universe() const noexcept { return universe_; }
  std::size_t num_clauses() const noexcept { return clauses_.size(); }
  bool has_empty_clause() const;

  /// Copy whose universe is reduced to occurring variables.
  CnfFormula compacted() const;
  /// Conjunction; universes are united.
  CnfFormula conjoined(const CnfFormula& o) const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  std::vector<Clause> clauses_;
  std::vector<Var> universe_;
};

/// Full assignments over `over`, stored sorted by their encoding (over[0] is
/// the least significant bit) and duplicate-free.
class SolutionSet {
 public:
  using Row = std::vector<bool>;

  SolutionSet() = default;
  /// Sorts and deduplicates `rows`; each must have |over| entries.
  SolutionSet(std::vector<Var> over, std::vector<Row> rows);

  const std::vector<Var>& over() const noexcept { return over_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  PartialAssignment row_assignment(std::size_t i) const;

  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

  /// Encoding order with the last variable most significant.
  static bool row_less(const Row& a, const Row& b);

 private:
  std::vector<Var> over_;
  std::vector<Row> rows_;
};

struct DimacsParse {
  CnfFormula formula;
  std::vector<std::string> warnings;
};

/// DIMACS CNF. Universe is {1..nvars} from the header; tautologies and
/// duplicate clauses are dropped with a warning.
DimacsParse parse_dimacs(std::istream& in);
DimacsParse parse_dimacs_string(std::string_view text);

/// Header with the largest universe variable, then one clause per line.
std::string emit_dimacs(const CnfFormula& f);

/// s(C): each literal's variable mapped to its satisfying value.
PartialAssignment sat_set(const Clause& c);
/// q(C): all 2^k - 1 nonempty subsets of s(C), by size, then
/// lexicographically by literal position.
std::vector<PartialAssignment> partial_assignments(const Clause& c);

/// Result of substitute(); nullopt when some clause became empty.
using Reduced = std::optional<CnfFormula>;

/// Drops satisfied clauses, strips falsified literals and deduplicates. The
/// universe becomes the unbound part of the old universe.
Reduced substitute(const CnfFormula& f, const PartialAssignment& q);

/// Truth table over the universe, universe()[j] mapped to table variable j.
boolfn::TruthTable to_truth_table(const CnfFormula& f);

std::vector<Var> clause_vars(const Clause& c);
/// Varlist: sorted distinct occurring variables.
std::vector<Var> formula_vars(const CnfFormula& f);

/// Algebraic notation such as (x'+y+w)(z); `name` maps variables to text.
/// An empty formula prints as "1"; the empty clause as "()".
std::string format_cnf(const CnfFormula& f,
                       const std::function<std::string(Var)>& name = {});
std::string format_assignment(const PartialAssignment& q,
                              const std::function<std::string(Var)>& name = {});

}  // namespace cofsat::cnf
