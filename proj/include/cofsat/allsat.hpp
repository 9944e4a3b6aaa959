#pragma once

// All-solutions enumeration for small formulas and the gathering step that
// reassembles the solutions of a decomposed formula.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cofsat/cnf.hpp"
#include "cofsat/decompose.hpp"

namespace cofsat::allsat {

using cnf::CnfFormula;
using cnf::PartialAssignment;
using cnf::SolutionSet;

inline constexpr std::size_t kMaxLeafVars = 20;
/// Largest number of free variables a single row may be widened over.
inline constexpr std::size_t kMaxWidenVars = 24;

/// Every satisfying assignment over f.universe(), by unit-propagating
/// backtracking. Throws CapacityError above kMaxLeafVars.
SolutionSet all_solutions(const CnfFormula& f);

/// Same set, computed by scanning the truth table (at most 16 variables).
SolutionSet truth_table_solutions(const CnfFormula& f);

/// Extends each row by `prefix`.
SolutionSet patch(const PartialAssignment& prefix, const SolutionSet& s);

/// Rows over `universe` (a superset of s.over()), absent variables taking
/// both values.
SolutionSet widen(const SolutionSet& s, const std::vector<cnf::Var>& universe);

struct LeafResult {
  std::size_t node_id = 0;
  decompose::WorkItem item;
  SolutionSet solutions;
};

LeafResult solve_leaf(const decompose::DecompositionTree& tree,
                      std::size_t node_id);

/// Union over solvable leaves of their patched and widened solutions, over
/// the root universe. Throws UsageError if a solvable leaf has no result.
SolutionSet gather(const decompose::DecompositionTree& tree,
                   std::span<const LeafResult> results);

/// One line per row: signed literals in ascending variable order, then 0.
std::string format_solutions(const SolutionSet& s);

}  // namespace cofsat::allsat
