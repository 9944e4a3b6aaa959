#pragma once

// Splitting a CNF formula into independent subproblems, either by the
// partial assignments of one pivot clause or by repeatedly fixing a small
// block of variables, plus the matching cost model.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cofsat/cnf.hpp"

namespace cofsat::decompose {

using cnf::CnfFormula;
using cnf::PartialAssignment;
using cnf::Var;

/// A self-contained subproblem: the solutions of the original formula in
/// this branch are `prefix` joined with the solutions of `formula`.
struct WorkItem {
  PartialAssignment prefix;
  /// nullopt when substitution produced an empty clause (dead branch).
  std::optional<CnfFormula> formula;
  std::size_t depth = 0;

  bool dead() const noexcept { return !formula.has_value(); }
  friend bool operator==(const WorkItem&, const WorkItem&) = default;
};

enum class NodeStatus { internal, solvable, unsat, trivial };

const char* to_string(NodeStatus s);
std::optional<NodeStatus> node_status_from_string(std::string_view s);

struct TreeNode {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  WorkItem item;
  NodeStatus status = NodeStatus::solvable;

  bool is_leaf() const noexcept { return status != NodeStatus::internal; }
  /// Leaves that need a LeafResult before gathering.
  bool needs_solving() const noexcept {
    return status == NodeStatus::solvable || status == NodeStatus::trivial;
  }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

enum class Strategy { clause_pivot, var_partition };

/// Nodes in creation order; node 0 is the root with an empty prefix.
class DecompositionTree {
 public:
  DecompositionTree(Strategy strategy, CnfFormula root);

  Strategy strategy() const noexcept { return strategy_; }
  const CnfFormula& root() const noexcept { return root_; }
  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  const TreeNode& node(std::size_t id) const { return nodes_.at(id); }

  std::vector<std::size_t> leaves() const;
  std::vector<std::size_t> solvable_leaves() const;
  std::vector<std::size_t> children(std::size_t id) const;
  /// True when no leaf can contribute a solution.
  bool all_dead() const;

  std::size_t add_node(std::optional<std::size_t> parent, WorkItem item,
                       NodeStatus status);
  void set_status(std::size_t id, NodeStatus status);

  friend bool operator==(const DecompositionTree&,
                         const DecompositionTree&) = default;

 private:
  Strategy strategy_;
  CnfFormula root_;
  std::vector<TreeNode> nodes_;
};

/// One WorkItem per q in q(C_pivot), in canonical q order.
std::vector<WorkItem> clause_pivot_decompose(const CnfFormula& f,
                                             std::size_t pivot_index);
/// Root plus one leaf per branch of clause_pivot_decompose.
DecompositionTree clause_pivot_tree(const CnfFormula& f,
                                    std::size_t pivot_index);

struct Partition {
  std::vector<cnf::Clause> c1;  // only X1 variables
  std::vector<cnf::Clause> c2;  // both X1 and X2 variables
  std::vector<cnf::Clause> c3;  // only X2 variables
  std::vector<Var> x1;
  std::vector<Var> x2;
};

/// Greedy block selection: repeatedly add the variable that maximizes the
/// number of clauses whose variables all lie in the block, smallest id on
/// ties, until min(n0, |X|) variables are chosen.
std::vector<Var> choose_var_subset(const CnfFormula& f, std::size_t n0);

Partition partition(const CnfFormula& f, const std::vector<Var>& x1);

/// Every full assignment over `x1` satisfying all of `c1`, ascending by
/// encoding (x1[0] least significant).
std::vector<PartialAssignment> enumerate_c1_assignments(
    const std::vector<cnf::Clause>& c1, const std::vector<Var>& x1);

inline constexpr std::size_t kMaxBlockVars = 20;

/// Recursive block decomposition until every leaf has at most n0 variables.
DecompositionTree var_partition_decompose(const CnfFormula& f, std::size_t n0);

struct CostEstimate {
  std::size_t total_vars = 0;  // N
  std::size_t n0 = 1;
  std::size_t depth = 0;       // d = N div n0
  std::size_t remainder = 0;   // r0 = N mod n0
  double leaf_time = 0;        // T0
  double subst_time = 0;       // S0
  double total_time = 0;       // T = T0^d + d S0
};

CostEstimate estimate_cost(std::size_t total_vars, std::size_t n0,
                           double leaf_time, double subst_time);

/// Line-oriented text form of a tree, see docs/tree-format.md.
std::string serialize_tree(const DecompositionTree& tree);
DecompositionTree parse_tree(std::istream& in);
DecompositionTree parse_tree_string(std::string_view text);

}  // namespace cofsat::decompose
