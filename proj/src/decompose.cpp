#include "cofsat/decompose.hpp"

#include <algorithm>
#include <set>

#include "cofsat/errors.hpp"

namespace cofsat::decompose {

const char* to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::internal: return "internal";
    case NodeStatus::solvable: return "solvable";
    case NodeStatus::unsat: return "unsat";
    case NodeStatus::trivial: return "trivial";
  }
  return "?";
}

std::optional<NodeStatus> node_status_from_string(std::string_view s) {
  for (auto st : {NodeStatus::internal, NodeStatus::solvable, NodeStatus::unsat,
                  NodeStatus::trivial}) {
    if (s == to_string(st)) return st;
  }
  return std::nullopt;
}

DecompositionTree::DecompositionTree(Strategy strategy, CnfFormula root)
    : strategy_(strategy), root_(std::move(root)) {}

std::size_t DecompositionTree::add_node(std::optional<std::size_t> parent,
                                        WorkItem item, NodeStatus status) {
  if (parent && *parent >= nodes_.size()) {
    throw UsageError("parent node " + std::to_string(*parent) + " does not exist");
  }
  if (item.formula) {
    for (Var v : item.prefix.vars()) {
      if (std::binary_search(item.formula->universe().begin(),
                             item.formula->universe().end(), v)) {
        throw UsageError("work item prefix binds a variable of its formula");
      }
    }
  }
  const std::size_t id = nodes_.size();
  nodes_.push_back({id, parent, std::move(item), status});
  return id;
}

void DecompositionTree::set_status(std::size_t id, NodeStatus status) {
  nodes_.at(id).status = status;
}

std::vector<std::size_t> DecompositionTree::leaves() const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes_) {
    if (n.is_leaf()) out.push_back(n.id);
  }
  return out;
}

std::vector<std::size_t> DecompositionTree::solvable_leaves() const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes_) {
    if (n.needs_solving()) out.push_back(n.id);
  }
  return out;
}

std::vector<std::size_t> DecompositionTree::children(std::size_t id) const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes_) {
    if (n.parent == id) out.push_back(n.id);
  }
  return out;
}

bool DecompositionTree::all_dead() const { return solvable_leaves().empty(); }

namespace {

NodeStatus leaf_status(const WorkItem& item) {
  if (item.dead()) return NodeStatus::unsat;
  return item.formula->clauses().empty() ? NodeStatus::trivial
                                         : NodeStatus::solvable;
}

}  // namespace

std::vector<WorkItem> clause_pivot_decompose(const CnfFormula& f,
                                             std::size_t pivot_index) {
  if (pivot_index >= f.num_clauses()) {
    throw UsageError("pivot clause " + std::to_string(pivot_index) +
                     " out of range for " + std::to_string(f.num_clauses()) +
                     " clauses");
  }
  std::vector<WorkItem> items;
  for (auto& q : cnf::partial_assignments(f.clauses()[pivot_index])) {
    auto reduced = cnf::substitute(f, q);
    items.push_back({std::move(q), std::move(reduced), 1});
  }
  return items;
}

DecompositionTree clause_pivot_tree(const CnfFormula& f,
                                    std::size_t pivot_index) {
  auto items = clause_pivot_decompose(f, pivot_index);
  DecompositionTree tree(Strategy::clause_pivot, f);
  const auto root = tree.add_node(std::nullopt, {{}, f, 0}, NodeStatus::internal);
  for (auto& item : items) {
    const auto status = leaf_status(item);
    tree.add_node(root, std::move(item), status);
  }
  return tree;
}

std::vector<Var> choose_var_subset(const CnfFormula& f, std::size_t n0) {
  if (n0 < 1) throw UsageError("n0 must be at least 1");
  const auto vars = cnf::formula_vars(f);
  const std::size_t k = std::min(n0, vars.size());
  std::vector<std::vector<Var>> clause_vars;
  clause_vars.reserve(f.num_clauses());
  for (const auto& c : f.clauses()) clause_vars.push_back(c.vars());

  std::set<Var> chosen;
  auto covered = [&](const std::set<Var>& block) {
    std::size_t n = 0;
    for (const auto& cv : clause_vars) {
      if (std::all_of(cv.begin(), cv.end(),
                      [&](Var v) { return block.contains(v); })) {
        ++n;
      }
    }
    return n;
  };
  while (chosen.size() < k) {
    std::optional<Var> best;
    std::size_t best_score = 0;
    for (Var v : vars) {  // ascending, so strict > keeps the smallest id
      if (chosen.contains(v)) continue;
      auto trial = chosen;
      trial.insert(v);
      const std::size_t score = covered(trial);
      if (!best || score > best_score) {
        best = v;
        best_score = score;
      }
    }
    chosen.insert(*best);
  }
  return {chosen.begin(), chosen.end()};
}

Partition partition(const CnfFormula& f, const std::vector<Var>& x1) {
  Partition p;
  p.x1 = x1;
  std::sort(p.x1.begin(), p.x1.end());
  const auto in_x1 = [&](Var v) {
    return std::binary_search(p.x1.begin(), p.x1.end(), v);
  };
  for (Var v : cnf::formula_vars(f)) {
    if (!in_x1(v)) p.x2.push_back(v);
  }
  for (const auto& c : f.clauses()) {
    const auto cv = c.vars();
    const auto inside = static_cast<std::size_t>(
        std::count_if(cv.begin(), cv.end(), in_x1));
    if (inside == cv.size()) {
      p.c1.push_back(c);
    } else if (inside == 0) {
      p.c3.push_back(c);
    } else {
      p.c2.push_back(c);
    }
  }
  return p;
}

std::vector<PartialAssignment> enumerate_c1_assignments(
    const std::vector<cnf::Clause>& c1, const std::vector<Var>& x1) {
  if (x1.size() > kMaxBlockVars) {
    throw CapacityError("variable block of " + std::to_string(x1.size()) +
                        " exceeds the enumeration cap of " +
                        std::to_string(kMaxBlockVars));
  }
  auto vars = x1;
  std::sort(vars.begin(), vars.end());
  // Each clause as (mask of positive vars, mask of negative vars).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  for (const auto& c : c1) {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
    for (const auto& l : c) {
      const auto it = std::lower_bound(vars.begin(), vars.end(), l.var());
      if (it == vars.end() || *it != l.var()) {
        throw UsageError("C1 clause mentions variable " +
                         std::to_string(l.var()) + " outside X1");
      }
      const std::uint32_t bit = std::uint32_t{1} << (it - vars.begin());
      (l.positive() ? pos : neg) |= bit;
    }
    masks.emplace_back(pos, neg);
  }
  std::vector<PartialAssignment> out;
  const std::uint32_t limit = std::uint32_t{1} << vars.size();
  for (std::uint32_t a = 0; a < limit; ++a) {
    const bool ok = std::all_of(masks.begin(), masks.end(), [a](const auto& m) {
      return (a & m.first) != 0 || (~a & m.second) != 0;
    });
    if (!ok) continue;
    PartialAssignment q;
    for (std::size_t j = 0; j < vars.size(); ++j) q.bind(vars[j], ((a >> j) & 1u) != 0);
    out.push_back(std::move(q));
  }
  return out;
}

namespace {

void expand_block(DecompositionTree& tree, std::size_t id, std::size_t n0) {
  const TreeNode node = tree.node(id);
  const CnfFormula& g = *node.item.formula;
  if (cnf::formula_vars(g).size() <= n0) {
    tree.set_status(id, leaf_status(node.item));
    return;
  }
  const auto x1 = choose_var_subset(g, n0);
  const auto parts = partition(g, x1);
  const auto assignments = enumerate_c1_assignments(parts.c1, parts.x1);
  if (assignments.empty()) {
    tree.set_status(id, NodeStatus::unsat);
    return;
  }
  tree.set_status(id, NodeStatus::internal);
  const CnfFormula c2(parts.c2);
  const CnfFormula c3(parts.c3);
  std::vector<std::size_t> live;
  for (const auto& q : assignments) {
    WorkItem child{node.item.prefix.merged(q), std::nullopt, node.item.depth + 1};
    if (auto reduced = cnf::substitute(c2, q)) {
      child.formula = reduced->conjoined(c3).compacted();
      live.push_back(tree.add_node(id, std::move(child), NodeStatus::solvable));
    } else {
      tree.add_node(id, std::move(child), NodeStatus::unsat);
    }
  }
  for (auto child : live) expand_block(tree, child, n0);
}

}  // namespace

DecompositionTree var_partition_decompose(const CnfFormula& f, std::size_t n0) {
  if (n0 < 1) throw UsageError("n0 must be at least 1");
  DecompositionTree tree(Strategy::var_partition, f);
  const auto root =
      tree.add_node(std::nullopt, {{}, f.compacted(), 0}, NodeStatus::solvable);
  expand_block(tree, root, n0);
  return tree;
}

CostEstimate estimate_cost(std::size_t total_vars, std::size_t n0,
                           double leaf_time, double subst_time) {
  if (n0 < 1) throw UsageError("n0 must be at least 1");
  if (leaf_time < 0 || subst_time < 0) {
    throw UsageError("timing constants must be nonnegative");
  }
  CostEstimate e;
  e.total_vars = total_vars;
  e.n0 = n0;
  e.depth = total_vars / n0;
  e.remainder = total_vars % n0;
  e.leaf_time = leaf_time;
  e.subst_time = subst_time;
  double power = 1;
  for (std::size_t i = 0; i < e.depth; ++i) power *= leaf_time;
  e.total_time = power + static_cast<double>(e.depth) * subst_time;
  return e;
}

}  // namespace cofsat::decompose
