#include "cofsat/allsat.hpp"

#include <algorithm>
#include <map>

#include "cofsat/errors.hpp"

namespace cofsat::allsat {

namespace {

struct PosLit {
  std::size_t pos;
  bool positive;
};

class Enumerator {
 public:
  explicit Enumerator(const CnfFormula& f) : values_(f.universe().size(), kUnset) {
    const auto& u = f.universe();
    for (const auto& c : f.clauses()) {
      std::vector<PosLit> lits;
      for (const auto& l : c) {
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(u.begin(), u.end(), l.var()) - u.begin());
        lits.push_back({pos, l.positive()});
      }
      clauses_.push_back(std::move(lits));
    }
  }

  std::vector<SolutionSet::Row> run() {
    search();
    return std::move(rows_);
  }

 private:
  static constexpr signed char kUnset = -1;

  bool lit_true(const PosLit& l) const {
    return values_[l.pos] == static_cast<signed char>(l.positive);
  }

  void assign(std::size_t pos, bool value) {
    values_[pos] = static_cast<signed char>(value);
    trail_.push_back(pos);
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      values_[trail_.back()] = kUnset;
      trail_.pop_back();
    }
  }

  // Assigns forced literals until fixpoint; false on a falsified clause.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses_) {
        const PosLit* open = nullptr;
        std::size_t unassigned = 0;
        bool satisfied = false;
        for (const auto& l : c) {
          if (values_[l.pos] == kUnset) {
            ++unassigned;
            open = &l;
          } else if (lit_true(l)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(open->pos, open->positive);
          changed = true;
        }
      }
    }
    return true;
  }

  // Smallest unassigned position occurring in an unsatisfied clause.
  std::optional<std::size_t> pick_branch() const {
    std::optional<std::size_t> best;
    for (const auto& c : clauses_) {
      if (std::any_of(c.begin(), c.end(), [&](const PosLit& l) { return lit_true(l); })) {
        continue;
      }
      for (const auto& l : c) {
        if (values_[l.pos] == kUnset && (!best || l.pos < *best)) best = l.pos;
      }
    }
    return best;
  }

  void emit_completions() {
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] == kUnset) free.push_back(i);
    }
    SolutionSet::Row row(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) row[i] = values_[i] == 1;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << free.size()); ++m) {
      for (std::size_t j = 0; j < free.size(); ++j) row[free[j]] = ((m >> j) & 1u) != 0;
      rows_.push_back(row);
    }
  }

  void search() {
    const std::size_t mark = trail_.size();
    if (propagate()) {
      if (const auto pos = pick_branch()) {
        for (bool value : {false, true}) {
          const std::size_t inner = trail_.size();
          assign(*pos, value);
          search();
          undo_to(inner);
        }
      } else {
        emit_completions();
      }
    }
    undo_to(mark);
  }

  std::vector<std::vector<PosLit>> clauses_;
  std::vector<signed char> values_;
  std::vector<std::size_t> trail_;
  std::vector<SolutionSet::Row> rows_;
};

}  // namespace

SolutionSet all_solutions(const CnfFormula& f) {
  if (f.universe().size() > kMaxLeafVars) {
    throw CapacityError("leaf formula over " + std::to_string(f.universe().size()) +
                        " variables exceeds the enumeration cap of " +
                        std::to_string(kMaxLeafVars));
  }
  return SolutionSet(f.universe(), Enumerator(f).run());
}

SolutionSet truth_table_solutions(const CnfFormula& f) {
  const auto table = cnf::to_truth_table(f);
  std::vector<SolutionSet::Row> rows;
  for (boolfn::Point p : table.support()) {
    SolutionSet::Row row(f.universe().size());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = ((p >> j) & 1u) != 0;
    rows.push_back(std::move(row));
  }
  return SolutionSet(f.universe(), std::move(rows));
}

SolutionSet patch(const PartialAssignment& prefix, const SolutionSet& s) {
  for (cnf::Var v : s.over()) {
    if (prefix.binds(v)) {
      throw UsageError("prefix variable " + std::to_string(v) +
                       " collides with a solution variable");
    }
  }
  std::vector<cnf::Var> over = s.over();
  for (cnf::Var v : prefix.vars()) over.push_back(v);
  std::sort(over.begin(), over.end());
  std::vector<SolutionSet::Row> rows;
  rows.reserve(s.size());
  for (const auto& r : s.rows()) {
    SolutionSet::Row row(over.size());
    std::size_t k = 0;
    for (std::size_t j = 0; j < over.size(); ++j) {
      if (auto b = prefix.lookup(over[j])) {
        row[j] = *b;
      } else {
        row[j] = r[k++];
      }
    }
    rows.push_back(std::move(row));
  }
  return SolutionSet(std::move(over), std::move(rows));
}

SolutionSet widen(const SolutionSet& s, const std::vector<cnf::Var>& universe) {
  std::vector<cnf::Var> over = universe;
  std::sort(over.begin(), over.end());
  over.erase(std::unique(over.begin(), over.end()), over.end());
  // Position of each target variable in s.over(), or npos if free.
  constexpr auto npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> source(over.size(), npos);
  std::vector<std::size_t> free;
  std::size_t matched = 0;
  for (std::size_t j = 0; j < over.size(); ++j) {
    const auto it = std::lower_bound(s.over().begin(), s.over().end(), over[j]);
    if (it != s.over().end() && *it == over[j]) {
      source[j] = static_cast<std::size_t>(it - s.over().begin());
      ++matched;
    } else {
      free.push_back(j);
    }
  }
  if (matched != s.over().size()) {
    throw UsageError("widening target does not contain every solution variable");
  }
  if (free.size() > kMaxWidenVars && !s.empty()) {
    throw CapacityError("widening over " + std::to_string(free.size()) +
                        " unconstrained variables exceeds the cap of " +
                        std::to_string(kMaxWidenVars));
  }
  std::vector<SolutionSet::Row> rows;
  rows.reserve(s.size() << free.size());
  for (const auto& r : s.rows()) {
    SolutionSet::Row row(over.size());
    for (std::size_t j = 0; j < over.size(); ++j) {
      if (source[j] != npos) row[j] = r[source[j]];
    }
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << free.size()); ++m) {
      for (std::size_t k = 0; k < free.size(); ++k) row[free[k]] = ((m >> k) & 1u) != 0;
      rows.push_back(row);
    }
  }
  return SolutionSet(std::move(over), std::move(rows));
}

LeafResult solve_leaf(const decompose::DecompositionTree& tree,
                      std::size_t node_id) {
  const auto& node = tree.node(node_id);
  if (!node.needs_solving()) {
    throw UsageError("node " + std::to_string(node_id) + " is not a solvable leaf");
  }
  return {node_id, node.item, all_solutions(*node.item.formula)};
}

SolutionSet gather(const decompose::DecompositionTree& tree,
                   std::span<const LeafResult> results) {
  std::map<std::size_t, const LeafResult*> by_node;
  for (const auto& r : results) by_node[r.node_id] = &r;
  const auto& universe = tree.root().universe();
  std::vector<SolutionSet::Row> rows;
  for (std::size_t id : tree.solvable_leaves()) {
    const auto it = by_node.find(id);
    if (it == by_node.end()) {
      throw UsageError("missing leaf result for node " + std::to_string(id));
    }
    const auto& node = tree.node(id);
    const auto& sols = it->second->solutions;
    if (sols.over() != node.item.formula->universe()) {
      throw UsageError("leaf result for node " + std::to_string(id) +
                       " is over the wrong variables");
    }
    const auto full = widen(patch(node.item.prefix, sols), universe);
    rows.insert(rows.end(), full.rows().begin(), full.rows().end());
  }
  return SolutionSet(universe, std::move(rows));
}

std::string format_solutions(const SolutionSet& s) {
  std::string out;
  for (const auto& row : s.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out += std::to_string(cnf::Literal(s.over()[j], row[j]).to_dimacs()) + " ";
    }
    out += "0\n";
  }
  return out;
}

}  // namespace cofsat::allsat
