#include "cofsat/cnf.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

#include "cofsat/errors.hpp"

namespace cofsat::cnf {

Literal Literal::from_dimacs(int lit) {
  if (lit == 0) throw UsageError("0 is not a literal");
  return {static_cast<Var>(std::abs(lit)), lit > 0};
}

std::optional<Clause> Clause::make(const std::vector<Literal>& lits) {
  Clause c;
  for (const Literal& l : lits) {
    if (std::find(c.lits_.begin(), c.lits_.end(), l.negated()) != c.lits_.end()) {
      return std::nullopt;
    }
    if (std::find(c.lits_.begin(), c.lits_.end(), l) == c.lits_.end()) {
      c.lits_.push_back(l);
    }
  }
  return c;
}

Clause Clause::of(std::initializer_list<int> dimacs) {
  std::vector<Literal> lits;
  for (int d : dimacs) lits.push_back(Literal::from_dimacs(d));
  auto c = make(lits);
  if (!c) throw UsageError("tautological clause");
  return *c;
}

std::vector<Var> Clause::vars() const {
  std::vector<Var> v;
  v.reserve(lits_.size());
  for (const auto& l : lits_) v.push_back(l.var());
  std::sort(v.begin(), v.end());
  return v;
}

bool Clause::same_literals(const Clause& o) const {
  if (lits_.size() != o.lits_.size()) return false;
  auto a = lits_;
  auto b = o.lits_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

void PartialAssignment::bind(Var var, bool value) {
  if (!bindings_.emplace(var, value).second) {
    throw UsageError("variable " + std::to_string(var) + " bound twice");
  }
}

std::optional<bool> PartialAssignment::lookup(Var var) const {
  if (auto it = bindings_.find(var); it != bindings_.end()) return it->second;
  return std::nullopt;
}

std::vector<Var> PartialAssignment::vars() const {
  std::vector<Var> v;
  v.reserve(bindings_.size());
  for (const auto& [var, value] : bindings_) v.push_back(var);
  return v;
}

PartialAssignment PartialAssignment::merged(const PartialAssignment& o) const {
  PartialAssignment r = *this;
  for (const auto& [var, value] : o.bindings_) r.bind(var, value);
  return r;
}

PartialAssignment PartialAssignment::minus(const PartialAssignment& o) const {
  PartialAssignment r;
  for (const auto& [var, value] : bindings_) {
    if (!o.binds(var)) r.bindings_.emplace(var, value);
  }
  return r;
}

bool PartialAssignment::subset_of(const PartialAssignment& o) const {
  return std::all_of(bindings_.begin(), bindings_.end(), [&](const auto& b) {
    return o.lookup(b.first) == b.second;
  });
}

std::vector<int> PartialAssignment::to_dimacs() const {
  std::vector<int> out;
  out.reserve(bindings_.size());
  for (const auto& [var, value] : bindings_) {
    out.push_back(Literal(var, value).to_dimacs());
  }
  return out;
}

namespace {

std::vector<Clause> dedup_clauses(std::vector<Clause> clauses) {
  std::vector<Clause> out;
  std::set<std::vector<Literal>> seen;
  for (auto& c : clauses) {
    auto key = c.literals();
    std::sort(key.begin(), key.end());
    if (seen.insert(std::move(key)).second) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Var> occurring(const std::vector<Clause>& clauses) {
  std::set<Var> vars;
  for (const auto& c : clauses) {
    for (const auto& l : c) vars.insert(l.var());
  }
  return {vars.begin(), vars.end()};
}

}  // namespace

CnfFormula::CnfFormula(std::vector<Clause> clauses)
    : clauses_(dedup_clauses(std::move(clauses))),
      universe_(occurring(clauses_)) {}

CnfFormula::CnfFormula(std::vector<Clause> clauses, std::vector<Var> universe)
    : clauses_(dedup_clauses(std::move(clauses))), universe_(std::move(universe)) {
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()),
                  universe_.end());
  for (Var v : occurring(clauses_)) {
    if (!std::binary_search(universe_.begin(), universe_.end(), v)) {
      throw UsageError("variable " + std::to_string(v) +
                       " occurs outside the declared universe");
    }
  }
}

bool CnfFormula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.empty(); });
}

CnfFormula CnfFormula::compacted() const { return CnfFormula(clauses_); }

CnfFormula CnfFormula::conjoined(const CnfFormula& o) const {
  auto clauses = clauses_;
  clauses.insert(clauses.end(), o.clauses_.begin(), o.clauses_.end());
  auto universe = universe_;
  universe.insert(universe.end(), o.universe_.begin(), o.universe_.end());
  return CnfFormula(std::move(clauses), std::move(universe));
}

SolutionSet::SolutionSet(std::vector<Var> over, std::vector<Row> rows)
    : over_(std::move(over)), rows_(std::move(rows)) {
  if (!std::is_sorted(over_.begin(), over_.end()) ||
      std::adjacent_find(over_.begin(), over_.end()) != over_.end()) {
    throw UsageError("solution variables must be sorted and distinct");
  }
  for (const auto& r : rows_) {
    if (r.size() != over_.size()) {
      throw UsageError("solution row does not cover every variable");
    }
  }
  std::sort(rows_.begin(), rows_.end(), row_less);
  rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
}

bool SolutionSet::row_less(const Row& a, const Row& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return b[i];
  }
  return false;
}

PartialAssignment SolutionSet::row_assignment(std::size_t i) const {
  PartialAssignment q;
  for (std::size_t j = 0; j < over_.size(); ++j) q.bind(over_[j], rows_.at(i)[j]);
  return q;
}

PartialAssignment sat_set(const Clause& c) {
  if (c.empty()) throw DomainError("the empty clause has no SAT set");
  PartialAssignment s;
  for (const auto& l : c) s.bind(l.var(), l.satisfying_value());
  return s;
}

std::vector<PartialAssignment> partial_assignments(const Clause& c) {
  if (c.empty()) throw DomainError("the empty clause has no partial assignments");
  const std::size_t k = c.size();
  if (k > 24) throw CapacityError("clause too wide to enumerate q(C)");
  std::vector<PartialAssignment> out;
  out.reserve((std::size_t{1} << k) - 1);
  // Subsets of literal positions of each size r in lexicographic order.
  std::vector<std::size_t> pick;
  for (std::size_t r = 1; r <= k; ++r) {
    pick.resize(r);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      PartialAssignment q;
      for (std::size_t i : pick) {
        const Literal& l = c.literals()[i];
        q.bind(l.var(), l.satisfying_value());
      }
      out.push_back(std::move(q));
      std::size_t i = r;
      while (i > 0 && pick[i - 1] == k - r + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

Reduced substitute(const CnfFormula& f, const PartialAssignment& q) {
  std::vector<Clause> kept;
  kept.reserve(f.num_clauses());
  for (const auto& c : f.clauses()) {
    std::vector<Literal> rest;
    bool satisfied = false;
    for (const auto& l : c) {
      const auto value = q.lookup(l.var());
      if (!value) {
        rest.push_back(l);
      } else if (*value == l.satisfying_value()) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) continue;
    if (rest.empty()) return std::nullopt;
    kept.push_back(*Clause::make(rest));
  }
  std::vector<Var> universe;
  for (Var v : f.universe()) {
    if (!q.binds(v)) universe.push_back(v);
  }
  return CnfFormula(std::move(kept), std::move(universe));
}

boolfn::TruthTable to_truth_table(const CnfFormula& f) {
  const auto& u = f.universe();
  if (u.size() > boolfn::TruthTable::kMaxVars) {
    throw CapacityError("formula over " + std::to_string(u.size()) +
                        " variables exceeds the truth-table cap");
  }
  const auto n = static_cast<unsigned>(u.size());
  auto table = boolfn::TruthTable::constant(n, true);
  for (const auto& c : f.clauses()) {
    boolfn::TruthTable clause(n);
    for (const auto& l : c) {
      const auto pos = static_cast<unsigned>(
          std::lower_bound(u.begin(), u.end(), l.var()) - u.begin());
      clause |= boolfn::TruthTable::literal(n, boolfn::VarId{pos}, l.positive());
    }
    table &= clause;
  }
  return table;
}

std::vector<Var> clause_vars(const Clause& c) { return c.vars(); }

std::vector<Var> formula_vars(const CnfFormula& f) { return occurring(f.clauses()); }

namespace {

std::string default_name(Var v) { return "x" + std::to_string(v); }

}  // namespace

std::string format_cnf(const CnfFormula& f,
                       const std::function<std::string(Var)>& name) {
  const auto& nm = name ? name : default_name;
  if (f.clauses().empty()) return "1";
  std::string s;
  for (const auto& c : f.clauses()) {
    s += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i > 0) s += '+';
      s += nm(c.literals()[i].var());
      if (!c.literals()[i].positive()) s += '\'';
    }
    s += ')';
  }
  return s;
}

std::string format_assignment(const PartialAssignment& q,
                              const std::function<std::string(Var)>& name) {
  const auto& nm = name ? name : default_name;
  std::string s = "{";
  bool first = true;
  for (const auto& [var, value] : q.bindings()) {
    if (!first) s += ", ";
    first = false;
    s += nm(var) + "=" + (value ? "1" : "0");
  }
  return s + "}";
}

}  // namespace cofsat::cnf
