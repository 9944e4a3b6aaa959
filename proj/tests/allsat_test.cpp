#include <doctest.h>

#include <algorithm>
#include <random>

#include "cofsat/allsat.hpp"
#include "cofsat/errors.hpp"
#include "worked_example.hpp"
#include "oracle.hpp"

using namespace cofsat;
using namespace cofsat::allsat;
using cnf::Clause;
using cnf::SolutionSet;

TEST_CASE("all_solutions on small formulas") {
  const cnf::CnfFormula zz({Clause::of({3}), Clause::of({-3})});
  CHECK(all_solutions(zz).empty());

  // (z+w')(z'+w') over {z, w}
  const cnf::CnfFormula row4({Clause::of({3, -4}), Clause::of({-3, -4})});
  const auto s = all_solutions(row4);
  CHECK(s.over() == std::vector<cnf::Var>{3, 4});
  CHECK(s.rows() == std::vector<SolutionSet::Row>{{false, false}, {true, false}});

  const auto ex = all_solutions(worked::formula());
  CHECK(ex.size() == 9);
  CHECK(ex == oracle::brute_force_solutions(worked::formula()));

  CHECK(all_solutions(cnf::CnfFormula({}, {1, 2, 3})).size() == 8);
  CHECK(all_solutions(cnf::CnfFormula({Clause()}, {1})).empty());
  CHECK(all_solutions(cnf::CnfFormula()).size() == 1);  // the empty assignment

  std::vector<cnf::Var> wide(21);
  for (cnf::Var i = 0; i < 21; ++i) wide[i] = i + 1;
  CHECK_THROWS_AS(all_solutions(cnf::CnfFormula({}, wide)), CapacityError);
}

TEST_CASE("backtracker matches both oracles") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<unsigned> nd(1, 14);
    const unsigned n = nd(rng);
    std::uniform_int_distribution<std::size_t> md(0, 5 * n);
    std::uniform_int_distribution<unsigned> kd(1, std::min(4u, n));
    const auto f = oracle::random_kcnf(n, md(rng), kd(rng), rng);
    const auto s = all_solutions(f);
    REQUIRE(s == oracle::brute_force_solutions(f));
    REQUIRE(s == truth_table_solutions(f));
  }
}

TEST_CASE("patch") {
  const SolutionSet s({3, 4}, {{false, false}, {true, false}});
  CHECK(patch({}, s) == s);
  CHECK(patch({{1, false}}, SolutionSet({3}, {})).empty());
  const auto p = patch({{1, false}, {4, false}}, SolutionSet({3}, {{false}, {true}}));
  CHECK(p.over() == std::vector<cnf::Var>{1, 3, 4});
  CHECK(p.rows() == std::vector<SolutionSet::Row>{{false, false, false}, {false, true, false}});
  CHECK_THROWS_AS(patch({{3, true}}, s), UsageError);
}

TEST_CASE("widen") {
  const SolutionSet s({2}, {{true}});
  const auto w = widen(s, {1, 2, 3});
  CHECK(w.size() == 4);
  for (const auto& r : w.rows()) CHECK(r[1]);
  CHECK(widen(SolutionSet({2}, {}), {1, 2, 3}).empty());
  CHECK_THROWS_AS(widen(s, {1, 3}), UsageError);
}

TEST_CASE("gather") {
  SUBCASE("single trivial leaf expands to the root universe") {
    const auto tree = decompose::var_partition_decompose(cnf::CnfFormula({}, {1, 2}), 8);
    const std::vector<LeafResult> r{solve_leaf(tree, 0)};
    CHECK(gather(tree, r).size() == 4);
  }
  SUBCASE("missing results are an error") {
    const auto tree = decompose::clause_pivot_tree(worked::formula(), 0);
    std::vector<LeafResult> r;
    for (auto id : tree.solvable_leaves()) r.push_back(solve_leaf(tree, id));
    CHECK(gather(tree, r).size() == 9);
    r.pop_back();
    CHECK_THROWS_AS(gather(tree, r), UsageError);
    CHECK_THROWS_AS(solve_leaf(tree, 0), UsageError);
  }
}

TEST_CASE("gather is order independent") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = oracle::random_kcnf(11, 30, 3, rng);
    for (const auto& tree : {decompose::var_partition_decompose(f, 3),
                             decompose::clause_pivot_tree(f, 0)}) {
      std::vector<LeafResult> r;
      for (auto id : tree.solvable_leaves()) r.push_back(solve_leaf(tree, id));
      const auto baseline = gather(tree, r);
      for (int k = 0; k < 3; ++k) {
        std::shuffle(r.begin(), r.end(), rng);
        CHECK(gather(tree, r) == baseline);
      }
      CHECK(baseline == oracle::brute_force_solutions(f));
    }
  }
}

TEST_CASE("every gathered row lies in some branch") {
  std::mt19937_64 rng(67);
  const auto f = oracle::random_kcnf(10, 25, 3, rng);
  const auto tree = decompose::clause_pivot_tree(f, 1);
  std::vector<LeafResult> r;
  for (auto id : tree.solvable_leaves()) r.push_back(solve_leaf(tree, id));
  const auto all = gather(tree, r);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto row = all.row_assignment(i);
    const bool in_some_branch = std::any_of(r.begin(), r.end(), [&](const LeafResult& lr) {
      if (!lr.item.prefix.subset_of(row)) return false;
      const auto rest = row.minus(lr.item.prefix);
      for (std::size_t k = 0; k < lr.solutions.size(); ++k) {
        if (lr.solutions.row_assignment(k).subset_of(rest)) return true;
      }
      return false;
    });
    CHECK(in_some_branch);
  }
}

TEST_CASE("solution text format") {
  const SolutionSet s({1, 3}, {{true, false}, {false, false}});
  CHECK(format_solutions(s) == "-1 -3 0\n1 -3 0\n");
  CHECK(format_solutions(SolutionSet({1}, {})).empty());
}
