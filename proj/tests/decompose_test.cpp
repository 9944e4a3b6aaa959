#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "cofsat/allsat.hpp"
#include "cofsat/decompose.hpp"
#include "cofsat/errors.hpp"
#include "worked_example.hpp"
#include "oracle.hpp"

using namespace cofsat;
using namespace cofsat::decompose;
using cnf::Clause;
using cnf::PartialAssignment;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cnf::SolutionSet solve_and_gather(const DecompositionTree& tree) {
  std::vector<allsat::LeafResult> results;
  for (auto id : tree.solvable_leaves()) results.push_back(allsat::solve_leaf(tree, id));
  return allsat::gather(tree, results);
}

}  // namespace

TEST_CASE("clause pivot on the worked example") {
  const auto f = worked::formula();
  const auto items = clause_pivot_decompose(f, 0);
  REQUIRE(items.size() == 7);
  CHECK(cnf::format_cnf(*items[3].formula, worked::name) == "(z+w')(z'+w')");
  for (const auto& item : items) {
    CHECK(item.depth == 1);
    CHECK_FALSE(item.dead());
  }
  CHECK(clause_pivot_decompose(cnf::CnfFormula({Clause::of({2}), Clause::of({1, 3})}), 0).size() == 1);
  CHECK_THROWS_AS(clause_pivot_decompose(f, 4), UsageError);

  const auto tree = clause_pivot_tree(f, 0);
  CHECK(serialize_tree(tree) ==
        read_file(COFSAT_TEST_DATA_DIR "/../golden/worked_pivot_tree.txt"));
  CHECK(solve_and_gather(tree).size() == 9);
}

TEST_CASE("dead branches are flagged and contribute nothing") {
  // Pivot (x1 + x2) with x1' and x2' units: every branch hits an empty clause.
  const cnf::CnfFormula f({Clause::of({1, 2}), Clause::of({-1}), Clause::of({-2})});
  const auto tree = clause_pivot_tree(f, 0);
  CHECK(tree.all_dead());
  for (auto id : tree.leaves()) CHECK(tree.node(id).status == NodeStatus::unsat);
  CHECK(solve_and_gather(tree).empty());
  for (const auto& item : clause_pivot_decompose(f, 0)) {
    CHECK(item.dead());
    const auto table = cnf::to_truth_table(f);
    auto restricted = table;
    for (const auto& [v, b] : item.prefix.bindings()) {
      restricted = restricted.restrict(boolfn::VarId{v - 1}, b);
    }
    CHECK(restricted.is_zero());
  }
}

TEST_CASE("choose_var_subset") {
  const auto f = worked::formula();
  // No pair covers a 3-literal clause, so the tie-break picks ids 1 then 2.
  CHECK(choose_var_subset(f, 2) == std::vector<cnf::Var>{1, 2});
  CHECK(choose_var_subset(f, 9) == std::vector<cnf::Var>{1, 2, 3, 4});

  const cnf::CnfFormula g({Clause::of({1, 2}), Clause::of({-1, 2}), Clause::of({1, -2}),
                           Clause::of({3, 4}), Clause::of({5, 3})});
  CHECK(choose_var_subset(g, 2) == std::vector<cnf::Var>{1, 2});

  const cnf::CnfFormula shared({Clause::of({5, 1}), Clause::of({5, 2}), Clause::of({-5, 3})});
  CHECK(choose_var_subset(shared, 1) == std::vector<cnf::Var>{1});
  const cnf::CnfFormula unit5({Clause::of({5, 1}), Clause::of({5}), Clause::of({-5, 3})});
  CHECK(choose_var_subset(unit5, 1) == std::vector<cnf::Var>{5});

  CHECK_THROWS_AS(choose_var_subset(f, 0), UsageError);
}

TEST_CASE("partition") {
  const auto f = worked::formula();
  const auto all = partition(f, {1, 2, 3, 4});
  CHECK(all.c1.size() == 4);
  CHECK(all.c2.empty());
  CHECK(all.c3.empty());
  const auto none = partition(f, {});
  CHECK(none.c3.size() == 4);
  const auto xw = partition(f, {4, 1});
  CHECK(xw.c1.empty());
  CHECK(xw.c2.size() == 4);
  CHECK(xw.c3.empty());
  CHECK(xw.x1 == std::vector<cnf::Var>{1, 4});
  CHECK(xw.x2 == std::vector<cnf::Var>{2, 3});
}

TEST_CASE("partition is a true partition") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_kcnf(10, 30, 3, rng);
    std::vector<cnf::Var> x1;
    std::bernoulli_distribution pick(0.4);
    for (cnf::Var v = 1; v <= 10; ++v) {
      if (pick(rng)) x1.push_back(v);
    }
    const auto p = partition(f, x1);
    CHECK(p.c1.size() + p.c2.size() + p.c3.size() == f.num_clauses());
    for (auto v : cnf::formula_vars(f)) {
      const bool a = std::binary_search(p.x1.begin(), p.x1.end(), v);
      const bool b = std::binary_search(p.x2.begin(), p.x2.end(), v);
      CHECK(a != b);
    }
    auto in_x1 = [&](cnf::Var v) { return std::binary_search(p.x1.begin(), p.x1.end(), v); };
    for (const auto& c : p.c1) {
      for (auto v : c.vars()) CHECK(in_x1(v));
    }
    for (const auto& c : p.c3) {
      for (auto v : c.vars()) CHECK_FALSE(in_x1(v));
    }
    for (const auto& c : p.c2) {
      const auto vs = c.vars();
      CHECK(std::any_of(vs.begin(), vs.end(), in_x1));
      CHECK_FALSE(std::all_of(vs.begin(), vs.end(), in_x1));
    }
  }
}

TEST_CASE("enumerate_c1_assignments") {
  CHECK(enumerate_c1_assignments({}, {1, 2}).size() == 4);
  CHECK(enumerate_c1_assignments({Clause::of({1}), Clause::of({-1})}, {1}).empty());
  const auto l = enumerate_c1_assignments({Clause::of({1, -2})}, {1, 2});
  CHECK(l == std::vector<PartialAssignment>{{{1, false}, {2, false}},
                                            {{1, true}, {2, false}},
                                            {{1, true}, {2, true}}});
  CHECK_THROWS_AS(enumerate_c1_assignments({Clause::of({3})}, {1}), UsageError);
  std::vector<cnf::Var> wide(21);
  for (cnf::Var i = 0; i < 21; ++i) wide[i] = i + 1;
  CHECK_THROWS_AS(enumerate_c1_assignments({}, wide), CapacityError);
}

TEST_CASE("var partition decomposition") {
  SUBCASE("small formula is a single leaf") {
    const auto tree = var_partition_decompose(worked::formula(), 4);
    REQUIRE(tree.nodes().size() == 1);
    CHECK(tree.node(0).status == NodeStatus::solvable);
  }
  SUBCASE("contradictory units inside one block") {
    const cnf::CnfFormula f({Clause::of({1}), Clause::of({-1}), Clause::of({2, 3, 4}),
                             Clause::of({4, 5, 6})});
    const auto tree = var_partition_decompose(f, 2);
    CHECK(tree.all_dead());
    CHECK(solve_and_gather(tree).empty());
  }
  SUBCASE("empty formula") {
    const auto tree = var_partition_decompose(cnf::CnfFormula({}, {1, 2}), 3);
    CHECK(tree.node(0).status == NodeStatus::trivial);
    CHECK(solve_and_gather(tree).size() == 4);
  }
  CHECK_THROWS_AS(var_partition_decompose(worked::formula(), 0), UsageError);
}

TEST_CASE("both strategies agree with brute force") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<unsigned> nd(4, 12);
    const unsigned n = nd(rng);
    std::uniform_int_distribution<std::size_t> md(n, 4 * n);
    const auto f = oracle::random_kcnf(n, md(rng), 3, rng);
    const auto expected = oracle::brute_force_solutions(f);

    std::uniform_int_distribution<std::size_t> pd(0, f.num_clauses() - 1);
    const auto pivot_tree = clause_pivot_tree(f, pd(rng));
    REQUIRE(solve_and_gather(pivot_tree) == expected);
    if (pivot_tree.all_dead()) CHECK(expected.empty());

    for (std::size_t n0 : {1, 3, 4}) {
      const auto tree = var_partition_decompose(f, n0);
      for (auto id : tree.solvable_leaves()) {
        CHECK(cnf::formula_vars(*tree.node(id).item.formula).size() <= n0);
      }
      for (const auto& node : tree.nodes()) {
        if (node.parent) CHECK(node.item.depth == tree.node(*node.parent).item.depth + 1);
        if (node.item.formula) {
          for (auto v : node.item.prefix.vars()) {
            CHECK_FALSE(std::binary_search(node.item.formula->universe().begin(),
                                           node.item.formula->universe().end(), v));
          }
        }
      }
      REQUIRE(solve_and_gather(tree) == expected);
    }
  }
}

TEST_CASE("tree serialization round trips") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = oracle::random_kcnf(9, 30, 3, rng);
    const auto a = var_partition_decompose(f, 3);
    CHECK(parse_tree_string(serialize_tree(a)) == a);
    const auto b = clause_pivot_tree(f, 2);
    CHECK(parse_tree_string(serialize_tree(b)) == b);
  }
  CHECK_THROWS_AS(parse_tree_string("tree other nodes 0\n"), ParseError);
  CHECK_THROWS_AS(parse_tree_string("tree clause-pivot nodes 1\nroot vars 0\np cnf 0 0\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_tree_string("tree clause-pivot nodes 0\nroot vars 1 0\np cnf 1 1\n2 0\n"),
                  ParseError);
}

TEST_CASE("cost estimate") {
  const auto a = estimate_cost(12, 4, 2, 1);
  CHECK(a.depth == 3);
  CHECK(a.remainder == 0);
  CHECK(a.total_time == 11);
  const auto b = estimate_cost(10, 4, 3, 0.5);
  CHECK(b.depth == 2);
  CHECK(b.remainder == 2);
  CHECK(b.total_time == 10);
  const auto c = estimate_cost(3, 5, 7, 9);
  CHECK(c.depth == 0);
  CHECK(c.total_time == 1);
  CHECK_THROWS_AS(estimate_cost(3, 0, 1, 1), UsageError);
  CHECK_THROWS_AS(estimate_cost(3, 1, -1, 1), UsageError);
}
