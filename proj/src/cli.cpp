#include "cofsat/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "cofsat/errors.hpp"

namespace cofsat::cli {

namespace {

using decompose::DecompositionTree;
using nlohmann::json;

std::shared_ptr<spdlog::logger> logger() {
  static const auto log = [] {
    auto l = spdlog::stderr_logger_mt("cofsat");
    l->set_pattern("c [%l] %v");
    const char* level = std::getenv("COFSAT_LOG");
    l->set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
    return l;
  }();
  return log;
}

DecompositionTree build_tree(const RunConfig& cfg, const cnf::CnfFormula& f) {
  if (cfg.strategy == decompose::Strategy::clause_pivot && f.num_clauses() > 0) {
    return decompose::clause_pivot_tree(f, cfg.pivot_clause);
  }
  return decompose::var_partition_decompose(f, cfg.n0);
}

json tree_json(const DecompositionTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes()) {
    json node = {{"id", n.id},
                 {"parent", n.parent ? json(*n.parent) : json(nullptr)},
                 {"depth", n.item.depth},
                 {"status", decompose::to_string(n.status)},
                 {"prefix", n.item.prefix.to_dimacs()}};
    if (n.item.formula) {
      json clauses = json::array();
      for (const auto& c : n.item.formula->clauses()) {
        json lits = json::array();
        for (const auto& l : c) lits.push_back(l.to_dimacs());
        clauses.push_back(std::move(lits));
      }
      node["vars"] = n.item.formula->universe();
      node["clauses"] = std::move(clauses);
    }
    nodes.push_back(std::move(node));
  }
  return {{"strategy", tree.strategy() == decompose::Strategy::clause_pivot
                           ? "clause-pivot"
                           : "var-partition"},
          {"nodes", std::move(nodes)}};
}

json rows_json(const cnf::SolutionSet& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    rows.push_back(s.row_assignment(i).to_dimacs());
  }
  return rows;
}

// First solution in leaf order; root variables left free are set to 0.
std::optional<cnf::PartialAssignment> first_witness(
    const DecompositionTree& tree, const std::vector<allsat::LeafResult>& results) {
  for (const auto& r : results) {
    if (r.solutions.empty()) continue;
    auto w = tree.node(r.node_id).item.prefix.merged(r.solutions.row_assignment(0));
    for (cnf::Var v : tree.root().universe()) {
      if (!w.binds(v)) w.bind(v, false);
    }
    return w;
  }
  return std::nullopt;
}

bool satisfies(const cnf::CnfFormula& f, const cnf::PartialAssignment& w) {
  return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const cnf::Clause& c) {
    return std::any_of(c.begin(), c.end(), [&](const cnf::Literal& l) {
      return w.lookup(l.var()) == l.positive();
    });
  });
}

int run_formula(const RunConfig& cfg, const cnf::CnfFormula& f, std::ostream& out,
                std::ostream& err) {
  const auto log = logger();
  const auto tree = build_tree(cfg, f);
  log->info("decomposed into {} nodes, {} solvable leaves", tree.nodes().size(),
            tree.solvable_leaves().size());

  if (cfg.mode == Mode::decompose && !cfg.verify) {
    if (cfg.format == OutputFormat::json) {
      out << json{{"status", "DECOMPOSED"}, {"count", nullptr}, {"tree", tree_json(tree)}}
                 .dump()
          << "\n";
    } else {
      out << decompose::serialize_tree(tree);
    }
    return kExitOk;
  }

  const auto results = parallel_leaf_solve(tree, cfg.jobs);
  const bool need_all = cfg.mode != Mode::sat || cfg.verify;
  std::optional<cnf::SolutionSet> all;
  if (need_all) all = allsat::gather(tree, results);

  if (cfg.verify) {
    if (f.universe().size() > boolfn::TruthTable::kMaxVars) {
      log->warn("verify skipped: {} variables exceed the oracle cap", f.universe().size());
    } else {
      const auto oracle = allsat::truth_table_solutions(f);
      if (oracle != *all) {
        err << "verify: gathered " << all->size() << " solutions, oracle has "
            << oracle.size() << "\n";
        return kExitError;
      }
      log->info("verify: {} solutions agree with the truth-table oracle", oracle.size());
    }
  }

  const bool json_out = cfg.format == OutputFormat::json;
  switch (cfg.mode) {
    case Mode::sat: {
      const auto w = first_witness(tree, results);
      if (w && !satisfies(f, *w)) {
        err << "internal error: witness does not satisfy the formula\n";
        return kExitError;
      }
      if (json_out) {
        json j = {{"status", w ? "SATISFIABLE" : "UNSATISFIABLE"}, {"count", nullptr}};
        if (w) j["solutions"] = json::array({w->to_dimacs()});
        out << j.dump() << "\n";
      } else if (w) {
        out << "s SATISFIABLE\nv";
        for (int l : w->to_dimacs()) out << ' ' << l;
        out << " 0\n";
      } else {
        out << "s UNSATISFIABLE\n";
      }
      return w ? kExitSat : kExitUnsat;
    }
    case Mode::allsat:
    case Mode::count: {
      const bool sat = !all->empty();
      if (json_out) {
        json j = {{"status", sat ? "SATISFIABLE" : "UNSATISFIABLE"}, {"count", all->size()}};
        if (cfg.mode == Mode::allsat) j["solutions"] = rows_json(*all);
        out << j.dump() << "\n";
      } else if (cfg.mode == Mode::allsat) {
        out << allsat::format_solutions(*all);
      } else {
        out << all->size() << "\n";
      }
      return sat ? kExitSat : kExitUnsat;
    }
    case Mode::decompose:
      if (json_out) {
        out << json{{"status", "DECOMPOSED"}, {"count", all->size()}, {"tree", tree_json(tree)}}
                   .dump()
            << "\n";
      } else {
        out << decompose::serialize_tree(tree);
      }
      return kExitOk;
  }
  return kExitError;
}

}  // namespace

std::vector<allsat::LeafResult> parallel_leaf_solve(const DecompositionTree& tree,
                                                    std::size_t jobs) {
  if (jobs < 1) throw UsageError("jobs must be at least 1");
  const auto leaves = tree.solvable_leaves();
  std::vector<std::optional<allsat::LeafResult>> slots(leaves.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load()) {
      const std::size_t k = next.fetch_add(1);
      if (k >= leaves.size()) return;
      try {
        slots[k] = allsat::solve_leaf(tree, leaves[k]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
      }
    }
  };

  const std::size_t workers = std::min(jobs, leaves.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<allsat::LeafResult> results;
  results.reserve(slots.size());
  for (auto& s : slots) results.push_back(std::move(*s));
  return results;
}

int run(const RunConfig& config, std::istream& input, std::ostream& out,
        std::ostream& err) {
  const std::string source = config.input.empty() ? "<input>" : config.input;
  try {
    if (config.n0 < 1) throw UsageError("--n0 must be at least 1");
    if (config.jobs < 1) throw UsageError("--jobs must be at least 1");
    auto parsed = cnf::parse_dimacs(input);
    for (const auto& w : parsed.warnings) logger()->warn("{}: {}", source, w);
    return run_formula(config, parsed.formula, out, err);
  } catch (const ParseError& e) {
    err << "error: " << source << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ifstream in(config.input);
  if (!in) {
    err << "error: cannot read " << config.input << "\n";
    return kExitError;
  }
  return run(config, in, out, err);
}

}  // namespace cofsat::cli
