#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cofsat/boolfn.hpp"
#include "cofsat/cli.hpp"
#include "cofsat/errors.hpp"

int main(int argc, char** argv) {
  using namespace cofsat;
  CLI::App app{"cofsat: CNF satisfiability and all-solutions by cofactor decomposition"};

  cli::RunConfig cfg;
  std::string eval_expr;
  unsigned eval_vars = 4;

  const std::map<std::string, cli::Mode> modes{{"sat", cli::Mode::sat},
                                               {"allsat", cli::Mode::allsat},
                                               {"count", cli::Mode::count},
                                               {"decompose", cli::Mode::decompose}};
  const std::map<std::string, decompose::Strategy> pivots{
      {"clause", decompose::Strategy::clause_pivot},
      {"vars", decompose::Strategy::var_partition}};
  const std::map<std::string, cli::OutputFormat> formats{{"text", cli::OutputFormat::text},
                                                         {"json", cli::OutputFormat::json}};

  app.add_option("-i,--input", cfg.input, "DIMACS CNF file");
  app.add_option("--mode", cfg.mode, "sat | allsat | count | decompose")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
      ->option_text("MODE");
  app.add_option("--pivot", cfg.strategy, "clause | vars")
      ->transform(CLI::CheckedTransformer(pivots, CLI::ignore_case))
      ->option_text("PIVOT");
  app.add_option("--pivot-clause", cfg.pivot_clause, "0-based index of the pivot clause");
  app.add_option("--n0", cfg.n0, "leaf variable threshold")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "parallel leaf workers")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "text | json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->option_text("FORMAT");
  app.add_flag("--verify", cfg.verify, "cross-check against the truth-table oracle");
  app.add_option("--eval", eval_expr, "debug: print the truth table of an expression over x0..x15");
  app.add_option("--eval-vars", eval_vars, "variable count for --eval");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitError;
  }

  if (!eval_expr.empty()) {
    try {
      const auto t = boolfn::parse_function(eval_expr, eval_vars);
      std::cout << "table " << t.to_string() << "\nsupport " << t.support_size() << "\n";
      return cli::kExitOk;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cli::kExitError;
    }
  }
  if (cfg.input.empty()) {
    std::cerr << "error: --input is required\n";
    return cli::kExitError;
  }
  return cli::run(cfg, std::cout, std::cerr);
}
