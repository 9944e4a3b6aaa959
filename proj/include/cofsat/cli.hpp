#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cofsat/allsat.hpp"
#include "cofsat/decompose.hpp"

namespace cofsat::cli {

enum class Mode { sat, allsat, count, decompose };
enum class OutputFormat { text, json };

inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;

struct RunConfig {
  std::string input;
  Mode mode = Mode::sat;
  decompose::Strategy strategy = decompose::Strategy::var_partition;
  std::size_t pivot_clause = 0;
  std::size_t n0 = 8;
  std::size_t jobs = 1;
  OutputFormat format = OutputFormat::text;
  bool verify = false;
};

/// Solves every solvable leaf on `jobs` worker threads. Results are in
/// tree.solvable_leaves() order regardless of scheduling; the first worker
/// exception is rethrown after all workers stop.
std::vector<allsat::LeafResult> parallel_leaf_solve(
    const decompose::DecompositionTree& tree, std::size_t jobs);

/// Runs the whole pipeline on config.input and returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);
/// Same, reading DIMACS from `input` instead of a file.
int run(const RunConfig& config, std::istream& input, std::ostream& out,
        std::ostream& err);

}  // namespace cofsat::cli
