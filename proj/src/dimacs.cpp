#include <charconv>
#include <istream>
#include <numeric>
#include <sstream>

#include "cofsat/cnf.hpp"
#include "cofsat/errors.hpp"

namespace cofsat::cnf {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<long long> to_int(std::string_view tok) {
  long long v = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || first == ptr) {
    return std::nullopt;
  }
  return v;
}

}  // namespace

DimacsParse parse_dimacs(std::istream& in) {
  DimacsParse result;
  std::optional<long long> num_vars;
  long long declared_clauses = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  std::size_t clause_lines_read = 0;
  std::size_t line_no = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    const std::string_view head = tokens.front();
    if (head.front() == 'c') continue;
    if (head == "%") break;  // SATLIB end marker
    if (head == "p") {
      if (num_vars) throw ParseError(line_no, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "cnf") {
        throw ParseError(line_no, "malformed problem line, expected 'p cnf <vars> <clauses>'");
      }
      const auto nv = to_int(tokens[2]);
      const auto nc = to_int(tokens[3]);
      if (!nv || !nc || *nv < 0 || *nc < 0 || *nv > (1LL << 30)) {
        throw ParseError(line_no, "malformed problem line counts");
      }
      num_vars = *nv;
      declared_clauses = *nc;
      continue;
    }
    if (!num_vars) throw ParseError(line_no, "clause data before 'p cnf' header");
    for (const auto tok : tokens) {
      const auto v = to_int(tok);
      if (!v) {
        throw ParseError(line_no, "malformed literal '" + std::string(tok) + "'");
      }
      if (*v == 0) {
        ++clause_lines_read;
        if (auto c = Clause::make(pending)) {
          clauses.push_back(std::move(*c));
        } else {
          result.warnings.push_back("line " + std::to_string(pending_line ? pending_line : line_no) +
                                    ": tautological clause removed");
        }
        pending.clear();
        pending_line = 0;
        continue;
      }
      if (*v > *num_vars || -*v > *num_vars) {
        throw ParseError(line_no, "literal " + std::string(tok) +
                                      " out of range for " +
                                      std::to_string(*num_vars) + " variables");
      }
      if (pending.empty()) pending_line = line_no;
      pending.push_back(Literal::from_dimacs(static_cast<int>(*v)));
    }
  }
  if (!num_vars) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(pending_line, "unterminated clause");
  if (static_cast<long long>(clause_lines_read) != declared_clauses) {
    result.warnings.push_back("header declares " + std::to_string(declared_clauses) +
                              " clauses, found " + std::to_string(clause_lines_read));
  }

  const std::size_t before = clauses.size();
  std::vector<Var> universe(static_cast<std::size_t>(*num_vars));
  std::iota(universe.begin(), universe.end(), Var{1});
  result.formula = CnfFormula(std::move(clauses), std::move(universe));
  if (const std::size_t dups = before - result.formula.num_clauses(); dups > 0) {
    result.warnings.push_back(std::to_string(dups) + " duplicate clause(s) removed");
  }
  return result;
}

DimacsParse parse_dimacs_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::string emit_dimacs(const CnfFormula& f) {
  const Var max_var = f.universe().empty() ? 0 : f.universe().back();
  std::string out = "p cnf " + std::to_string(max_var) + " " +
                    std::to_string(f.num_clauses()) + "\n";
  for (const auto& c : f.clauses()) {
    for (const auto& l : c) out += std::to_string(l.to_dimacs()) + " ";
    out += "0\n";
  }
  return out;
}

}  // namespace cofsat::cnf
