#include <charconv>
#include <istream>
#include <sstream>

#include "cofsat/decompose.hpp"
#include "cofsat/errors.hpp"

namespace cofsat::decompose {

namespace {

const char* strategy_name(Strategy s) {
  return s == Strategy::clause_pivot ? "clause-pivot" : "var-partition";
}

std::string join_vars(const std::vector<Var>& vars) {
  std::string s;
  for (Var v : vars) s += std::to_string(v) + " ";
  return s + "0";
}

std::string formula_block(const CnfFormula& f) {
  return "vars " + join_vars(f.universe()) + "\n" + cnf::emit_dimacs(f);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == 'c') continue;
      std::istringstream ls(line);
      std::vector<std::string> tokens;
      for (std::string t; ls >> t;) tokens.push_back(t);
      return tokens;
    }
    throw ParseError(line_ + 1, "unexpected end of tree");
  }

  bool at_end() {
    while (in_.peek() == '\n' || in_.peek() == 'c') {
      if (in_.peek() == '\n') {
        in_.get();
        ++line_;
      } else {
        std::string skip;
        std::getline(in_, skip);
        ++line_;
      }
    }
    return in_.peek() == std::char_traits<char>::eof();
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, what);
  }

  long long integer(const std::string& tok) const {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      fail("expected an integer, got '" + tok + "'");
    }
    return v;
  }

  void expect(const std::vector<std::string>& t, std::size_t i,
              const char* word) const {
    if (i >= t.size() || t[i] != word) fail(std::string("expected '") + word + "'");
  }

  /// Reads zero-terminated integers starting at t[i]; advances i past the 0.
  std::vector<long long> zero_terminated(const std::vector<std::string>& t,
                                         std::size_t& i) const {
    std::vector<long long> out;
    while (true) {
      if (i >= t.size()) fail("list is missing its terminating 0");
      const long long v = integer(t[i++]);
      if (v == 0) return out;
      out.push_back(v);
    }
  }

  std::vector<Var> var_list(const std::vector<std::string>& t, std::size_t& i) const {
    std::vector<Var> vars;
    for (long long v : zero_terminated(t, i)) {
      if (v < 0) fail("negative variable in vars list");
      vars.push_back(static_cast<Var>(v));
    }
    return vars;
  }

  CnfFormula formula(std::vector<Var> universe) {
    const auto header = next();
    if (header.size() != 4 || header[0] != "p" || header[1] != "cnf") {
      fail("expected 'p cnf' block header");
    }
    const long long count = integer(header[3]);
    std::vector<cnf::Clause> clauses;
    for (long long k = 0; k < count; ++k) {
      const auto t = next();
      std::size_t i = 0;
      std::vector<cnf::Literal> lits;
      for (long long l : zero_terminated(t, i)) {
        lits.push_back(cnf::Literal::from_dimacs(static_cast<int>(l)));
      }
      if (i != t.size()) fail("trailing tokens after clause");
      auto c = cnf::Clause::make(lits);
      if (!c) fail("tautological clause in tree block");
      clauses.push_back(std::move(*c));
    }
    try {
      return CnfFormula(std::move(clauses), std::move(universe));
    } catch (const UsageError& e) {
      fail(e.what());
    }
  }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

}  // namespace

std::string serialize_tree(const DecompositionTree& tree) {
  std::string out = "c cofsat decomposition tree\n";
  out += std::string("tree ") + strategy_name(tree.strategy()) + " nodes " +
         std::to_string(tree.nodes().size()) + "\n";
  out += "root " + formula_block(tree.root());
  for (const auto& n : tree.nodes()) {
    out += "node " + std::to_string(n.id) + " parent " +
           (n.parent ? std::to_string(*n.parent) : std::string("-")) +
           " depth " + std::to_string(n.item.depth) + " status " +
           to_string(n.status) + " prefix ";
    for (int l : n.item.prefix.to_dimacs()) out += std::to_string(l) + " ";
    out += "0";
    if (n.item.formula) {
      out += " " + formula_block(*n.item.formula);
    } else {
      out += "\n";
    }
  }
  return out;
}

DecompositionTree parse_tree(std::istream& in) {
  LineReader r(in);
  const auto head = r.next();
  if (head.size() != 4 || head[0] != "tree" || head[2] != "nodes") {
    r.fail("expected 'tree <strategy> nodes <count>'");
  }
  Strategy strategy;
  if (head[1] == "clause-pivot") {
    strategy = Strategy::clause_pivot;
  } else if (head[1] == "var-partition") {
    strategy = Strategy::var_partition;
  } else {
    r.fail("unknown strategy '" + head[1] + "'");
  }
  const long long count = r.integer(head[3]);

  auto root_line = r.next();
  std::size_t i = 0;
  r.expect(root_line, i++, "root");
  r.expect(root_line, i++, "vars");
  auto root_vars = r.var_list(root_line, i);
  DecompositionTree tree(strategy, r.formula(std::move(root_vars)));

  for (long long k = 0; k < count; ++k) {
    const auto t = r.next();
    i = 0;
    r.expect(t, i++, "node");
    if (r.integer(t.at(i++)) != k) r.fail("node ids must be consecutive from 0");
    r.expect(t, i++, "parent");
    if (i >= t.size()) r.fail("missing parent id");
    std::optional<std::size_t> parent;
    if (t[i] != "-") parent = static_cast<std::size_t>(r.integer(t[i]));
    ++i;
    r.expect(t, i++, "depth");
    if (i >= t.size()) r.fail("missing depth");
    WorkItem item;
    item.depth = static_cast<std::size_t>(r.integer(t[i++]));
    r.expect(t, i++, "status");
    if (i >= t.size()) r.fail("missing status");
    const auto status = node_status_from_string(t[i++]);
    if (!status) r.fail("unknown node status");
    r.expect(t, i++, "prefix");
    for (long long l : r.zero_terminated(t, i)) {
      const auto lit = cnf::Literal::from_dimacs(static_cast<int>(l));
      item.prefix.bind(lit.var(), lit.positive());
    }
    if (i < t.size()) {
      r.expect(t, i++, "vars");
      auto vars = r.var_list(t, i);
      if (i != t.size()) r.fail("trailing tokens after node");
      item.formula = r.formula(std::move(vars));
    }
    try {
      tree.add_node(parent, std::move(item), *status);
    } catch (const UsageError& e) {
      r.fail(e.what());
    }
  }
  if (!r.at_end()) r.fail("trailing content after the last node");
  return tree;
}

DecompositionTree parse_tree_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tree(in);
}

}  // namespace cofsat::decompose
