#include <cctype>

#include "cofsat/boolfn.hpp"
#include "cofsat/errors.hpp"

namespace cofsat::boolfn {

namespace {

// Recursive descent over:
//   sum     := xor ('+' xor)*
//   xor     := product ('^' product)*
//   product := postfix (['*'] postfix)*
//   postfix := atom '\''*
//   atom    := 'x' digits | '0' | '1' | '(' sum ')'
class FunctionParser {
 public:
  FunctionParser(std::string_view text, unsigned num_vars)
      : text_(text), num_vars_(num_vars) {}

  TruthTable parse() {
    TruthTable t = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(1, "column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool starts_atom() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == 'x' || c == '0' || c == '1' || c == '(' || c == '*';
  }

  TruthTable sum() {
    TruthTable t = exclusive_or();
    while (accept('+')) t |= exclusive_or();
    return t;
  }

  TruthTable exclusive_or() {
    TruthTable t = product();
    while (accept('^')) t ^= product();
    return t;
  }

  TruthTable product() {
    TruthTable t = postfix();
    while (starts_atom()) {
      accept('*');
      t &= postfix();
    }
    return t;
  }

  TruthTable postfix() {
    TruthTable t = atom();
    while (accept('\'')) t = ~t;
    return t;
  }

  TruthTable atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      TruthTable t = sum();
      if (!accept(')')) fail("expected ')'");
      return t;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      return TruthTable::constant(num_vars_, c == '1');
    }
    if (c == 'x') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (start == pos_) fail("expected a variable index after 'x'");
      const unsigned index = static_cast<unsigned>(
          std::stoul(std::string(text_.substr(start, pos_ - start))));
      if (index >= num_vars_) {
        fail("x" + std::to_string(index) + " outside a universe of " +
             std::to_string(num_vars_) + " variables");
      }
      return TruthTable::variable(num_vars_, VarId{index});
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  unsigned num_vars_;
  std::size_t pos_ = 0;
};

}  // namespace

TruthTable parse_function(std::string_view text, unsigned num_vars) {
  return FunctionParser(text, num_vars).parse();
}

}  // namespace cofsat::boolfn
