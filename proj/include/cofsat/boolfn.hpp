#pragma once

// Dense truth-table algebra over B0 = {0,1} for small variable counts, with
// cofactor sets, generalized cofactor expansion over arbitrary base sets and
// the consistency tests for f = 1 derived from it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cofsat::boolfn {

/// Position of a variable in the ordered universe of a TruthTable.
struct VarId {
  unsigned index = 0;
  friend bool operator==(VarId, VarId) = default;
};

/// An input point; bit j holds the value of variable j.
using Point = std::uint32_t;

/// Boolean function f : B0^n -> B0 stored as 2^n bits, point p at bit p.
class TruthTable {
 public:
  static constexpr unsigned kMaxVars = 16;

  TruthTable() : TruthTable(0) {}
  /// Constant-0 function over `num_vars` variables.
  explicit TruthTable(unsigned num_vars);

  static TruthTable constant(unsigned num_vars, bool value);
  static TruthTable variable(unsigned num_vars, VarId var);
  static TruthTable literal(unsigned num_vars, VarId var, bool positive);
  /// Builds from explicit bits; `bits.size()` must equal 2^num_vars.
  static TruthTable from_bits(unsigned num_vars, std::span<const bool> bits);
  /// Builds from the low 2^num_vars bits of `value` (num_vars <= 6).
  static TruthTable from_word(unsigned num_vars, std::uint64_t value);
  /// Single-point function selecting `point`.
  static TruthTable minterm(unsigned num_vars, Point point);

  unsigned num_vars() const noexcept { return num_vars_; }
  std::size_t num_points() const noexcept { return std::size_t{1} << num_vars_; }

  bool get(Point p) const;
  void set(Point p, bool value);
  bool operator[](Point p) const { return get(p); }

  TruthTable operator&(const TruthTable& o) const;
  TruthTable operator|(const TruthTable& o) const;
  TruthTable operator^(const TruthTable& o) const;
  TruthTable operator~() const;
  TruthTable& operator&=(const TruthTable& o);
  TruthTable& operator|=(const TruthTable& o);
  TruthTable& operator^=(const TruthTable& o);

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

  /// f(x) <= h(x) at every point.
  bool leq(const TruthTable& o) const;
  bool is_zero() const;
  bool is_one() const;
  /// |supp f|, the number of points where f = 1.
  std::size_t support_size() const;
  /// Smallest point of supp f, if any.
  std::optional<Point> first_one() const;
  std::vector<Point> support() const;

  /// f with `var` fixed to `value`; the result no longer depends on `var`.
  TruthTable restrict(VarId var, bool value) const;

  /// Bits as '0'/'1' characters, point 0 first.
  std::string to_string() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

 private:
  void require_same_universe(const TruthTable& o) const;
  void clear_padding();

  unsigned num_vars_;
  std::vector<std::uint64_t> words_;
};

/// Xi(f, g) as the interval [f g, f + g'].
struct CofactorInterval {
  TruthTable lower;
  TruthTable upper;

  bool contains(const TruthTable& alpha) const {
    return lower.leq(alpha) && alpha.leq(upper);
  }
};

/// Nonempty list of nonzero functions over a common universe.
class BaseSet {
 public:
  explicit BaseSet(std::vector<TruthTable> members);

  const std::vector<TruthTable>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  const TruthTable& operator[](std::size_t i) const { return members_[i]; }
  unsigned num_vars() const noexcept { return members_.front().num_vars(); }
  /// OR of all members.
  const TruthTable& cover() const noexcept { return cover_; }

  /// {g, g'}.
  static BaseSet complementary_pair(const TruthTable& g);
  /// All 2^n minterms in ascending point order.
  static BaseSet minterms(unsigned num_vars);

 private:
  std::vector<TruthTable> members_;
  TruthTable cover_;
};

CofactorInterval cofactor_interval(const TruthTable& f, const TruthTable& g);
bool cofactor_member(const TruthTable& alpha, const TruthTable& f,
                     const TruthTable& g);
/// f g + p g'.
TruthTable cofactor_sample(const TruthTable& f, const TruthTable& g,
                           const TruthTable& p);

/// Sum of alpha_i g_i. Requires f <= cover(G) and alpha_i in Xi(f, g_i); the
/// result then equals f for every admissible choice of the alphas.
TruthTable expand(const TruthTable& f, const BaseSet& base,
                  std::span<const TruthTable> alphas);
/// Same sum without the f <= cover check; yields f . cover(G).
TruthTable expand_unchecked(const TruthTable& f, const BaseSet& base,
                            std::span<const TruthTable> alphas);
/// Lower-endpoint cofactors f g_i for every member.
std::vector<TruthTable> lower_cofactors(const TruthTable& f,
                                        const BaseSet& base);

bool is_orthonormal(const BaseSet& phi);

/// Literals forced by t = 1 when t is a product term.
struct Cube {
  std::uint32_t care = 0;   // bit j set: variable j appears in the term
  std::uint32_t value = 0;  // its forced value, for set bits of `care`
};

/// Returns the cube of `t` if t is a nonzero conjunction of literals.
std::optional<Cube> as_product_term(const TruthTable& t);
/// f / t: f with the partial assignment q(t) substituted.
TruthTable quotient(const TruthTable& f, const TruthTable& term);

struct DualExpansion {
  TruthTable sum_form;      // sum of (f/t_i) t_i
  TruthTable product_form;  // product of [(f/t_i) + t_i']
};

DualExpansion on_term_expansions(const TruthTable& f, const BaseSet& terms);

enum class IdentityOp { sum, product, complement, exclusive_or };

/// Right-hand side of the expansion identity for `op` built from
/// lower-endpoint cofactors; compare against f+h, fh, f' or f^h.
/// `h` is ignored for `complement`, which requires cover(G) = 1.
TruthTable expansion_identity(const TruthTable& f, const TruthTable& h,
                              const BaseSet& base, IdentityOp op);

/// f(h_1, ..., h_n) evaluated as sum_j f(beta_1j, ..., beta_nj) phi_j with
/// lower-endpoint beta_ij = h_i phi_j. Phi must be orthonormal.
TruthTable compose_via_expansion(const TruthTable& f,
                                 std::span<const TruthTable> h,
                                 const BaseSet& phi);
/// As above with caller-chosen cofactors; betas[i][j] must lie in
/// Xi(h_i, phi_j).
TruthTable compose_via_expansion(
    const TruthTable& f, std::span<const TruthTable> h,
    const std::vector<std::vector<TruthTable>>& betas, const BaseSet& phi);
/// Direct pointwise f(h_1(x), ..., h_n(x)).
TruthTable compose(const TruthTable& f, std::span<const TruthTable> h);

struct Verdict {
  bool sat = false;
  std::optional<std::size_t> witness_index;
  std::optional<Point> witness_point;
};

/// Decides f = 1 by searching for i, x with alpha_i(x) = g_i(x) = 1.
/// Requires f <= cover(G).
Verdict consistency_over_base(const TruthTable& f, const BaseSet& base);
Verdict consistency_over_base(const TruthTable& f, const BaseSet& base,
                              std::span<const TruthTable> alphas);

struct OnVerdict {
  bool sat = false;
  std::optional<std::size_t> witness_index;
  std::optional<Point> witness_point;
  /// Every satisfying point of f lies in exactly one phi_i.
  bool exactly_one = true;
};

OnVerdict consistency_over_on(const TruthTable& f, const BaseSet& phi);

/// Parses expressions over x0..x15: postfix ' (complement), juxtaposition or
/// * (and), ^ (xor), + (or), constants 0/1 and parentheses. Binding, tightest
/// first: ', and, ^, +.
TruthTable parse_function(std::string_view text, unsigned num_vars);

}  // namespace cofsat::boolfn
