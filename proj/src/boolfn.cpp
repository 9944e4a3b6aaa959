#include "cofsat/boolfn.hpp"

#include <algorithm>
#include <bit>

#include "cofsat/errors.hpp"

namespace cofsat::boolfn {

namespace {

std::size_t word_count(unsigned num_vars) {
  return num_vars <= 6 ? 1 : std::size_t{1} << (num_vars - 6);
}

std::uint64_t padding_mask(unsigned num_vars) {
  return num_vars >= 6 ? ~std::uint64_t{0}
                       : (std::uint64_t{1} << (1u << num_vars)) - 1;
}

void require_nonzero(const TruthTable& g) {
  if (g.is_zero()) {
    throw DomainError("cofactor relative to the zero function is undefined");
  }
}

}  // namespace

TruthTable::TruthTable(unsigned num_vars)
    : num_vars_(num_vars), words_() {
  if (num_vars > kMaxVars) {
    throw CapacityError("truth tables are limited to " +
                        std::to_string(kMaxVars) + " variables");
  }
  words_.assign(word_count(num_vars), 0);
}

TruthTable TruthTable::constant(unsigned num_vars, bool value) {
  TruthTable t(num_vars);
  if (value) {
    std::fill(t.words_.begin(), t.words_.end(), ~std::uint64_t{0});
    t.clear_padding();
  }
  return t;
}

TruthTable TruthTable::variable(unsigned num_vars, VarId var) {
  return literal(num_vars, var, true);
}

TruthTable TruthTable::literal(unsigned num_vars, VarId var, bool positive) {
  if (var.index >= num_vars) {
    throw UsageError("variable x" + std::to_string(var.index) +
                     " outside a universe of " + std::to_string(num_vars));
  }
  TruthTable t(num_vars);
  for (Point p = 0; p < t.num_points(); ++p) {
    t.set(p, (((p >> var.index) & 1u) != 0) == positive);
  }
  return t;
}

TruthTable TruthTable::from_bits(unsigned num_vars, std::span<const bool> bits) {
  TruthTable t(num_vars);
  if (bits.size() != t.num_points()) {
    throw UsageError("expected " + std::to_string(t.num_points()) +
                     " bits, got " + std::to_string(bits.size()));
  }
  for (Point p = 0; p < bits.size(); ++p) t.set(p, bits[p]);
  return t;
}

TruthTable TruthTable::from_word(unsigned num_vars, std::uint64_t value) {
  if (num_vars > 6) throw UsageError("from_word supports at most 6 variables");
  TruthTable t(num_vars);
  t.words_[0] = value;
  t.clear_padding();
  return t;
}

TruthTable TruthTable::minterm(unsigned num_vars, Point point) {
  TruthTable t(num_vars);
  t.set(point, true);
  return t;
}

bool TruthTable::get(Point p) const {
  if (p >= num_points()) throw UsageError("point outside the truth table");
  return ((words_[p >> 6] >> (p & 63)) & 1u) != 0;
}

void TruthTable::set(Point p, bool value) {
  if (p >= num_points()) throw UsageError("point outside the truth table");
  const std::uint64_t bit = std::uint64_t{1} << (p & 63);
  if (value) {
    words_[p >> 6] |= bit;
  } else {
    words_[p >> 6] &= ~bit;
  }
}

void TruthTable::require_same_universe(const TruthTable& o) const {
  if (num_vars_ != o.num_vars_) {
    throw UsageError("functions over different universes (" +
                     std::to_string(num_vars_) + " vs " +
                     std::to_string(o.num_vars_) + " variables)");
  }
}

void TruthTable::clear_padding() { words_.back() &= padding_mask(num_vars_); }

TruthTable& TruthTable::operator&=(const TruthTable& o) {
  require_same_universe(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

TruthTable& TruthTable::operator|=(const TruthTable& o) {
  require_same_universe(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

TruthTable& TruthTable::operator^=(const TruthTable& o) {
  require_same_universe(o);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
  return *this;
}

TruthTable TruthTable::operator&(const TruthTable& o) const {
  TruthTable r = *this;
  return r &= o;
}

TruthTable TruthTable::operator|(const TruthTable& o) const {
  TruthTable r = *this;
  return r |= o;
}

TruthTable TruthTable::operator^(const TruthTable& o) const {
  TruthTable r = *this;
  return r ^= o;
}

TruthTable TruthTable::operator~() const {
  TruthTable r = *this;
  for (auto& w : r.words_) w = ~w;
  r.clear_padding();
  return r;
}

bool TruthTable::leq(const TruthTable& o) const {
  require_same_universe(o);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~o.words_[i]) != 0) return false;
  }
  return true;
}

bool TruthTable::is_zero() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

bool TruthTable::is_one() const {
  return *this == constant(num_vars_, true);
}

std::size_t TruthTable::support_size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::optional<Point> TruthTable::first_one() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) {
      return static_cast<Point>(i * 64 + std::countr_zero(words_[i]));
    }
  }
  return std::nullopt;
}

std::vector<Point> TruthTable::support() const {
  std::vector<Point> out;
  out.reserve(support_size());
  for (Point p = 0; p < num_points(); ++p) {
    if (get(p)) out.push_back(p);
  }
  return out;
}

TruthTable TruthTable::restrict(VarId var, bool value) const {
  if (var.index >= num_vars_) throw UsageError("variable outside universe");
  const Point bit = Point{1} << var.index;
  TruthTable r(num_vars_);
  for (Point p = 0; p < num_points(); ++p) {
    r.set(p, get(value ? (p | bit) : (p & ~bit)));
  }
  return r;
}

std::string TruthTable::to_string() const {
  std::string s(num_points(), '0');
  for (Point p = 0; p < num_points(); ++p) {
    if (get(p)) s[p] = '1';
  }
  return s;
}

BaseSet::BaseSet(std::vector<TruthTable> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw UsageError("base set must be nonempty");
  cover_ = TruthTable(members_.front().num_vars());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].num_vars() != cover_.num_vars()) {
      throw UsageError("base set members over different universes");
    }
    if (members_[i].is_zero()) {
      throw DomainError("base set member " + std::to_string(i) +
                        " is the zero function");
    }
    cover_ |= members_[i];
  }
}

BaseSet BaseSet::complementary_pair(const TruthTable& g) {
  return BaseSet({g, ~g});
}

BaseSet BaseSet::minterms(unsigned num_vars) {
  std::vector<TruthTable> m;
  m.reserve(std::size_t{1} << num_vars);
  for (Point p = 0; p < (Point{1} << num_vars); ++p) {
    m.push_back(TruthTable::minterm(num_vars, p));
  }
  return BaseSet(std::move(m));
}

CofactorInterval cofactor_interval(const TruthTable& f, const TruthTable& g) {
  require_nonzero(g);
  return {f & g, f | ~g};
}

bool cofactor_member(const TruthTable& alpha, const TruthTable& f,
                     const TruthTable& g) {
  require_nonzero(g);
  return (alpha & g) == (f & g);
}

TruthTable cofactor_sample(const TruthTable& f, const TruthTable& g,
                           const TruthTable& p) {
  require_nonzero(g);
  return (f & g) | (p & ~g);
}

std::vector<TruthTable> lower_cofactors(const TruthTable& f,
                                        const BaseSet& base) {
  std::vector<TruthTable> alphas;
  alphas.reserve(base.size());
  for (const auto& g : base.members()) alphas.push_back(f & g);
  return alphas;
}

TruthTable expand_unchecked(const TruthTable& f, const BaseSet& base,
                            std::span<const TruthTable> alphas) {
  if (alphas.size() != base.size()) {
    throw UsageError("need one cofactor per base member");
  }
  TruthTable sum(f.num_vars());
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!cofactor_member(alphas[i], f, base[i])) {
      throw PreconditionError("alpha_" + std::to_string(i) +
                              " is not a cofactor of f relative to g_" +
                              std::to_string(i));
    }
    sum |= alphas[i] & base[i];
  }
  return sum;
}

TruthTable expand(const TruthTable& f, const BaseSet& base,
                  std::span<const TruthTable> alphas) {
  if (!f.leq(base.cover())) {
    throw PreconditionError("f is not dominated by the cover of the base");
  }
  return expand_unchecked(f, base, alphas);
}

bool is_orthonormal(const BaseSet& phi) {
  if (!phi.cover().is_one()) return false;
  // Pairwise disjoint iff the supports add up to exactly 2^n points.
  std::size_t total = 0;
  for (const auto& m : phi.members()) total += m.support_size();
  return total == phi.cover().num_points();
}

std::optional<Cube> as_product_term(const TruthTable& t) {
  if (t.is_zero()) return std::nullopt;
  const Point all = static_cast<Point>(t.num_points() - 1);
  Point ones = all;
  Point zeros = all;
  for (Point p : t.support()) {
    ones &= p;
    zeros &= ~p & all;
  }
  const Point care = ones | zeros;
  const std::size_t free_vars = t.num_vars() - std::popcount(care);
  if (t.support_size() != (std::size_t{1} << free_vars)) return std::nullopt;
  return Cube{care, ones};
}

TruthTable quotient(const TruthTable& f, const TruthTable& term) {
  const auto cube = as_product_term(term);
  if (!cube) throw PreconditionError("quotient requires a product term");
  TruthTable q(f.num_vars());
  for (Point p = 0; p < f.num_points(); ++p) {
    q.set(p, f.get((p & ~cube->care) | cube->value));
  }
  return q;
}

DualExpansion on_term_expansions(const TruthTable& f, const BaseSet& terms) {
  if (!is_orthonormal(terms)) {
    throw PreconditionError("term set is not orthonormal");
  }
  TruthTable sum(f.num_vars());
  TruthTable product = TruthTable::constant(f.num_vars(), true);
  for (const auto& t : terms.members()) {
    if (!as_product_term(t)) {
      throw PreconditionError("base member is not a product term");
    }
    const TruthTable q = quotient(f, t);
    sum |= q & t;
    product &= q | ~t;
  }
  return {sum, product};
}

TruthTable expansion_identity(const TruthTable& f, const TruthTable& h,
                              const BaseSet& base, IdentityOp op) {
  const TruthTable& cover = base.cover();
  if (op == IdentityOp::complement) {
    if (!cover.is_one()) {
      throw PreconditionError("complement identity requires cover(G) = 1");
    }
  } else if (!f.leq(cover) || !h.leq(cover)) {
    throw PreconditionError("f and h must be dominated by cover(G)");
  }
  TruthTable rhs(f.num_vars());
  for (const auto& g : base.members()) {
    const TruthTable alpha = f & g;
    const TruthTable beta = h & g;
    TruthTable coeff;
    switch (op) {
      case IdentityOp::sum: coeff = alpha | beta; break;
      case IdentityOp::product: coeff = alpha & beta; break;
      case IdentityOp::complement: coeff = ~alpha; break;
      case IdentityOp::exclusive_or: coeff = alpha ^ beta; break;
    }
    rhs |= coeff & g;
  }
  return rhs;
}

TruthTable compose(const TruthTable& f, std::span<const TruthTable> h) {
  if (h.size() != f.num_vars()) {
    throw UsageError("need one inner function per argument of f");
  }
  if (h.empty()) return f;  // f is a constant of zero arguments
  const unsigned n = h.front().num_vars();
  TruthTable r(n);
  for (Point x = 0; x < r.num_points(); ++x) {
    Point arg = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i].get(x)) arg |= Point{1} << i;
    }
    r.set(x, f.get(arg));
  }
  return r;
}

TruthTable compose_via_expansion(
    const TruthTable& f, std::span<const TruthTable> h,
    const std::vector<std::vector<TruthTable>>& betas, const BaseSet& phi) {
  if (!is_orthonormal(phi)) {
    throw PreconditionError("composition by expansion needs an ON base");
  }
  if (h.size() != f.num_vars() || betas.size() != h.size()) {
    throw UsageError("need one inner function per argument of f");
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (betas[i].size() != phi.size()) {
      throw UsageError("need one cofactor per base member");
    }
    for (std::size_t j = 0; j < phi.size(); ++j) {
      if (!cofactor_member(betas[i][j], h[i], phi[j])) {
        throw PreconditionError("beta is not a cofactor of h_i relative to phi_j");
      }
    }
  }
  TruthTable r(phi.num_vars());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    std::vector<TruthTable> column;
    column.reserve(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) column.push_back(betas[i][j]);
    const TruthTable alpha_j =
        column.empty() ? TruthTable::constant(phi.num_vars(), f.get(0))
                       : compose(f, column);
    r |= alpha_j & phi[j];
  }
  return r;
}

TruthTable compose_via_expansion(const TruthTable& f,
                                 std::span<const TruthTable> h,
                                 const BaseSet& phi) {
  std::vector<std::vector<TruthTable>> betas;
  betas.reserve(h.size());
  for (const auto& hi : h) betas.push_back(lower_cofactors(hi, phi));
  return compose_via_expansion(f, h, betas, phi);
}

Verdict consistency_over_base(const TruthTable& f, const BaseSet& base,
                              std::span<const TruthTable> alphas) {
  if (!f.leq(base.cover())) {
    throw PreconditionError("f is not dominated by the cover of the base");
  }
  if (alphas.size() != base.size()) {
    throw UsageError("need one cofactor per base member");
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (!cofactor_member(alphas[i], f, base[i])) {
      throw PreconditionError("alpha_" + std::to_string(i) +
                              " is not a cofactor of f relative to g_" +
                              std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (auto x = (alphas[i] & base[i]).first_one()) return {true, i, *x};
  }
  return {};
}

Verdict consistency_over_base(const TruthTable& f, const BaseSet& base) {
  return consistency_over_base(f, base, lower_cofactors(f, base));
}

OnVerdict consistency_over_on(const TruthTable& f, const BaseSet& phi) {
  if (!is_orthonormal(phi)) {
    throw PreconditionError("base is not orthonormal");
  }
  OnVerdict v;
  for (Point x : f.support()) {
    std::size_t hits = 0;
    std::size_t index = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      if (phi[i].get(x)) {
        ++hits;
        index = i;
      }
    }
    if (hits != 1) v.exactly_one = false;
    if (!v.sat) {
      v.sat = true;
      v.witness_index = index;
      v.witness_point = x;
    }
  }
  return v;
}

}  // namespace cofsat::boolfn
