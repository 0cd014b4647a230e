#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "octic/finite_field.hpp"
#include "octic/rational.hpp"

namespace octic {

// Exponent vector indexed by the ambient variable list.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, std::uint32_t e);
  std::uint32_t degree() const { return degree_; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Requires divides(*this) by `other`.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

// degrevlex (default), lex, or a block order that compares the first
// `block` variables by degrevlex and breaks ties by degrevlex on the rest.
struct MonomialOrder {
  enum class Kind { DegRevLex, Lex, Block };
  Kind kind = Kind::DegRevLex;
  std::size_t block = 0;

  static MonomialOrder degrevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::Lex, 0}; }
  static MonomialOrder eliminate_first(std::size_t n) { return {Kind::Block, n}; }

  // Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
};

// Coefficient domains. Each provides constants and the conversions used to
// move data between Q and F_q.
struct RationalDomain {
  using value_type = Rational;
  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational from_integer(const Integer& n) const { return Rational(n); }
  Rational from_rational(const Rational& r) const { return r; }
  std::string name() const { return "QQ"; }
  friend bool operator==(const RationalDomain&, const RationalDomain&) { return true; }
};

struct FiniteDomain {
  using value_type = FieldElement;
  const FieldSpec* spec = nullptr;

  FieldElement zero() const { return FieldElement::zero(*spec); }
  FieldElement one() const { return FieldElement::one(*spec); }
  FieldElement from_integer(const Integer& n) const;
  // Throws ArithmeticError when the denominator vanishes mod p.
  FieldElement from_rational(const Rational& r) const;
  std::string name() const { return spec->label(); }
  friend bool operator==(const FiniteDomain& a, const FiniteDomain& b) { return a.spec == b.spec; }
};

template <class K>
struct domain_of;
template <>
struct domain_of<Rational> {
  using type = RationalDomain;
};
template <>
struct domain_of<FieldElement> {
  using type = FiniteDomain;
};
template <class K>
using domain_t = typename domain_of<K>::type;

bool is_zero_coeff(const Rational& c);
bool is_zero_coeff(const FieldElement& c);

// Ordered variable names plus a coefficient domain.
template <class K>
class PolyRing {
 public:
  using Domain = domain_t<K>;
  PolyRing(std::vector<std::string> vars, Domain domain = {});

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Domain& domain() const { return domain_; }
  std::optional<std::size_t> find(const std::string& var) const;
  // Throws DomainError for unknown names.
  std::size_t index(const std::string& var) const;

  friend bool operator==(const PolyRing& a, const PolyRing& b) { return a.vars_ == b.vars_ && a.domain_ == b.domain_; }

 private:
  std::vector<std::string> vars_;
  Domain domain_;
};

template <class K>
using RingPtr = std::shared_ptr<const PolyRing<K>>;

template <class K>
RingPtr<K> make_ring(std::vector<std::string> vars, domain_t<K> domain = {}) {
  return std::make_shared<const PolyRing<K>>(std::move(vars), std::move(domain));
}

inline RingPtr<FieldElement> make_fp_ring(std::vector<std::string> vars, const FieldSpec& spec) {
  return make_ring<FieldElement>(std::move(vars), FiniteDomain{&spec});
}

template <class K>
struct Term {
  Monomial mono;
  K coeff;
};

// Sparse multivariate polynomial. Terms are kept sorted by descending
// degrevlex with no zero coefficients, so equality is structural.
template <class K>
class Polynomial {
 public:
  using TermType = Term<K>;

  Polynomial() = default;
  explicit Polynomial(RingPtr<K> ring) : ring_(std::move(ring)) {}
  // Sorts and combines arbitrary terms.
  Polynomial(RingPtr<K> ring, std::vector<TermType> terms);

  static Polynomial constant(RingPtr<K> ring, const K& c);
  static Polynomial constant(RingPtr<K> ring, long long c);
  static Polynomial variable(RingPtr<K> ring, const std::string& name);
  static Polynomial monomial(RingPtr<K> ring, Monomial m, const K& c);

  const RingPtr<K>& ring() const { return ring_; }
  const std::vector<TermType>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  K constant_term() const;
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  // Smallest exponent of `var` over all terms (0 for the zero polynomial).
  std::uint32_t order_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }
  bool is_homogeneous() const;

  // Leading term under an arbitrary order.
  const TermType& lead(const MonomialOrder& order) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.multiply(b); }
  Polynomial multiply(const Polynomial& o) const;
  Polynomial scaled(const K& c) const;
  Polynomial pow(unsigned n) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!(a.ring_ == b.ring_ || (a.ring_ && b.ring_ && *a.ring_ == *b.ring_))) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
  }

  K evaluate(std::span<const K> point) const;

  // Canonical text: degrevlex-descending terms, coefficients as num/den.
  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const;

  RingPtr<K> ring_;
  std::vector<TermType> terms_;
};

using QPoly = Polynomial<Rational>;
using FPoly = Polynomial<FieldElement>;

// Replaces variables of f by images living in `target`. Variables without an
// image map to the same-named variable of `target`.
template <class K>
Polynomial<K> substitute(const Polynomial<K>& f, const std::map<std::string, Polynomial<K>>& images,
                         const RingPtr<K>& target);
template <class K>
Polynomial<K> substitute(const Polynomial<K>& f, const std::map<std::string, Polynomial<K>>& images) {
  return substitute(f, images, f.ring());
}

template <class K>
Polynomial<K> partial_derivative(const Polynomial<K>& f, const std::string& var);

// f / var^power; DivisibilityError if some term has lower order in var.
template <class K>
Polynomial<K> exact_divide_by_var_power(const Polynomial<K>& f, const std::string& var, std::uint32_t power);

// Re-expresses f in another ring by variable name. Every variable used by f
// must exist in `target`.
template <class K>
Polynomial<K> change_ring(const Polynomial<K>& f, const RingPtr<K>& target);

// Coefficientwise reduction into F_q; ArithmeticError on a denominator that
// vanishes in the field.
FPoly reduce_mod(const QPoly& f, const RingPtr<FieldElement>& target);

// Multiplies by a positive rational so the coefficients are coprime integers
// with a positive leading (degrevlex) coefficient.
QPoly primitive_part(const QPoly& f);
Integer content_lcm_denominator(const QPoly& f);

// Parses + - * ^ ( ) with integer (optionally rational) constants and the
// ring's variable names.
struct ParseOptions {
  bool allow_division = true;  // "/ <integer>" after a factor
  int line = 1;                // reported in ParseError
  int column_offset = 0;
};
template <class K>
Polynomial<K> parse_polynomial(const std::string& text, const RingPtr<K>& ring, const ParseOptions& options = {});

}  // namespace octic
