#include "octic/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "octic/errors.hpp"

namespace octic {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) degree_ += e;
}

void Monomial::set(std::size_t i, std::uint32_t e) {
  degree_ = degree_ - exps_[i] + e;
  exps_[i] = e;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  r.degree_ = degree_ - other.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.set(i, std::max(exps_[i], other.exps_[i]));
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] && other.exps_[i]) return false;
  return true;
}

// ---------------------------------------------------------------- orders

namespace {

int degrevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
  std::uint64_t da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind) {
    case Kind::DegRevLex:
      if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
      return degrevlex_range(a, b, 0, a.size());
    case Kind::Lex:
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      return 0;
    case Kind::Block: {
      const std::size_t cut = std::min(block, a.size());
      if (int c = degrevlex_range(a, b, 0, cut)) return c;
      return degrevlex_range(a, b, cut, a.size());
    }
  }
  return 0;
}

// ---------------------------------------------------------------- domains

FieldElement FiniteDomain::from_integer(const Integer& n) const {
  return FieldElement(*spec, mod_reduce(n, static_cast<long long>(spec->p())));
}

FieldElement FiniteDomain::from_rational(const Rational& r) const {
  const auto den = from_integer(r.get_den());
  if (den.is_zero())
    throw ArithmeticError("coefficient " + to_string(r) + " has denominator divisible by " + std::to_string(spec->p()));
  return from_integer(r.get_num()) / den;
}

bool is_zero_coeff(const Rational& c) { return sgn(c) == 0; }
bool is_zero_coeff(const FieldElement& c) { return c.is_zero(); }

namespace {

Rational power(const Rational& x, unsigned n) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), n);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), n);
  return r;
}
FieldElement power(const FieldElement& x, unsigned n) { return x.pow(static_cast<std::uint64_t>(n)); }

std::string coeff_body(const Rational& c) {
  Rational a = abs(c);
  return to_string(a);
}
bool coeff_negative(const Rational& c) { return sgn(c) < 0; }
bool coeff_is_unit_magnitude(const Rational& c) { return abs(c) == 1; }

std::string coeff_body(const FieldElement& c) {
  if (c.spec().k() == 1) return c.to_string();
  return "(" + c.to_string() + ")";
}
bool coeff_negative(const FieldElement&) { return false; }
bool coeff_is_unit_magnitude(const FieldElement& c) { return c.is_one(); }

std::string monomial_string(const Monomial& m, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- rings

template <class K>
PolyRing<K>::PolyRing(std::vector<std::string> vars, Domain domain) : vars_(std::move(vars)), domain_(std::move(domain)) {
  auto sorted = vars_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw DomainError("duplicate variable name in ring");
}

template <class K>
std::optional<std::size_t> PolyRing<K>::find(const std::string& var) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == var) return i;
  return std::nullopt;
}

template <class K>
std::size_t PolyRing<K>::index(const std::string& var) const {
  if (auto i = find(var)) return *i;
  throw DomainError("unknown variable '" + var + "'");
}

// ---------------------------------------------------------------- polynomial

namespace {
const MonomialOrder kCanonical = MonomialOrder::degrevlex();
}

template <class K>
Polynomial<K>::Polynomial(RingPtr<K> ring, std::vector<TermType> terms) : ring_(std::move(ring)) {
  std::sort(terms.begin(), terms.end(),
            [](const TermType& a, const TermType& b) { return kCanonical.greater(a.mono, b.mono); });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff += t.coeff;
      if (is_zero_coeff(terms_.back().coeff)) terms_.pop_back();
      continue;
    }
    if (!is_zero_coeff(t.coeff)) terms_.push_back(std::move(t));
  }
  // A zero sum followed by another term with the same monomial cannot occur
  // because equal monomials are adjacent after sorting.
}

template <class K>
Polynomial<K> Polynomial<K>::constant(RingPtr<K> ring, const K& c) {
  Polynomial p(ring);
  if (!is_zero_coeff(c)) p.terms_.push_back({Monomial(ring->nvars()), c});
  return p;
}

template <class K>
Polynomial<K> Polynomial<K>::constant(RingPtr<K> ring, long long c) {
  return constant(ring, ring->domain().from_integer(Integer(static_cast<long>(c))));
}

template <class K>
Polynomial<K> Polynomial<K>::variable(RingPtr<K> ring, const std::string& name) {
  Monomial m(ring->nvars());
  m.set(ring->index(name), 1);
  return monomial(ring, std::move(m), ring->domain().one());
}

template <class K>
Polynomial<K> Polynomial<K>::monomial(RingPtr<K> ring, Monomial m, const K& c) {
  if (m.size() != ring->nvars()) throw DomainError("monomial length does not match ring");
  Polynomial p(ring);
  if (!is_zero_coeff(c)) p.terms_.push_back({std::move(m), c});
  return p;
}

template <class K>
K Polynomial<K>::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return ring_->domain().zero();
}

template <class K>
std::uint32_t Polynomial<K>::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

template <class K>
std::uint32_t Polynomial<K>::degree_in(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

template <class K>
std::uint32_t Polynomial<K>::order_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  std::uint32_t d = terms_.front().mono[var];
  for (const auto& t : terms_) d = std::min(d, t.mono[var]);
  return d;
}

template <class K>
bool Polynomial<K>::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

template <class K>
const typename Polynomial<K>::TermType& Polynomial<K>::lead(const MonomialOrder& order) const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  const TermType* best = &terms_.front();
  for (const auto& t : terms_)
    if (order.greater(t.mono, best->mono)) best = &t;
  return *best;
}

template <class K>
void Polynomial<K>::check_ring(const Polynomial& o) const {
  if (ring_ == o.ring_) return;
  if (!ring_ || !o.ring_ || !(*ring_ == *o.ring_))
    throw DomainError("polynomials live in different rings");
}

template <class K>
Polynomial<K> Polynomial<K>::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

template <class K>
Polynomial<K>& Polynomial<K>::operator+=(const Polynomial& o) {
  check_ring(o);
  std::vector<TermType> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size()) c = -1;
    else if (j == o.terms_.size()) c = 1;
    else c = kCanonical.compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      K sum = terms_[i].coeff + o.terms_[j].coeff;
      if (!is_zero_coeff(sum)) out.push_back({std::move(terms_[i].mono), std::move(sum)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

template <class K>
Polynomial<K>& Polynomial<K>::operator-=(const Polynomial& o) {
  return *this += -o;
}

template <class K>
Polynomial<K> Polynomial<K>::multiply(const Polynomial& o) const {
  check_ring(o);
  std::vector<TermType> terms;
  terms.reserve(terms_.size() * o.terms_.size());
  for (const auto& s : terms_)
    for (const auto& t : o.terms_) terms.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Polynomial(ring_, std::move(terms));
}

template <class K>
Polynomial<K>& Polynomial<K>::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

template <class K>
Polynomial<K> Polynomial<K>::scaled(const K& c) const {
  if (is_zero_coeff(c)) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

template <class K>
Polynomial<K> Polynomial<K>::pow(unsigned n) const {
  Polynomial result = constant(ring_, ring_->domain().one());
  Polynomial base = *this;
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

template <class K>
K Polynomial<K>::evaluate(std::span<const K> point) const {
  if (point.size() != ring_->nvars()) throw DomainError("evaluation point has wrong dimension");
  K acc = ring_->domain().zero();
  for (const auto& t : terms_) {
    K v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i)
      if (t.mono[i]) v *= power(point[i], t.mono[i]);
    acc += v;
  }
  return acc;
}

template <class K>
std::string Polynomial<K>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    const bool neg = coeff_negative(t.coeff);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const std::string mono = monomial_string(t.mono, ring_->vars());
    if (mono.empty()) {
      out += coeff_body(t.coeff);
    } else {
      if (!coeff_is_unit_magnitude(t.coeff)) out += coeff_body(t.coeff) + "*";
      out += mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------- operations

template <class K>
Polynomial<K> substitute(const Polynomial<K>& f, const std::map<std::string, Polynomial<K>>& images,
                         const RingPtr<K>& target) {
  const auto& vars = f.ring()->vars();
  for (const auto& [name, image] : images) {
    if (!f.ring()->find(name)) throw DomainError("substitution for unknown variable '" + name + "'");
    if (!(*image.ring() == *target)) throw DomainError("substitution image for '" + name + "' lives in another ring");
  }
  std::vector<Polynomial<K>> image_of(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = images.find(vars[i]);
    if (it != images.end()) {
      image_of[i] = it->second;
    } else if (f.involves(i)) {
      image_of[i] = Polynomial<K>::variable(target, vars[i]);
    }
  }
  // Cache powers of each image as they are needed.
  std::vector<std::vector<Polynomial<K>>> powers(vars.size());
  auto image_power = [&](std::size_t i, std::uint32_t e) -> const Polynomial<K>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial<K>::constant(target, target->domain().one()));
    while (cache.size() <= e) cache.push_back(cache.back() * image_of[i]);
    return cache[e];
  };
  Polynomial<K> result(target);
  for (const auto& t : f.terms()) {
    Polynomial<K> term = Polynomial<K>::constant(target, t.coeff);
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (t.mono[i]) term *= image_power(i, t.mono[i]);
    result += term;
  }
  return result;
}

template <class K>
Polynomial<K> partial_derivative(const Polynomial<K>& f, const std::string& var) {
  const std::size_t v = f.ring()->index(var);
  std::vector<Term<K>> terms;
  for (const auto& t : f.terms()) {
    if (!t.mono[v]) continue;
    Monomial m = t.mono;
    m.set(v, m[v] - 1);
    terms.push_back({std::move(m), t.coeff * f.ring()->domain().from_integer(Integer(static_cast<unsigned long>(t.mono[v])))});
  }
  return Polynomial<K>(f.ring(), std::move(terms));
}

template <class K>
Polynomial<K> exact_divide_by_var_power(const Polynomial<K>& f, const std::string& var, std::uint32_t power) {
  const std::size_t v = f.ring()->index(var);
  std::vector<Term<K>> terms;
  for (const auto& t : f.terms()) {
    if (t.mono[v] < power)
      throw DivisibilityError(var + "^" + std::to_string(power) + " does not divide " + f.to_string());
    Monomial m = t.mono;
    m.set(v, m[v] - power);
    terms.push_back({std::move(m), t.coeff});
  }
  return Polynomial<K>(f.ring(), std::move(terms));
}

template <class K>
Polynomial<K> change_ring(const Polynomial<K>& f, const RingPtr<K>& target) {
  if (!(f.ring()->domain() == target->domain())) throw DomainError("change_ring across coefficient domains");
  const auto& vars = f.ring()->vars();
  std::vector<std::optional<std::size_t>> where(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) where[i] = target->find(vars[i]);
  std::vector<Term<K>> terms;
  for (const auto& t : f.terms()) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (!t.mono[i]) continue;
      if (!where[i]) throw DomainError("variable '" + vars[i] + "' missing from target ring");
      m.set(*where[i], t.mono[i]);
    }
    terms.push_back({std::move(m), t.coeff});
  }
  return Polynomial<K>(target, std::move(terms));
}

FPoly reduce_mod(const QPoly& f, const RingPtr<FieldElement>& target) {
  if (f.ring()->vars() != target->vars()) throw DomainError("reduce_mod: variable lists differ");
  std::vector<Term<FieldElement>> terms;
  for (const auto& t : f.terms()) terms.push_back({t.mono, target->domain().from_rational(t.coeff)});
  return FPoly(target, std::move(terms));
}

Integer content_lcm_denominator(const QPoly& f) {
  Integer l = 1;
  for (const auto& t : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l;
}

QPoly primitive_part(const QPoly& f) {
  if (f.is_zero()) return f;
  const Integer l = content_lcm_denominator(f);
  Integer g = 0;
  for (const auto& t : f.terms()) {
    Integer n = t.coeff.get_num() * (l / t.coeff.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale(l, g);
  scale.canonicalize();
  if (sgn(f.terms().front().coeff) < 0) scale = -scale;
  return f.scaled(scale);
}

// ---------------------------------------------------------------- parsing

namespace {

template <class K>
class ExprParser {
 public:
  ExprParser(const std::string& text, const RingPtr<K>& ring, const ParseOptions& options)
      : text_(text), ring_(ring), options_(options) {}

  Polynomial<K> parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty expression", pos_);
    auto p = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    int column = options_.column_offset + 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      // Count UTF-8 lead bytes only.
      if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++column;
    }
    throw ParseError(what, options_.line, column);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Returns the byte length of a minus sign at pos (ASCII or U+2212), else 0.
  std::size_t minus_at(std::size_t at) const {
    if (at < text_.size() && text_[at] == '-') return 1;
    if (text_.compare(at, 3, "\xE2\x88\x92") == 0) return 3;
    return 0;
  }

  bool starts_factor(std::size_t at) const {
    if (at >= text_.size()) return false;
    const unsigned char c = static_cast<unsigned char>(text_[at]);
    return std::isdigit(c) || std::isalpha(c) || c == '_' || c == '(' || minus_at(at) > 0;
  }

  Polynomial<K> parse_expr() {
    Polynomial<K> acc = parse_term();
    for (;;) {
      skip_ws();
      const std::size_t op = pos_;
      bool plus = false;
      std::size_t len = 0;
      if (pos_ < text_.size() && text_[pos_] == '+') {
        plus = true;
        len = 1;
      } else {
        len = minus_at(pos_);
      }
      if (!len) return acc;
      pos_ += len;
      skip_ws();
      if (!starts_factor(pos_)) fail(std::string("expected a term after '") + (plus ? "+" : "-") + "'", op);
      auto rhs = parse_term();
      if (plus) acc += rhs;
      else acc -= rhs;
    }
  }

  Polynomial<K> parse_term() {
    Polynomial<K> acc = parse_factor();
    for (;;) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        const std::size_t op = pos_++;
        skip_ws();
        if (!starts_factor(pos_)) fail("expected a factor after '*'", op);
        acc *= parse_factor();
      } else if (pos_ < text_.size() && text_[pos_] == '/') {
        const std::size_t op = pos_++;
        if (!options_.allow_division) fail("division is not allowed here", op);
        skip_ws();
        const std::size_t at = pos_;
        const Integer d = parse_integer();
        const K dk = ring_->domain().from_integer(d);
        if (is_zero_coeff(dk)) fail("division by zero", at);
        acc = acc.scaled(ring_->domain().one() / dk);
      } else {
        return acc;
      }
    }
  }

  Integer parse_integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer", start);
    return Integer(text_.substr(start, pos_ - start));
  }

  Polynomial<K> parse_factor() {
    skip_ws();
    if (std::size_t len = minus_at(pos_)) {
      pos_ += len;
      return -parse_factor();
    }
    Polynomial<K> base = parse_primary();
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '^') return base;
      const std::size_t op = pos_++;
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected a positive integer exponent after '^'", op);
      const std::size_t at = pos_;
      const Integer e = parse_integer();
      if (e <= 0 || e > 1000) fail("exponent must be a positive integer below 1000", at);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
  }

  Polynomial<K> parse_primary() {
    if (pos_ >= text_.size()) fail("unexpected end of expression", pos_);
    const unsigned char c = static_cast<unsigned char>(text_[pos_]);
    if (c == '(') {
      const std::size_t open = pos_++;
      skip_ws();
      if (!starts_factor(pos_)) fail("expected an expression after '('", open);
      auto inner = parse_expr();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("missing ')'", open);
      ++pos_;
      return inner;
    }
    if (std::isdigit(c)) {
      const Integer n = parse_integer();
      if (pos_ < text_.size() && text_[pos_] == '.') fail("non-integer coefficient", pos_);
      return Polynomial<K>::constant(ring_, ring_->domain().from_integer(n));
    }
    if (std::isalpha(c) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
      const std::string name = text_.substr(start, pos_ - start);
      if (!ring_->find(name)) fail("unknown variable '" + name + "'", start);
      return Polynomial<K>::variable(ring_, name);
    }
    fail("unexpected character '" + std::string(1, static_cast<char>(c)) + "'", pos_);
  }

  const std::string& text_;
  RingPtr<K> ring_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

}  // namespace

template <class K>
Polynomial<K> parse_polynomial(const std::string& text, const RingPtr<K>& ring, const ParseOptions& options) {
  return ExprParser<K>(text, ring, options).parse_all();
}

// ---------------------------------------------------------------- instantiation

#define OCTIC_INSTANTIATE_POLY(K)                                                                              \
  template class PolyRing<K>;                                                                                  \
  template class Polynomial<K>;                                                                                \
  template Polynomial<K> substitute(const Polynomial<K>&, const std::map<std::string, Polynomial<K>>&,        \
                                    const RingPtr<K>&);                                                        \
  template Polynomial<K> partial_derivative(const Polynomial<K>&, const std::string&);                        \
  template Polynomial<K> exact_divide_by_var_power(const Polynomial<K>&, const std::string&, std::uint32_t);  \
  template Polynomial<K> change_ring(const Polynomial<K>&, const RingPtr<K>&);                                \
  template Polynomial<K> parse_polynomial(const std::string&, const RingPtr<K>&, const ParseOptions&);

OCTIC_INSTANTIATE_POLY(Rational)
OCTIC_INSTANTIATE_POLY(FieldElement)

}  // namespace octic
