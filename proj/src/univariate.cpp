#include "octic/univariate.hpp"

#include "octic/errors.hpp"

namespace octic {

namespace {
bool zero_coeff(const Rational& v) { return sgn(v) == 0; }
bool zero_coeff(const FieldElement& v) { return v.is_zero(); }
Rational from_long(const Rational&, long v) { return Rational(v); }
FieldElement from_long(const FieldElement& like, long v) { return FieldElement(like.spec(), v); }
}  // namespace

template <class K>
void Dense<K>::trim() {
  while (!c.empty() && zero_coeff(c.back())) c.pop_back();
}

template <class K>
Dense<K> dense_from(const Polynomial<K>& f) {
  Dense<K> d{{}, f.ring()->domain().zero()};
  std::optional<std::size_t> var;
  for (std::size_t i = 0; i < f.ring()->nvars(); ++i)
    if (f.involves(i)) {
      if (var) throw DomainError("expected a univariate polynomial, got " + f.to_string());
      var = i;
    }
  if (f.is_zero()) return d;
  d.c.assign((var ? f.degree_in(*var) : 0) + 1, d.zero);
  for (const auto& t : f.terms()) d.c[var ? t.mono[*var] : 0] = t.coeff;
  d.trim();
  return d;
}

template <class K>
Polynomial<K> dense_to(const Dense<K>& f, const RingPtr<K>& ring, const std::string& var) {
  const std::size_t v = ring->index(var);
  std::vector<Term<K>> terms;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    Monomial m(ring->nvars());
    m.set(v, static_cast<std::uint32_t>(i));
    terms.push_back({std::move(m), f.c[i]});
  }
  return Polynomial<K>(ring, std::move(terms));
}

template <class K>
Dense<K> dense_mul(const Dense<K>& a, const Dense<K>& b) {
  Dense<K> r{{}, a.zero};
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, a.zero);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.trim();
  return r;
}

template <class K>
void dense_divmod(const Dense<K>& a, const Dense<K>& b, Dense<K>& q, Dense<K>& r) {
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  r = a;
  q = Dense<K>{{}, a.zero};
  if (a.degree() < b.degree()) return;
  q.c.assign(a.c.size() - b.c.size() + 1, a.zero);
  const K inv = from_long(b.c.back(), 1) / b.c.back();
  for (int i = r.degree(); i >= b.degree(); --i) {
    const K coef = r.c[i] * inv;
    if (zero_coeff(coef)) continue;
    q.c[i - b.degree()] = coef;
    for (int j = 0; j <= b.degree(); ++j) r.c[i - b.degree() + j] -= coef * b.c[j];
  }
  r.trim();
  q.trim();
}

template <class K>
Dense<K> dense_gcd(Dense<K> a, Dense<K> b) {
  while (!b.is_zero()) {
    Dense<K> q, r;
    dense_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.is_zero()) {
    const K inv = from_long(a.c.back(), 1) / a.c.back();
    for (auto& x : a.c) x *= inv;
  }
  return a;
}

template <class K>
Dense<K> dense_derivative(const Dense<K>& a) {
  Dense<K> d{{}, a.zero};
  for (std::size_t i = 1; i < a.c.size(); ++i) d.c.push_back(a.c[i] * from_long(a.c[i], static_cast<long>(i)));
  d.trim();
  return d;
}

template <class K>
bool dense_squarefree(const Dense<K>& a) {
  if (a.is_zero()) return false;
  return dense_gcd(a, dense_derivative(a)).degree() == 0;
}

template <class K>
Dense<K> dense_squarefree_part(const Dense<K>& a) {
  if (a.is_zero()) throw DomainError("squarefree part of zero");
  // Characteristic 0 or degree below p: a / gcd(a, a') suffices.
  Dense<K> g = dense_gcd(a, dense_derivative(a));
  Dense<K> q, r;
  dense_divmod(a, g, q, r);
  return dense_gcd(q, q);
}

#define OCTIC_INSTANTIATE_DENSE(K)                                                   \
  template struct Dense<K>;                                                          \
  template Dense<K> dense_from(const Polynomial<K>&);                                \
  template Polynomial<K> dense_to(const Dense<K>&, const RingPtr<K>&, const std::string&); \
  template Dense<K> dense_mul(const Dense<K>&, const Dense<K>&);                     \
  template void dense_divmod(const Dense<K>&, const Dense<K>&, Dense<K>&, Dense<K>&); \
  template Dense<K> dense_gcd(Dense<K>, Dense<K>);                                   \
  template Dense<K> dense_derivative(const Dense<K>&);                               \
  template bool dense_squarefree(const Dense<K>&);                                   \
  template Dense<K> dense_squarefree_part(const Dense<K>&);

OCTIC_INSTANTIATE_DENSE(Rational)
OCTIC_INSTANTIATE_DENSE(FieldElement)

}  // namespace octic
