#include "octic/elliptic.hpp"

#include <algorithm>
#include <numeric>

#include "octic/errors.hpp"
#include "octic/groebner.hpp"

namespace octic {

namespace {

Rational constant_like(const Rational&, long v) { return Rational(v); }
FieldElement constant_like(const FieldElement& like, long v) { return FieldElement(like.spec(), v); }
bool is_zero(const Rational& v) { return sgn(v) == 0; }
bool is_zero(const FieldElement& v) { return v.is_zero(); }

template <class K>
K bracket(const P1Point<K>& p, const P1Point<K>& q) {
  return p.a * q.b - q.a * p.b;
}

template <class K>
K j_lambda_impl(const K& l) {
  const K one = constant_like(l, 1);
  if (is_zero(l) || is_zero(K(l - one))) throw DegeneracyError("lambda in {0, 1} gives a singular Legendre curve");
  const K s = l * l - l + one;
  return constant_like(l, 256) * s * s * s / (l * l * (l - one) * (l - one));
}

// Dense coefficients (lowest first) of a univariate polynomial.
template <class K>
std::vector<K> dense(const Polynomial<K>& f, K zero) {
  std::optional<std::size_t> var;
  for (std::size_t i = 0; i < f.ring()->nvars(); ++i)
    if (f.involves(i)) {
      if (var) throw DomainError("expected a univariate polynomial");
      var = i;
    }
  if (f.is_zero()) throw DomainError("zero polynomial");
  const std::size_t deg = var ? f.degree_in(*var) : 0;
  std::vector<K> c(deg + 1, zero);
  for (const auto& t : f.terms()) c[var ? t.mono[*var] : 0] = t.coeff;
  return c;
}

template <class K>
void check_degree(const std::vector<K>& c) {
  if (c.size() != 4 && c.size() != 5)
    throw DegeneracyError("branch polynomial must have degree 3 or 4, got degree " + std::to_string(c.size() - 1));
}

// Binary quartic a x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4 (a may be 0).
template <class K>
K j_invariants_impl(std::vector<K> c) {
  check_degree(c);
  const K zero = constant_like(c[0], 0);
  if (c.size() == 4) c.push_back(zero);
  const K &e = c[0], &d = c[1], &cc = c[2], &b = c[3], &a = c[4];
  const K I = constant_like(a, 12) * a * e - constant_like(a, 3) * b * d + cc * cc;
  const K J = constant_like(a, 72) * a * cc * e + constant_like(a, 9) * b * cc * d - constant_like(a, 27) * a * d * d -
              constant_like(a, 27) * e * b * b - constant_like(a, 2) * cc * cc * cc;
  const K disc = constant_like(a, 4) * I * I * I - J * J;
  if (is_zero(disc)) throw DegeneracyError("branch polynomial is not squarefree");
  return constant_like(a, 6912) * I * I * I / disc;
}

}  // namespace

P1Point<Rational> p1_affine(const Rational& z) { return {z, 1}; }
P1Point<Rational> p1_infinity() { return {1, 0}; }
P1Point<FieldElement> p1_affine(const FieldElement& z) { return {z, FieldElement::one(z.spec())}; }
P1Point<FieldElement> p1_infinity(const FieldSpec& spec) { return {FieldElement::one(spec), FieldElement::zero(spec)}; }

template <class K>
K cross_ratio(const BranchQuadruple<K>& q, const std::array<int, 4>& ordering) {
  std::array<int, 4> sorted = ordering;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 4>{0, 1, 2, 3}) throw DomainError("ordering must be a permutation of 0..3");
  for (const auto& p : q)
    if (is_zero(p.a) && is_zero(p.b)) throw DegeneracyError("(0 : 0) is not a point of P^1");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (is_zero(bracket(q[i], q[j]))) throw DegeneracyError("branch points are not distinct");
  const auto& p1 = q[ordering[0]];
  const auto& p2 = q[ordering[1]];
  const auto& p3 = q[ordering[2]];
  const auto& p4 = q[ordering[3]];
  return bracket(p4, p2) * bracket(p3, p1) / (bracket(p4, p1) * bracket(p3, p2));
}

Rational j_from_lambda(const Rational& lambda) { return j_lambda_impl(lambda); }
FieldElement j_from_lambda(const FieldElement& lambda) { return j_lambda_impl(lambda); }

Rational j_from_quartic_invariants(const QPoly& q) { return j_invariants_impl(dense(q, Rational(0))); }

FieldElement j_from_quartic_invariants(const FPoly& q) {
  return j_invariants_impl(dense(q, q.ring()->domain().zero()));
}

Rational j_from_quartic(const QPoly& q) {
  const auto c = dense(q, Rational(0));
  check_degree(c);
  j_invariants_impl(c);  // squarefree check
  const auto rr = rational_roots(q);
  if (rr.residual) throw UnsupportedError("branch points over Q must be rational; " + q.to_string() + " has irrational roots");
  BranchQuadruple<Rational> quad;
  std::size_t n = 0;
  for (const auto& r : rr.roots) quad[n++] = p1_affine(r);
  if (c.size() == 4) quad[n++] = p1_infinity();
  return j_from_lambda(cross_ratio(quad));
}

FieldElement j_from_quartic(const FPoly& q) {
  const auto& base = q.ring()->domain().spec;
  const auto c = dense(q, q.ring()->domain().zero());
  check_degree(c);
  for (const auto& x : c)
    if (!x.in_prime_field()) throw UnsupportedError("j_from_quartic expects coefficients in the prime field");
  j_invariants_impl(c);  // squarefree check
  const auto found = univariate_roots(c, 4);
  int total = 0, ext = 1;
  for (const auto& r : found) {
    if (r.multiplicity > 1) throw DegeneracyError("branch polynomial is not squarefree (repeated root " + r.value.to_string() + ")");
    total += 1;
    ext = std::lcm(ext, r.degree);
  }
  if (total != static_cast<int>(c.size()) - 1)
    throw DataError("root search found " + std::to_string(total) + " roots for a degree " + std::to_string(c.size() - 1) +
                    " polynomial");
  // Re-locate every root in the common field F_{p^ext}.
  const auto& big = FieldSpec::get(base->p(), ext);
  std::vector<FieldElement> coeffs;
  for (const auto& x : c) coeffs.emplace_back(big, static_cast<long long>(x.coeff(0)));
  BranchQuadruple<FieldElement> quad;
  std::size_t n = 0;
  for (std::uint64_t i = 0; i < big.q() && n < 4; ++i) {
    const auto a = FieldElement::from_index(big, i);
    if (horner(coeffs, a).is_zero()) quad[n++] = p1_affine(a);
  }
  if (c.size() == 4) quad[n++] = p1_infinity(big);
  if (n != 4) throw DataError("branch points not found in " + big.label());
  const auto j = j_from_lambda(cross_ratio(quad));
  if (!j.in_prime_field()) throw DataError("j-invariant " + j.to_string() + " does not lie in the base field");
  return FieldElement(*base, static_cast<long long>(j.coeff(0)));
}

template <class K>
std::string LegendreCurve<K>::model() const {
  return "y^2 = x*(x - 1)*(x - " + field_value_string(lambda) + ")";
}

template <class K>
LegendreCurve<K> legendre_curve_of_quadruple(const BranchQuadruple<K>& q) {
  return {cross_ratio(q)};
}

std::string field_value_string(const Rational& v) { return to_string(v); }
std::string field_value_string(const FieldElement& v) { return v.to_string(); }

template Rational cross_ratio(const BranchQuadruple<Rational>&, const std::array<int, 4>&);
template FieldElement cross_ratio(const BranchQuadruple<FieldElement>&, const std::array<int, 4>&);
template struct LegendreCurve<Rational>;
template struct LegendreCurve<FieldElement>;
template LegendreCurve<Rational> legendre_curve_of_quadruple(const BranchQuadruple<Rational>&);
template LegendreCurve<FieldElement> legendre_curve_of_quadruple(const BranchQuadruple<FieldElement>&);

}  // namespace octic
