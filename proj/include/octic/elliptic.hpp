#pragma once

#include <array>
#include <string>

#include "octic/finite_field.hpp"
#include "octic/polynomial.hpp"

namespace octic {

// Point (a : b) of P^1; (1 : 0) is infinity and (z : 1) the affine point z.
template <class K>
struct P1Point {
  K a;
  K b;
};

template <class K>
using BranchQuadruple = std::array<P1Point<K>, 4>;

P1Point<Rational> p1_affine(const Rational& z);
P1Point<Rational> p1_infinity();
P1Point<FieldElement> p1_affine(const FieldElement& z);
P1Point<FieldElement> p1_infinity(const FieldSpec& spec);

// Sends the first three points of the ordering to infinity, 0, 1 and returns
// the image of the fourth. DegeneracyError on repeated points.
template <class K>
K cross_ratio(const BranchQuadruple<K>& q, const std::array<int, 4>& ordering = {0, 1, 2, 3});

// 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2); DegeneracyError for l in {0, 1}.
Rational j_from_lambda(const Rational& lambda);
FieldElement j_from_lambda(const FieldElement& lambda);

// j-invariant of y^2 = q(x) for a squarefree univariate q of degree 3 or 4
// (degree 3: infinity is a branch point). Over Q the branch points must be
// rational (UnsupportedError otherwise). Over F_p they are located in
// F_{p^e}, e <= 4, and the result is checked to lie in F_p.
Rational j_from_quartic(const QPoly& q);
FieldElement j_from_quartic(const FPoly& q);

// Independent closed form j = 6912 I^3 / (4 I^3 - J^2) from the classical
// binary-quartic invariants; used as a cross-check.
Rational j_from_quartic_invariants(const QPoly& q);
FieldElement j_from_quartic_invariants(const FPoly& q);

template <class K>
struct LegendreCurve {
  K lambda;
  // "y^2 = x*(x - 1)*(x - 2)"
  std::string model() const;
};

template <class K>
LegendreCurve<K> legendre_curve_of_quadruple(const BranchQuadruple<K>& q);

std::string field_value_string(const Rational& v);
std::string field_value_string(const FieldElement& v);

}  // namespace octic
