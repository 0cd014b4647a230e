#include "doctest.h"

#include <random>

#include "octic/arrangement.hpp"
#include "octic/elliptic.hpp"
#include "octic/errors.hpp"

using namespace octic;

namespace {
BranchQuadruple<Rational> pencil_quadruple() {
  auto l3 = LineP3::meet(Plane::from_integers(1, 0, 0, 0), Plane::from_integers(0, 1, 0, 0));
  auto at0 = instantiate(reference_octic(), 0);
  auto P = span_line_line(l3, LineP3::meet(at0[3], at0[4]));
  BranchQuadruple<Rational> q;
  const Plane planes[4] = {at0[0], at0[1], at0[2], P};
  for (int i = 0; i < 4; ++i) {
    auto [a, b] = pencil_coordinate(l3, planes[i]);
    q[i] = {Rational(a), Rational(b)};
  }
  return q;
}
}  // namespace

TEST_CASE("cross ratio normalization") {
  BranchQuadruple<Rational> q{p1_infinity(), p1_affine(0), p1_affine(1), p1_affine(Rational(5, 3))};
  CHECK(cross_ratio(q) == Rational(5, 3));
  auto pencil = pencil_quadruple();
  CHECK(cross_ratio(pencil) == Rational(1, 2));
  CHECK(cross_ratio(pencil, {1, 0, 2, 3}) == 2);
  CHECK(j_from_lambda(cross_ratio(pencil)) == 1728);
  BranchQuadruple<Rational> rep{p1_affine(0), p1_affine(0), p1_affine(1), p1_infinity()};
  CHECK_THROWS_AS(cross_ratio(rep), DegeneracyError);
}

TEST_CASE("orderings move lambda inside its S3 orbit") {
  BranchQuadruple<Rational> q{p1_affine(3), p1_affine(-7), p1_affine(Rational(1, 2)), p1_affine(11)};
  const Rational l = cross_ratio(q);
  const std::vector<Rational> orbit{l, 1 - l, 1 / l, (l - 1) / l, l / (l - 1), 1 / (1 - l)};
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    const Rational m = cross_ratio(q, perm);
    CHECK(std::find(orbit.begin(), orbit.end(), m) != orbit.end());
    CHECK(j_from_lambda(m) == j_from_lambda(l));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("j from lambda") {
  CHECK(j_from_lambda(Rational(2)) == 1728);
  CHECK(j_from_lambda(Rational(-1)) == 1728);
  CHECK(j_from_lambda(Rational(3)) == Rational(21952, 9));
  CHECK_THROWS_AS(j_from_lambda(Rational(1)), DegeneracyError);
  const auto& F7 = FieldSpec::get(7, 1);
  CHECK(j_from_lambda(FieldElement(F7, 2)) == FieldElement(F7, 1728));
}

TEST_CASE("j from quartic") {
  auto R = make_ring<Rational>({"x"});
  CHECK(j_from_quartic(parse_polynomial("x*(x-1)*(x-2)", R)) == 1728);
  CHECK(j_from_quartic(parse_polynomial("x^3 - x", R)) == 1728);
  CHECK(j_from_quartic_invariants(parse_polynomial("x*(x-1)*(x-2)", R)) == 1728);
  CHECK_THROWS_AS(j_from_quartic(parse_polynomial("x*(x^2-2)", R)), UnsupportedError);
  CHECK_THROWS_AS(j_from_quartic(parse_polynomial("x^2*(x-1)", R)), DegeneracyError);
  const auto& F7 = FieldSpec::get(7, 1);
  auto S = make_fp_ring({"x"}, F7);
  CHECK(j_from_quartic(parse_polynomial("x*(x-1)*(x-2)", S)) == FieldElement(F7, 6));
  // Irreducible quartic over F_7: the roots live in F_{7^4}.
  auto irr = parse_polynomial("x^4 + x + 3", S);
  CHECK(j_from_quartic(irr) == j_from_quartic_invariants(irr));
  auto nonharm = parse_polynomial("x*(x-1)*(x-2)*(x-3)", S);
  CHECK(j_from_quartic(nonharm) == j_from_quartic_invariants(nonharm));
}

TEST_CASE("j from quartic is invariant under Moebius substitution over F_7") {
  const auto& F7 = FieldSpec::get(7, 1);
  auto S = make_fp_ring({"x"}, F7);
  auto x = FPoly::variable(S, "x");
  auto one = FPoly::constant(S, 1);
  // Binary quartic f(x, y) = x (x - y)(x - 2y)(x - 3y); substitute
  // (x, y) -> (a x + b, c x + d) and dehomogenize.
  std::mt19937_64 rng(11);
  const FieldElement j0 = j_from_quartic(parse_polynomial("x*(x-1)*(x-2)*(x-3)", S));
  int tried = 0;
  while (tried < 40) {
    long a = rng() % 7, b = rng() % 7, c = rng() % 7, d = rng() % 7;
    if (((a * d - b * c) % 7 + 7) % 7 == 0) continue;
    ++tried;
    auto X = x.scaled(FieldElement(F7, a)) + one.scaled(FieldElement(F7, b));
    auto Y = x.scaled(FieldElement(F7, c)) + one.scaled(FieldElement(F7, d));
    FPoly f = X;
    for (int r = 1; r <= 3; ++r) f *= X - Y.scaled(FieldElement(F7, r));
    CHECK(j_from_quartic(f) == j0);
  }
}

TEST_CASE("Legendre model") {
  BranchQuadruple<Rational> q{p1_infinity(), p1_affine(0), p1_affine(1), p1_affine(2)};
  auto E = legendre_curve_of_quadruple(q);
  CHECK(E.lambda == 2);
  CHECK(E.model() == "y^2 = x*(x - 1)*(x - 2)");
  BranchQuadruple<Rational> h{p1_infinity(), p1_affine(0), p1_affine(1), p1_affine(-1)};
  CHECK(legendre_curve_of_quadruple(h).lambda == -1);
}
