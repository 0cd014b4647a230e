#include "doctest.h"

#include <random>

#include "octic/errors.hpp"
#include "octic/groebner.hpp"

using namespace octic;

namespace {
QPoly P(const std::string& s, const RingPtr<Rational>& R) { return parse_polynomial(s, R); }
}  // namespace

TEST_CASE("reduced bases of small ideals") {
  auto R = make_ring<Rational>({"x", "y"});
  auto G = buchberger(Ideal<Rational>(R, {P("x", R), P("y", R)}));
  REQUIRE(G.basis.size() == 2);
  CHECK(G.basis[0].to_string() == "y");
  CHECK(G.basis[1].to_string() == "x");
  CHECK(buchberger(Ideal<Rational>(R, {P("x", R), P("x+1", R)})).is_unit());
  CHECK(buchberger(Ideal<Rational>(R, {P("x*y-1", R), P("x^2", R)})).is_unit());
  auto H = buchberger(Ideal<Rational>(R, {P("2*x^2 - 4*y", R), P("6*x*y", R)}));
  for (const auto& g : H.basis) CHECK(g == primitive_part(g));
}

TEST_CASE("membership and radical membership") {
  auto R = make_ring<Rational>({"x", "y"});
  Ideal<Rational> I(R, {P("x^2", R), P("x*y", R)});
  CHECK_FALSE(ideal_membership(P("x", R), I));
  CHECK(radical_membership(P("x", R), I));
  CHECK_FALSE(radical_membership(P("y", R), Ideal<Rational>(R, {P("x^2", R)})));
  CHECK(ideal_membership(P("x^2*y + x*y^3", R), I));
}

TEST_CASE("elimination and saturation") {
  auto R = make_ring<Rational>({"x", "y"});
  auto E = eliminate(Ideal<Rational>(R, {P("y - x^2", R)}), {"y"});
  CHECK(E.is_zero());
  CHECK(E.ring()->vars() == std::vector<std::string>{"x"});
  auto S = saturate_by(Ideal<Rational>(R, {P("x*y", R)}), P("x", R));
  REQUIRE(S.generators().size() == 1);
  CHECK(S.generators()[0] == P("y", R));

  auto T = make_ring<Rational>({"t", "x", "y"});
  auto twisted = eliminate(Ideal<Rational>(T, {P("x - t^2", T), P("y - t^3", T)}), {"t"});
  REQUIRE(twisted.generators().size() == 1);
  CHECK(twisted.generators()[0].to_string() == "x^3 - y^2");
}

TEST_CASE("embedding reduction removes linear variables") {
  auto R = make_ring<Rational>({"a", "b", "c"});
  auto red = reduce_embedding(Ideal<Rational>(R, {P("a - b*c", R), P("a^2 + b + 1", R)}), {"a"});
  CHECK(red.ideal.ring()->vars() == std::vector<std::string>{"b", "c"});
  REQUIRE(red.ideal.generators().size() == 1);
  CHECK(red.ideal.generators()[0] == parse_polynomial("b^2*c^2 + b + 1", red.ideal.ring()));
}

TEST_CASE("finite field bases are monic") {
  const auto& F7 = FieldSpec::get(7, 1);
  auto R = make_fp_ring({"x", "y"}, F7);
  auto G = buchberger(Ideal<FieldElement>(R, {parse_polynomial("3*x^2 + y", R), parse_polynomial("2*x*y - 1", R)}));
  for (const auto& g : G.basis) CHECK(g.lead(G.order).coeff.is_one());
  // 7 is zero in F_7, so x - 7 = x.
  CHECK(ideal_membership(parse_polynomial("x", R), Ideal<FieldElement>(R, {parse_polynomial("x - 7", R)})));
}

TEST_CASE("rational roots") {
  auto R = make_ring<Rational>({"t"});
  auto r = rational_roots(P("t*(t-1)*(t-2)", R));
  CHECK(r.roots == std::vector<Rational>{0, 1, 2});
  CHECK_FALSE(r.residual);
  auto s = rational_roots(P("t^2+1", R));
  CHECK(s.roots.empty());
  CHECK(s.residual);
  auto u = rational_roots(P("(2*t-3)^2*(t^2-2)", R));
  REQUIRE(u.roots.size() == 1);
  CHECK(u.roots[0] == Rational(3, 2));
  CHECK(u.multiplicities[0] == 2);
  CHECK(u.residual);
  CHECK_THROWS_AS(rational_roots(QPoly(R)), DomainError);
}
