#include "doctest.h"

#include "octic/errors.hpp"
#include "octic/polynomial.hpp"

using namespace octic;

TEST_CASE("parse and print round trip") {
  auto R = make_ring<Rational>({"x", "y", "z"});
  auto f = parse_polynomial("(x+y)^2 - 2*x*y + 3/2*z", R);
  CHECK(f.to_string() == "x^2 + y^2 + 3/2*z");
  CHECK(parse_polynomial(f.to_string(), R) == f);
  auto g = parse_polynomial("-x - 1", R);
  CHECK(g.to_string() == "-x - 1");
  CHECK(parse_polynomial("x \xE2\x88\x92 y", R) == parse_polynomial("x-y", R));
}

TEST_CASE("parse errors carry the column of the offending operator") {
  auto R = make_ring<Rational>({"t"});
  ParseOptions opt;
  opt.line = 3;
  opt.column_offset = 6;
  try {
    parse_polynomial("t-", R, opt);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 8);
  }
  CHECK_THROWS_AS(parse_polynomial("w", R), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(t+1", R), ParseError);
  CHECK_THROWS_AS(parse_polynomial("t/0", R), ParseError);
}

TEST_CASE("arithmetic identities") {
  auto R = make_ring<Rational>({"a", "b"});
  auto a = QPoly::variable(R, "a"), b = QPoly::variable(R, "b");
  CHECK((a + b) * (a - b) == a * a - b * b);
  CHECK((a + b).pow(3).total_degree() == 3);
  CHECK(partial_derivative((a + b).pow(3), "a") == ((a + b).pow(2)).scaled(3));
  CHECK(exact_divide_by_var_power(a.pow(3) * b + a.pow(2), "a", 2) == a * b + QPoly::constant(R, 1));
  CHECK_THROWS_AS(exact_divide_by_var_power(a + b, "a", 1), DivisibilityError);
  auto s = substitute(a * a + b, {{"a", b + QPoly::constant(R, 1)}});
  CHECK(s == b * b + b.scaled(3) + QPoly::constant(R, 1));
  CHECK(primitive_part(a.scaled(Rational(2, 3)) - b.scaled(Rational(4, 9))).to_string() == "3*a - 2*b");
}

TEST_CASE("reduction into a prime field") {
  const auto& F7 = FieldSpec::get(7, 1);
  auto R = make_ring<Rational>({"x"});
  auto S = make_fp_ring({"x"}, F7);
  auto f = parse_polynomial("x^2/2 + 9", R);
  auto g = reduce_mod(f, S);
  CHECK(g.to_string() == "4*x^2 + 2");
  auto bad = parse_polynomial("x/7", R);
  CHECK_THROWS_AS(reduce_mod(bad, S), ArithmeticError);
}

TEST_CASE("monomial orders") {
  Monomial xy({1, 1, 0}), z2({0, 0, 2}), x2({2, 0, 0});
  auto drl = MonomialOrder::degrevlex();
  CHECK(drl.greater(xy, z2));
  CHECK(drl.greater(x2, xy));
  auto lex = MonomialOrder::lex();
  CHECK(lex.greater(Monomial({1, 0, 0}), z2));
  auto blk = MonomialOrder::eliminate_first(1);
  CHECK(blk.greater(Monomial({1, 0, 0}), Monomial({0, 5, 5})));
}
