#include <doctest.h>

#include <random>

#include "octic/errors.hpp"
#include "octic/finite_field.hpp"

using namespace octic;

namespace {

std::vector<FieldElement> elements(const FieldSpec& f) {
  std::vector<FieldElement> out;
  for (std::uint64_t i = 0; i < f.q(); ++i) out.push_back(FieldElement::from_index(f, i));
  return out;
}

}  // namespace

TEST_CASE("field construction") {
  CHECK_THROWS_AS(FieldSpec::get(5), DomainError);
  CHECK_THROWS_AS(FieldSpec::get(9), DomainError);
  CHECK(FieldSpec::get(7, 2).q() == 49);
  CHECK(&FieldSpec::get(7, 2) == &FieldSpec::get(7, 2));
  CHECK(find_irreducible(7, 2) == PrimePoly{1, 0, 1});
  CHECK(find_irreducible(5, 2) == PrimePoly{2, 0, 1});
  CHECK_FALSE(is_irreducible({6, 0, 1}, 7));
  CHECK(is_irreducible(FieldSpec::get(11, 3).modulus(), 11));
}

TEST_CASE("arithmetic examples") {
  const FieldSpec& f = FieldSpec::get(7);
  CHECK(FieldElement(f, 3) * FieldElement(f, 5) == FieldElement(f, 1));
  CHECK_THROWS_AS(FieldElement(f, 3) / FieldElement(f, 0), ArithmeticError);
  CHECK(quadratic_character(FieldElement(f, 4)) == 1);
  CHECK(quadratic_character(FieldElement(f, 3)) == -1);
  CHECK(quadratic_character(FieldElement(f, 0)) == 0);
  CHECK(*sqrt_in_field(FieldElement(f, 2)) == FieldElement(f, 3));
  CHECK(*sqrt_in_field(FieldElement(f, 0)) == FieldElement(f, 0));
  CHECK_FALSE(sqrt_in_field(FieldElement(f, 3)));
}

TEST_CASE("field axioms and characters, exhaustive for small q") {
  for (auto [p, k] : {std::pair{7u, 1}, std::pair{11u, 1}, std::pair{7u, 2}}) {
    const FieldSpec& f = FieldSpec::get(p, k);
    const auto el = elements(f);
    const FieldElement zero = FieldElement::zero(f), one = FieldElement::one(f);
    int squares = 0;
    for (const auto& a : el) {
      if (quadratic_character(a) == 1) ++squares;
      CHECK(a + zero == a);
      CHECK(a * one == a);
      CHECK(a + (-a) == zero);
      if (!a.is_zero()) CHECK(a * a.inverse() == one);
      auto r = sqrt_in_field(a);
      CHECK(r.has_value() == (quadratic_character(a) >= 0));
      if (r) CHECK(*r * *r == a);
      for (const auto& b : el) {
        CHECK(quadratic_character(a) * quadratic_character(b) == quadratic_character(a * b));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
      }
    }
    CHECK(squares == static_cast<int>((f.q() - 1) / 2));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
      const auto& a = el[rng() % el.size()];
      const auto& b = el[rng() % el.size()];
      const auto& c = el[rng() % el.size()];
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
      CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
    }
  }
}

TEST_CASE("character counts up to q = 343") {
  for (auto [p, k] : {std::pair{7u, 3}, std::pair{13u, 2}}) {
    const FieldSpec& f = FieldSpec::get(p, k);
    int squares = 0;
    for (const auto& a : elements(f)) squares += quadratic_character(a) == 1;
    CHECK(squares == static_cast<int>((f.q() - 1) / 2));
  }
}

TEST_CASE("Tonelli-Shanks agrees with exhaustive search") {
  for (auto [p, k] : {std::pair{13u, 1}, std::pair{17u, 1}, std::pair{7u, 2}}) {
    const FieldSpec& f = FieldSpec::get(p, k);
    for (const auto& a : elements(f)) {
      auto t = sqrt_tonelli_shanks(a);
      auto e = sqrt_exhaustive(a);
      REQUIRE(t.has_value() == e.has_value());
      if (t) CHECK(*t == *e);
    }
  }
}

TEST_CASE("univariate roots over extensions") {
  auto r = univariate_roots(7, {1, 0, 1}, 2);
  REQUIRE(r.size() == 2);
  for (const auto& x : r) CHECK(x.degree == 2);
  auto s = univariate_roots(7, {0, 2, 4, 1}, 1);  // x(x - 1)(x - 2) = x^3 - 3x^2 + 2x
  CHECK(s.size() == 3);
  auto m = univariate_roots(7, {2, 1, 1}, 1);  // (x - 3)^2 = x^2 - 6x + 9
  REQUIRE(m.size() == 1);
  CHECK(m[0].multiplicity == 2);
  CHECK_THROWS_AS(univariate_roots(7, PrimePoly{}, 2), DomainError);
}

TEST_CASE("Frobenius permutes the roots of a minimal polynomial") {
  const FieldSpec& f = FieldSpec::get(7, 2);
  for (const auto& a : elements(f)) {
    const auto b = a.frobenius();
    // a and a^7 share the minimal polynomial (x - a)(x - a^7)
    const auto s = a + b, pr = a * b;
    CHECK(s.in_prime_field());
    CHECK(pr.in_prime_field());
    CHECK(b.frobenius() == a);
  }
}
