#include <doctest.h>

#include <cmath>
#include <random>

#include "octic/counting.hpp"
#include "octic/errors.hpp"
#include "octic/zeta.hpp"

using namespace octic;

TEST_CASE("elliptic zeta from a count") {
  auto z = zeta_elliptic_from_count(8, 7);
  CHECK(z.to_string() == "num=1 + 7*T^2; den=1 - 8*T + 7*T^2; q=7");
  CHECK(frobenius_trace(z) == 0);
  CHECK(predict_count(z, 1) == 8);
  CHECK(predict_count(z, 2) == 64);
  CHECK(predict_count(z, 3) == 344);
  CHECK_THROWS_AS(zeta_elliptic_from_count(7 + 1 + 6 + 1, 7), DataError);
  CHECK_NOTHROW(zeta_elliptic_from_count(7 + 1 + 5, 7));
}

TEST_CASE("P^1 zeta counts") {
  auto z = ZetaFunction::make({1}, {1, -12, 11}, 11);
  for (int k = 1; k <= 6; ++k) {
    Integer expect;
    mpz_ui_pow_ui(expect.get_mpz_t(), 11, static_cast<unsigned long>(k));
    CHECK(predict_count(z, k) == expect + 1);
  }
  CHECK(weil_check(z, {}));
}

TEST_CASE("zeta construction cancels common factors") {
  auto z = ZetaFunction::make(intpoly_mul({1, -1}, {1, 0, 7}), intpoly_mul({1, -1}, {1, -7}), 7);
  CHECK(z.numerator == IntPoly{1, 0, 7});
  CHECK(z.denominator == IntPoly{1, -7});
  CHECK_THROWS_AS(ZetaFunction::make({2, 1}, {1}, 7), DataError);
}

TEST_CASE("complex roots") {
  auto r = complex_roots({1, 0, 7});
  REQUIRE(r.size() == 2);
  for (auto& x : r) CHECK(std::abs(std::abs(x) - 1 / std::sqrt(7.0)) < 1e-12);
  auto s = complex_roots(intpoly_mul({1, -1}, {1, -7}));
  REQUIRE(s.size() == 2);
  CHECK(std::abs(s[0] - std::complex<double>(1.0 / 7, 0)) < 1e-12);
  CHECK(std::abs(s[1] - std::complex<double>(1, 0)) < 1e-12);
  // repeated roots survive via the squarefree split
  auto m = complex_roots(intpoly_mul(intpoly_mul({1, 0, 343}, {1, 0, 343}), {1, 2, 1}));
  CHECK(m.size() == 6);
  CHECK_THROWS_AS(complex_roots({3}), DomainError);
}

TEST_CASE("weight buckets") {
  auto w = weight_buckets(zeta_elliptic_from_count(8, 7));
  CHECK(w.count(1) == 2);
  CHECK(w.populated() == std::set<int>{1});
  auto w3 = weight_buckets(ZetaFunction::make({1, 0, 343}, {1}, 7));
  CHECK(w3.count(3) == 2);
  auto mixed = weight_buckets(ZetaFunction::make(intpoly_mul({1, 0, 7}, {1, 0, 343}), {1}, 7));
  CHECK(mixed.count(1) == 2);
  CHECK(mixed.count(3) == 2);
  CHECK_FALSE(weil_check(ZetaFunction::make({1, -3}, {1}, 7), {0, 1, 2, 3, 4, 5, 6}));
  CHECK(weight_buckets(ZetaFunction::make({1, -3}, {1}, 7)).unassigned.size() == 1);
}

TEST_CASE("Legendre zetas over F_p satisfy the Weil bounds") {
  for (std::uint32_t p : {7u, 11u, 13u}) {
    for (long l = 2; l < static_cast<long>(p); ++l) {
      const auto n = count_legendre_curve(FieldElement(FieldSpec::get(p), l));
      auto z = zeta_elliptic_from_count(Integer(static_cast<unsigned long>(n)), p);
      CHECK(weil_check(z, {1}));
      CHECK(predict_count(z, 1) == Integer(static_cast<unsigned long>(n)));
      // functional equation: product of reciprocal roots is q
      CHECK(z.numerator[2] == p);
    }
  }
}

TEST_CASE("weight-3 obstruction") {
  auto a = ZetaFunction::make(intpoly_mul({1, 0, 343}, {1, 0, 343}), {1}, 7);
  auto b = ZetaFunction::make({1, 0, 343}, {1}, 7);
  CHECK(weight3_obstruction(a, b).obstructed);
  CHECK(weight3_obstruction(a, b).weight3_a == 4);
  CHECK_FALSE(weight3_obstruction(a, a).obstructed);
  CHECK_THROWS_AS(weight3_obstruction(a, ZetaFunction::make({1}, {1}, 11)), TaskError);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto w = random_low_weight_factor(7, rng);
    CHECK(weil_check(w, {0, 1}));
    CHECK_FALSE(weight3_obstruction(a * w, a).obstructed);
    CHECK(weight3_obstruction(a * w, b * random_low_weight_factor(7, rng)).obstructed);
  }
}
