#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <cmath>
#include <random>

#include "octic/counting.hpp"
#include "octic/errors.hpp"

using namespace octic;

namespace {

RingPtr<FieldElement> p3(const FieldSpec& f) { return make_fp_ring({"x", "y", "z", "v"}, f); }

std::vector<Plane> octic_at(long t) { return instantiate(reference_octic(), Rational(t)); }

}  // namespace

TEST_CASE("double cover of P^3 branched along a perfect square") {
  for (auto [p, k] : {std::pair{7u, 1}, std::pair{11u, 1}, std::pair{7u, 2}}) {
    const FieldSpec& f = FieldSpec::get(p, k);
    const std::uint64_t q = f.q();
    auto ring = p3(f);
    auto l = parse_polynomial<FieldElement>("x + 2*y - z + 3*v", ring);
    CHECK(count_double_cover_P3(l.pow(8)) == 2 * q * q * q + q * q + q + 1);
    CHECK(count_double_cover_P3(std::vector<FPoly>(8, l)) == 2 * q * q * q + q * q + q + 1);
    // nonsquare constant
    FieldElement c = FieldElement::one(f);
    for (std::uint64_t i = 1; i < q; ++i)
      if (quadratic_character(FieldElement::from_index(f, i)) == -1) {
        c = FieldElement::from_index(f, i);
        break;
      }
    CHECK(count_double_cover_P3(l.pow(8).scaled(c)) == q * q + q + 1);
  }
}

TEST_CASE("projective and affine counts") {
  const FieldSpec& f = FieldSpec::get(7);
  auto ring = p3(f);
  CHECK(count_projective_hypersurface(parse_polynomial<FieldElement>("x + y", ring)) == 57);
  CHECK(count_projective_hypersurface(parse_polynomial<FieldElement>("x*y - z*v", ring)) == 64);
  CHECK_THROWS_AS(count_projective_hypersurface(parse_polynomial<FieldElement>("x*y - z", ring)), TaskError);
  auto a = make_fp_ring({"u", "x"}, f);
  CHECK(count_affine_zeros({parse_polynomial<FieldElement>("u^2 - x", a)}) == 7);
  CHECK_THROWS_AS(count_double_cover_P3(parse_polynomial<FieldElement>("x^7*y", ring).scaled(FieldElement(f, 1)) +
                                            parse_polynomial<FieldElement>("x", ring)),
                  TaskError);
}

TEST_CASE("Legendre counts") {
  CHECK(count_legendre_curve(FieldElement(FieldSpec::get(7), 2)) == 8);
  CHECK(count_legendre_curve(FieldElement(FieldSpec::get(11), 2)) == 12);
  CHECK(count_legendre_curve(FieldElement(FieldSpec::get(7, 2), 2)) == 64);
  CHECK_THROWS_AS(count_legendre_curve(FieldElement(FieldSpec::get(7), 1)), TaskError);
  for (int l = 2; l < 7; ++l) {
    const auto N = run_count(legendre_task(Rational(l), 7)).N;
    CHECK(N == naive_oracle(legendre_task(Rational(l), 7)).N);
    CHECK(std::abs(static_cast<double>(N) - 8.0) <= 2 * std::sqrt(7.0));
  }
}

TEST_CASE("fast engines agree with the oracle on the octic family") {
  for (long t : {0L, 5L, 7L}) {
    auto task = octic_task(octic_at(t), 7);
    const auto fast = run_count(task);
    const auto slow = naive_oracle(task);
    CHECK(fast.N == slow.N);
    CHECK(fast.hash == slow.hash);
    CHECK(run_count(task, 3).N == fast.N);
  }
}

TEST_CASE("random dense octics over F_7 against the oracle") {
  std::mt19937_64 rng(17);
  auto ring = make_ring<Rational>({"x", "y", "z", "v"});
  for (int trial = 0; trial < 5; ++trial) {
    QPoly f(ring);
    for (unsigned a = 0; a <= 8; ++a)
      for (unsigned b = 0; a + b <= 8; ++b)
        for (unsigned c = 0; a + b + c <= 8; ++c) {
          Monomial m(std::vector<std::uint32_t>{a, b, c, 8 - a - b - c});
          f += QPoly::monomial(ring, m, Rational(static_cast<long>(rng() % 7)));
        }
    if (f.is_zero()) continue;
    CountTask task;
    task.kind = CountKind::DoubleCoverP3;
    task.polys = {f};
    task.p = 7;
    CHECK(run_count(task).N == naive_oracle(task).N);
  }
}

TEST_CASE("scaling by an eighth power does not change the count") {
  const FieldSpec& f = FieldSpec::get(11);
  auto ring = p3(f);
  auto g = parse_polynomial<FieldElement>("x*y*(x + y)*z*(x + 2*y + z + 3*v)*v*(y + z + v)*(x + y + z + 2*v)", ring);
  const auto n = count_double_cover_P3(g);
  for (long c = 2; c < 11; ++c) CHECK(count_double_cover_P3(g.scaled(FieldElement(f, c).pow(std::uint64_t{8}))) == n);
}

TEST_CASE("task digests and cache") {
  auto planes = octic_at(5);
  auto t1 = octic_task(planes, 7);
  std::reverse(planes.begin(), planes.end());
  auto t2 = octic_task(planes, 7);
  CHECK(t1.digest() == t2.digest());
  CHECK(t1.digest().size() == 64);
  CHECK(octic_task(planes, 7, 2).digest() != t1.digest());
  CHECK(octic_task(planes, 11).digest() != t1.digest());

  const auto path = std::filesystem::temp_directory_path() / "octic_cache_test.tsv";
  std::filesystem::remove(path);
  CountCache cache(path.string());
  CHECK_FALSE(cache.get(t1.digest(), 7));
  auto r = run_count(t1);
  cache.put(r);
  {
    std::ofstream out(path, std::ios::app);
    out << "garbage line\n" << t1.digest() << "\t7\tnotanumber\tfast\n";
  }
  CountCache again(path.string());
  REQUIRE(again.get(t1.digest(), 7));
  CHECK(*again.get(t1.digest(), 7) == r.N);
  CHECK(again.warnings().size() == 2);
  CHECK_FALSE(again.get(t1.digest(), 49));
  std::filesystem::remove(path);
}

TEST_CASE("oracle refuses large domains") {
  CHECK_THROWS_AS(naive_oracle(octic_task(octic_at(5), 7, 3)), TaskError);
}
