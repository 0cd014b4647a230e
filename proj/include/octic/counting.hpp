#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "octic/arrangement.hpp"
#include "octic/polynomial.hpp"

namespace octic {

// Fast engines. The field is taken from the polynomials' ring; all inputs must
// share one ring.

// Sum over P^3(F_q) of 1 + chi(f(P)), f a degree-8 form in four variables.
std::uint64_t count_double_cover_P3(const FPoly& octic, unsigned jobs = 1);
// Same count with the octic given as eight linear forms (evaluated factored).
std::uint64_t count_double_cover_P3(const std::vector<FPoly>& linear_forms, unsigned jobs = 1);

std::uint64_t count_projective_hypersurface(const FPoly& f, unsigned jobs = 1);
std::uint64_t count_affine_zeros(const std::vector<FPoly>& system);

// Projective count of y^2 = x(x - 1)(x - lambda), point at infinity included.
std::uint64_t count_legendre_curve(const FieldElement& lambda);

enum class CountKind { AffineZeros, ProjectiveHypersurface, DoubleCoverP3, LegendreCurve };
std::string kind_name(CountKind kind);

// Count task over Q data reduced into F_{p^k}. For DoubleCoverP3 `polys` is
// either one octic or eight linear forms; the digest depends only on their
// product.
struct CountTask {
  CountKind kind = CountKind::DoubleCoverP3;
  std::vector<QPoly> polys;
  Rational lambda;
  std::uint32_t p = 0;
  int k = 1;

  std::string canonical() const;
  std::string digest() const;  // hex SHA-256 of canonical()
  std::uint64_t q() const;
  // Number of raw representatives the oracle would enumerate.
  std::uint64_t oracle_domain() const;
};

CountTask octic_task(const std::vector<Plane>& planes, std::uint32_t p, int k = 1);
CountTask legendre_task(const Rational& lambda, std::uint32_t p, int k = 1);

struct CountResult {
  std::string hash;
  std::uint64_t q = 0;
  std::uint64_t N = 0;
  double seconds = 0;
  std::string engine;  // "fast" | "oracle"
};

CountResult run_count(const CountTask& task, unsigned jobs = 1);

// Unoptimized independent count: plain FieldElement arithmetic on the
// expanded polynomials, enumeration of all raw representatives, square roots
// counted by squaring every element. Refuses domains above 10^8.
CountResult naive_oracle(const CountTask& task);
inline constexpr std::uint64_t kOracleLimit = 100000000;

// Append-only record store, one "<hash>\t<q>\t<N>\t<engine>" line per result.
class CountCache {
 public:
  explicit CountCache(std::string path);

  std::optional<std::uint64_t> get(const std::string& hash, std::uint64_t q);
  void put(const CountResult& result);
  // Warnings about skipped lines from the last load.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::string path_;
  std::mutex mutex_;
  std::vector<std::string> warnings_;
};

}  // namespace octic
