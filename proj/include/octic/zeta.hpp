#pragma once

#include <complex>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "octic/rational.hpp"

namespace octic {

// Integer polynomial in T, lowest degree first, no trailing zeros.
using IntPoly = std::vector<Integer>;

IntPoly intpoly_mul(const IntPoly& a, const IntPoly& b);
std::string intpoly_string(const IntPoly& f);  // "1 - 8*T + 7*T^2"

// numerator / denominator with constant terms 1 and no common factor.
struct ZetaFunction {
  IntPoly numerator;
  IntPoly denominator;
  Integer q;

  // Cancels common factors; DataError for constant term != 1 or q < 2.
  static ZetaFunction make(IntPoly numerator, IntPoly denominator, const Integer& q);
  std::string to_string() const;  // "num=...; den=...; q=..."
  friend bool operator==(const ZetaFunction& a, const ZetaFunction& b) {
    return a.numerator == b.numerator && a.denominator == b.denominator && a.q == b.q;
  }
};

ZetaFunction operator*(const ZetaFunction& a, const ZetaFunction& b);

// (1 - a T + p T^2) / ((1 - T)(1 - p T)), a = p + 1 - N1. DataError when a^2 > 4p.
ZetaFunction zeta_elliptic_from_count(const Integer& n1, const Integer& p);
Integer frobenius_trace(const ZetaFunction& elliptic);

// N_k from Newton power sums of the reciprocal roots, exactly.
Integer predict_count(const ZetaFunction& z, int k);
// sum of the k-th powers of the reciprocal roots of f (f(0) = 1)
Integer power_sum(const IntPoly& f, int k);

// All complex roots with multiplicity (repeated). Squarefree decomposition
// first, then Durand-Kerner on each factor, then Newton polishing.
// NumericalError if the iteration does not converge.
std::vector<std::complex<double>> complex_roots(const IntPoly& f);

struct WeightMultiset {
  std::map<int, std::vector<std::complex<double>>> buckets;  // i in 0..6
  std::vector<std::complex<double>> unassigned;
  std::size_t count(int i) const;
  std::set<int> populated() const;
};

// Roots r of the numerator with | |r| - q^(-i/2) | <= tol * q^(-i/2).
WeightMultiset weight_buckets(const ZetaFunction& z, double tol = 1e-6);

struct ObstructionVerdict {
  bool obstructed = false;
  std::size_t weight3_a = 0, weight3_b = 0;
  std::string verdict() const { return obstructed ? "obstructed" : "not obstructed"; }
};
ObstructionVerdict weight3_obstruction(const ZetaFunction& a, const ZetaFunction& b);

bool weil_check(const ZetaFunction& z, const std::set<int>& expected_weights, double tol = 1e-6);

// Random factor whose numerator roots all have weight 0 or 1 (products of
// cyclotomic pieces and 1 - aT + qT^2 with a^2 < 4q); the denominator gets
// random (1 - T) or (1 - qT) factors.
ZetaFunction random_low_weight_factor(const Integer& q, std::mt19937_64& rng);

}  // namespace octic
