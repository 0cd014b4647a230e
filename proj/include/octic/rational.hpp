#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace octic {

using Integer = mpz_class;
using Rational = mpq_class;

// Builds a canonical rational (gcd 1, positive denominator).
Rational make_rational(const Integer& num, const Integer& den = 1);

// Parses "a", "-a" or "a/b"; throws DomainError on malformed input or b = 0.
Rational parse_rational(const std::string& text);

// "num/den" form used by canonical serialization; integers print as "num".
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Scales a rational vector to coprime integers with the first nonzero entry
// positive. The zero vector maps to itself.
std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v);

// Same normalization applied to an integer vector.
std::vector<Integer> primitive_integer_vector(const std::vector<Integer>& v);

// Non-negative residue of z modulo m.
long long mod_reduce(const Integer& z, long long m);

}  // namespace octic
