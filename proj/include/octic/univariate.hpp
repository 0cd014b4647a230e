#pragma once

#include <vector>

#include "octic/polynomial.hpp"

namespace octic {

// Dense univariate polynomials, coefficients lowest degree first, no trailing
// zeros (the zero polynomial is the empty vector). K is Rational or
// FieldElement; `zero`/`one` carry the field for FieldElement.
template <class K>
struct Dense {
  std::vector<K> c;
  K zero;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim();
};

template <class K>
Dense<K> dense_from(const Polynomial<K>& f);  // f must involve at most one variable
template <class K>
Polynomial<K> dense_to(const Dense<K>& f, const RingPtr<K>& ring, const std::string& var);

template <class K>
Dense<K> dense_mul(const Dense<K>& a, const Dense<K>& b);
template <class K>
void dense_divmod(const Dense<K>& a, const Dense<K>& b, Dense<K>& q, Dense<K>& r);
template <class K>
Dense<K> dense_gcd(Dense<K> a, Dense<K> b);  // monic
template <class K>
Dense<K> dense_derivative(const Dense<K>& a);
template <class K>
bool dense_squarefree(const Dense<K>& a);
// Product of the distinct irreducible factors (monic).
template <class K>
Dense<K> dense_squarefree_part(const Dense<K>& a);

}  // namespace octic
