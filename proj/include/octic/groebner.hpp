#pragma once

#include <random>
#include <string>
#include <vector>

#include "octic/polynomial.hpp"

namespace octic {

// Generators over a common ring. A generator list consisting only of zero
// polynomials is the zero ideal.
template <class K>
class Ideal {
 public:
  Ideal(RingPtr<K> ring, std::vector<Polynomial<K>> gens);

  const RingPtr<K>& ring() const { return ring_; }
  const std::vector<Polynomial<K>>& generators() const { return gens_; }
  bool is_zero() const;

 private:
  RingPtr<K> ring_;
  std::vector<Polynomial<K>> gens_;
};

template <class K>
struct GroebnerBasis {
  RingPtr<K> ring;
  MonomialOrder order;
  // Reduced: pairwise non-divisible leading terms, fully interreduced, sorted
  // by increasing leading monomial. Over Q each element has coprime integer
  // coefficients and positive leading coefficient; over F_q each is monic.
  std::vector<Polynomial<K>> basis;
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;

  bool is_unit() const { return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero(); }
  bool is_zero_ideal() const { return basis.empty(); }
  Ideal<K> ideal() const;
};

template <class K>
GroebnerBasis<K> buchberger(const Ideal<K>& ideal, const MonomialOrder& order = MonomialOrder::degrevlex());

// Full reduction of f modulo G. With an rng the reduction path (which term to
// reduce next and by which divisor) is chosen at random; the result must not
// depend on that choice when G is a Groebner basis.
template <class K>
Polynomial<K> normal_form(const Polynomial<K>& f, const GroebnerBasis<K>& G, std::mt19937_64* rng = nullptr);

template <class K>
bool ideal_membership(const Polynomial<K>& f, const Ideal<K>& ideal);

// f in rad(I) iff 1 in I + (1 - w f) with a fresh variable w.
template <class K>
bool radical_membership(const Polynomial<K>& f, const Ideal<K>& ideal);

// I intersected with the subring on the remaining variables (original order).
template <class K>
Ideal<K> eliminate(const Ideal<K>& ideal, const std::vector<std::string>& vars);

// (I : f^inf), returned as a degrevlex Groebner basis generating set.
template <class K>
Ideal<K> saturate_by(const Ideal<K>& ideal, const Polynomial<K>& f);

// Repeatedly removes a variable v that some generator expresses as c*v + r
// with c a nonzero constant and r free of v. Only variables in `candidates`
// are removed (all variables when empty).
template <class K>
struct EmbeddingReduction {
  Ideal<K> ideal;
  // (variable, image in the reduced ring) in the order they were removed.
  std::vector<std::pair<std::string, Polynomial<K>>> eliminated;
};
template <class K>
EmbeddingReduction<K> reduce_embedding(const Ideal<K>& ideal, const std::vector<std::string>& candidates = {});

// A variable name not present in `ring`, derived from `base`.
template <class K>
std::string fresh_variable(const PolyRing<K>& ring, const std::string& base);

struct RationalRoots {
  std::vector<Rational> roots;            // distinct, increasing
  std::vector<unsigned> multiplicities;   // parallel to roots
  bool residual = false;                  // irrational or complex roots remain
};

// Rational roots of a univariate polynomial (the ring must have one variable,
// or the polynomial must involve at most one). DomainError on zero input.
RationalRoots rational_roots(const QPoly& f);

}  // namespace octic
