#include "octic/groebner.hpp"

#include <algorithm>
#include <numeric>

#include "octic/errors.hpp"

namespace octic {

template <class K>
Ideal<K>::Ideal(RingPtr<K> ring, std::vector<Polynomial<K>> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {
  if (!ring_) throw DomainError("ideal without a ring");
  if (gens_.empty()) gens_.push_back(Polynomial<K>(ring_));
  for (const auto& g : gens_)
    if (!(*g.ring() == *ring_)) throw DomainError("ideal generators live in different rings");
}

template <class K>
bool Ideal<K>::is_zero() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const auto& g) { return g.is_zero(); });
}

template <class K>
Ideal<K> GroebnerBasis<K>::ideal() const {
  return Ideal<K>(ring, basis);
}

namespace {

// Working representation: terms sorted by the working order, descending.
template <class K>
struct WPoly {
  std::vector<Term<K>> terms;
  bool empty() const { return terms.empty(); }
  const Monomial& lm() const { return terms.front().mono; }
  const K& lc() const { return terms.front().coeff; }
};

template <class K>
WPoly<K> to_working(const Polynomial<K>& f, const MonomialOrder& order) {
  WPoly<K> w{f.terms()};
  std::sort(w.terms.begin(), w.terms.end(),
            [&](const Term<K>& a, const Term<K>& b) { return order.greater(a.mono, b.mono); });
  return w;
}

template <class K>
Polynomial<K> from_working(const WPoly<K>& w, const RingPtr<K>& ring) {
  return Polynomial<K>(ring, w.terms);
}

// f - c * m * g, all sorted by `order`.
template <class K>
void sub_scaled(WPoly<K>& f, const K& c, const Monomial& m, const WPoly<K>& g, const MonomialOrder& order) {
  std::vector<Term<K>> out;
  out.reserve(f.terms.size() + g.terms.size());
  std::size_t i = 0, j = 0;
  while (i < f.terms.size() || j < g.terms.size()) {
    if (j == g.terms.size()) {
      out.push_back(std::move(f.terms[i++]));
      continue;
    }
    Monomial gm = g.terms[j].mono * m;
    const int cmp = i == f.terms.size() ? -1 : order.compare(f.terms[i].mono, gm);
    if (cmp > 0) {
      out.push_back(std::move(f.terms[i++]));
    } else if (cmp < 0) {
      out.push_back({std::move(gm), -(c * g.terms[j].coeff)});
      ++j;
    } else {
      K v = f.terms[i].coeff - c * g.terms[j].coeff;
      if (!is_zero_coeff(v)) out.push_back({std::move(gm), std::move(v)});
      ++i;
      ++j;
    }
  }
  f.terms = std::move(out);
}

template <class K>
void make_monic(WPoly<K>& f) {
  if (f.empty()) return;
  const K inv = K(1) / f.lc();
  for (auto& t : f.terms) t.coeff *= inv;
}

template <>
void make_monic(WPoly<FieldElement>& f) {
  if (f.empty()) return;
  const FieldElement inv = f.lc().inverse();
  for (auto& t : f.terms) t.coeff *= inv;
}

// Deterministic full reduction by the first divisor in list order.
template <class K>
WPoly<K> reduce_full(WPoly<K> f, const std::vector<const WPoly<K>*>& G, const MonomialOrder& order) {
  WPoly<K> rem;
  while (!f.empty()) {
    const Monomial& lt = f.lm();
    const WPoly<K>* div = nullptr;
    for (const auto* g : G) {
      if (g->lm().divides(lt)) {
        div = g;
        break;
      }
    }
    if (!div) {
      rem.terms.push_back(std::move(f.terms.front()));
      f.terms.erase(f.terms.begin());
      continue;
    }
    const K c = f.lc() / div->lc();
    const Monomial m = lt / div->lm();
    sub_scaled(f, c, m, *div, order);
  }
  return rem;
}

// Reduction along a random path: any reducible term, any divisor.
template <class K>
WPoly<K> reduce_random(WPoly<K> f, const std::vector<const WPoly<K>*>& G, const MonomialOrder& order,
                       std::mt19937_64& rng) {
  for (;;) {
    std::vector<std::pair<std::size_t, std::size_t>> moves;
    for (std::size_t i = 0; i < f.terms.size(); ++i)
      for (std::size_t j = 0; j < G.size(); ++j)
        if (G[j]->lm().divides(f.terms[i].mono)) moves.emplace_back(i, j);
    if (moves.empty()) return f;
    const auto [i, j] = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    const K c = f.terms[i].coeff / G[j]->lc();
    const Monomial m = f.terms[i].mono / G[j]->lm();
    sub_scaled(f, c, m, *G[j], order);
  }
}

template <class K>
Polynomial<K> normalize_output(const Polynomial<K>& f, const MonomialOrder& order);

template <>
Polynomial<Rational> normalize_output(const Polynomial<Rational>& f, const MonomialOrder& order) {
  if (f.is_zero()) return f;
  QPoly p = primitive_part(f);
  if (sgn(p.lead(order).coeff) < 0) p = -p;
  return p;
}

template <>
Polynomial<FieldElement> normalize_output(const Polynomial<FieldElement>& f, const MonomialOrder& order) {
  if (f.is_zero()) return f;
  return f.scaled(f.lead(order).coeff.inverse());
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

}  // namespace

template <class K>
GroebnerBasis<K> buchberger(const Ideal<K>& ideal, const MonomialOrder& order) {
  GroebnerBasis<K> out{ideal.ring(), order, {}};
  std::vector<WPoly<K>> polys;
  std::vector<std::size_t> active;  // indices into polys forming the current basis
  std::vector<Pair> pairs;

  auto active_ptrs = [&]() {
    std::vector<const WPoly<K>*> ptrs;
    for (auto idx : active) ptrs.push_back(&polys[idx]);
    return ptrs;
  };

  // Gebauer-Moeller update with the new element h = polys.back().
  auto update = [&]() {
    const std::size_t h = polys.size() - 1;
    const Monomial& lh = polys[h].lm();
    std::vector<Pair> C;
    for (auto g : active) C.push_back({g, h, polys[g].lm().lcm(lh)});
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = polys[p.i].lm().coprime(lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (C[b].lcm.divides(p.lcm)) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (D[b].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }
    std::vector<Pair> E;
    for (auto& p : D)
      if (!polys[p.i].lm().coprime(lh)) E.push_back(std::move(p));
    std::vector<Pair> kept;
    for (auto& p : pairs) {
      const bool drop = lh.divides(p.lcm) && !(polys[p.i].lm().lcm(lh) == p.lcm) && !(polys[p.j].lm().lcm(lh) == p.lcm);
      if (!drop) kept.push_back(std::move(p));
    }
    for (auto& p : E) kept.push_back(std::move(p));
    pairs = std::move(kept);
    std::vector<std::size_t> next;
    for (auto g : active)
      if (!lh.divides(polys[g].lm())) next.push_back(g);
    next.push_back(h);
    active = std::move(next);
  };

  for (const auto& g : ideal.generators()) {
    if (g.is_zero()) continue;
    WPoly<K> w = reduce_full(to_working(g, order), active_ptrs(), order);
    if (w.empty()) continue;
    make_monic(w);
    polys.push_back(std::move(w));
    update();
  }

  while (!pairs.empty()) {
    // Normal strategy: smallest lcm first; ties broken by insertion order.
    std::size_t best = 0;
    for (std::size_t a = 1; a < pairs.size(); ++a)
      if (order.compare(pairs[a].lcm, pairs[best].lcm) < 0) best = a;
    Pair p = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    ++out.pairs_considered;

    const WPoly<K>& f = polys[p.i];
    const WPoly<K>& g = polys[p.j];
    WPoly<K> s = f;
    for (auto& t : s.terms) t.mono = t.mono * (p.lcm / f.lm());
    sub_scaled(s, K(f.lc() / g.lc()), p.lcm / g.lm(), g, order);
    WPoly<K> r = reduce_full(std::move(s), active_ptrs(), order);
    if (r.empty()) continue;
    ++out.pairs_reduced;
    make_monic(r);
    polys.push_back(std::move(r));
    update();
    if (polys.back().lm().is_one()) {
      active = {polys.size() - 1};
      pairs.clear();
    }
  }

  // Interreduce the minimal basis.
  std::vector<WPoly<K>> reduced;
  for (std::size_t a = 0; a < active.size(); ++a) {
    std::vector<const WPoly<K>*> others;
    for (std::size_t b = 0; b < active.size(); ++b)
      if (b != a) others.push_back(&polys[active[b]]);
    WPoly<K> head{{polys[active[a]].terms.front()}};
    WPoly<K> tail{std::vector<Term<K>>(polys[active[a]].terms.begin() + 1, polys[active[a]].terms.end())};
    WPoly<K> rt = reduce_full(std::move(tail), others, order);
    head.terms.insert(head.terms.end(), rt.terms.begin(), rt.terms.end());
    reduced.push_back(std::move(head));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const WPoly<K>& a, const WPoly<K>& b) { return order.compare(a.lm(), b.lm()) < 0; });
  for (const auto& w : reduced) out.basis.push_back(normalize_output(from_working(w, ideal.ring()), order));
  return out;
}

template <class K>
Polynomial<K> normal_form(const Polynomial<K>& f, const GroebnerBasis<K>& G, std::mt19937_64* rng) {
  if (!(*f.ring() == *G.ring)) throw DomainError("normal_form: polynomial and basis live in different rings");
  std::vector<WPoly<K>> ws;
  for (const auto& g : G.basis) ws.push_back(to_working(g, G.order));
  std::vector<const WPoly<K>*> ptrs;
  for (const auto& w : ws) ptrs.push_back(&w);
  WPoly<K> r = rng ? reduce_random(to_working(f, G.order), ptrs, G.order, *rng)
                   : reduce_full(to_working(f, G.order), ptrs, G.order);
  return from_working(r, f.ring());
}

template <class K>
bool ideal_membership(const Polynomial<K>& f, const Ideal<K>& ideal) {
  return normal_form(f, buchberger(ideal)).is_zero();
}

template <class K>
std::string fresh_variable(const PolyRing<K>& ring, const std::string& base) {
  if (!ring.find(base)) return base;
  for (int i = 1;; ++i) {
    std::string name = base + std::to_string(i);
    if (!ring.find(name)) return name;
  }
}

template <class K>
bool radical_membership(const Polynomial<K>& f, const Ideal<K>& ideal) {
  const auto& ring = *ideal.ring();
  auto vars = ring.vars();
  vars.push_back(fresh_variable(ring, "_w"));
  auto ext = make_ring<K>(vars, ring.domain());
  std::vector<Polynomial<K>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(change_ring(g, ext));
  auto w = Polynomial<K>::variable(ext, vars.back());
  gens.push_back(Polynomial<K>::constant(ext, 1) - w * change_ring(f, ext));
  return buchberger(Ideal<K>(ext, gens)).is_unit();
}

template <class K>
Ideal<K> eliminate(const Ideal<K>& ideal, const std::vector<std::string>& vars) {
  const auto& ring = *ideal.ring();
  std::vector<std::string> order_vars, kept;
  for (const auto& v : vars) {
    ring.index(v);
    order_vars.push_back(v);
  }
  for (const auto& v : ring.vars())
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) kept.push_back(v);
  std::vector<std::string> all = order_vars;
  all.insert(all.end(), kept.begin(), kept.end());
  auto perm = make_ring<K>(all, ring.domain());
  std::vector<Polynomial<K>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(change_ring(g, perm));
  auto G = buchberger(Ideal<K>(perm, gens), MonomialOrder::eliminate_first(order_vars.size()));
  auto sub = make_ring<K>(kept, ring.domain());
  std::vector<Polynomial<K>> out;
  for (const auto& g : G.basis) {
    bool free = true;
    for (std::size_t i = 0; i < order_vars.size() && free; ++i)
      if (g.involves(i)) free = false;
    if (free) out.push_back(change_ring(g, sub));
  }
  return Ideal<K>(sub, out);
}

template <class K>
Ideal<K> saturate_by(const Ideal<K>& ideal, const Polynomial<K>& f) {
  const auto& ring = *ideal.ring();
  const std::string w = fresh_variable(ring, "_w");
  std::vector<std::string> vars{w};
  vars.insert(vars.end(), ring.vars().begin(), ring.vars().end());
  auto ext = make_ring<K>(vars, ring.domain());
  std::vector<Polynomial<K>> gens;
  for (const auto& g : ideal.generators()) gens.push_back(change_ring(g, ext));
  gens.push_back(Polynomial<K>::constant(ext, 1) - Polynomial<K>::variable(ext, w) * change_ring(f, ext));
  auto res = eliminate(Ideal<K>(ext, gens), {w});
  // eliminate keeps the original variable order, so the ring is identical.
  std::vector<Polynomial<K>> out;
  for (const auto& g : res.generators()) out.push_back(change_ring(g, ideal.ring()));
  return Ideal<K>(ideal.ring(), out);
}

template <class K>
EmbeddingReduction<K> reduce_embedding(const Ideal<K>& ideal, const std::vector<std::string>& candidates) {
  Ideal<K> cur = ideal;
  std::vector<std::pair<std::string, Polynomial<K>>> eliminated;

  for (;;) {
    const auto& ring = *cur.ring();
    std::vector<std::string> order = candidates.empty() ? ring.vars() : std::vector<std::string>{};
    for (const auto& c : candidates)
      if (ring.find(c)) order.push_back(c);
    bool progress = false;
    for (const auto& name : order) {
      // With name first in a block order, the ideal contains name - phi
      // (phi free of name) iff the reduced basis has an element led by name.
      std::vector<std::string> perm_vars{name};
      for (const auto& v : ring.vars())
        if (v != name) perm_vars.push_back(v);
      auto perm = make_ring<K>(perm_vars, ring.domain());
      std::vector<Polynomial<K>> gens;
      for (const auto& g : cur.generators()) gens.push_back(change_ring(g, perm));
      const auto order1 = MonomialOrder::eliminate_first(1);
      auto G = buchberger(Ideal<K>(perm, gens), order1);
      if (G.is_unit()) break;
      Monomial target(perm_vars.size());
      target.set(0, 1);
      const Polynomial<K>* lin = nullptr;
      for (const auto& g : G.basis)
        if (g.lead(order1).mono == target) lin = &g;
      if (!lin) continue;

      std::vector<std::string> kept;
      for (const auto& v : ring.vars())
        if (v != name) kept.push_back(v);
      auto sub = make_ring<K>(kept, ring.domain());
      const K lc = lin->lead(order1).coeff;
      std::vector<Term<K>> tail;
      for (const auto& t : lin->terms())
        if (!(t.mono == target)) tail.push_back(t);
      const Polynomial<K> image =
          change_ring(Polynomial<K>(perm, tail), sub).scaled(-(ring.domain().one() / lc));
      std::vector<Polynomial<K>> next;
      for (const auto& g : G.basis) {
        if (&g == lin) continue;
        auto h = substitute(g, {{name, image}}, sub);
        if (!h.is_zero()) next.push_back(std::move(h));
      }
      for (auto& entry : eliminated) entry.second = substitute(entry.second, {{name, image}}, sub);
      eliminated.emplace_back(name, image);
      cur = Ideal<K>(sub, next);
      progress = true;
      break;
    }
    if (!progress) break;
  }
  auto G = buchberger(cur);
  return {G.is_zero_ideal() ? cur : Ideal<K>(cur.ring(), G.basis), eliminated};
}

// ---------------------------------------------------------------- rational roots

namespace {

std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<std::pair<Integer, unsigned>> factors;
  for (Integer d = 2; d * d <= n && d <= 1000000; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) factors.emplace_back(d, e);
  }
  if (n > 1) {
    if (n > Integer(1000000) * Integer(1000000) && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      throw UnsupportedError("rational_roots: coefficient too large to factor by trial division");
    factors.emplace_back(n, 1);
  }
  std::vector<Integer> divs{1};
  for (const auto& [pr, e] : factors) {
    const std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= pr;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Dense coefficients, lowest degree first.
bool divide_by_root(std::vector<Rational>& c, const Rational& r) {
  // Synthetic division; returns false (leaving c untouched) if r is not a root.
  std::vector<Rational> q(c.size() - 1);
  Rational acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * r + c[i];
    if (i > 0) q[i - 1] = acc;
  }
  if (sgn(acc) != 0) return false;
  c = std::move(q);
  return true;
}

}  // namespace

RationalRoots rational_roots(const QPoly& f) {
  if (f.is_zero()) throw DomainError("rational_roots of the zero polynomial");
  std::optional<std::size_t> var;
  for (std::size_t i = 0; i < f.ring()->nvars(); ++i) {
    if (!f.involves(i)) continue;
    if (var) throw DomainError("rational_roots expects a univariate polynomial");
    var = i;
  }
  RationalRoots out;
  if (!var) return out;
  std::vector<Rational> c(f.degree_in(*var) + 1);
  for (const auto& t : f.terms()) c[t.mono[*var]] = t.coeff;

  std::vector<std::pair<Rational, unsigned>> found;
  unsigned zero_mult = 0;
  while (sgn(c.front()) == 0) {
    c.erase(c.begin());
    ++zero_mult;
  }
  if (zero_mult) found.emplace_back(Rational(0), zero_mult);

  if (c.size() > 1) {
    // Clear denominators to read off the integer leading and constant terms.
    Integer l = 1;
    for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    const Integer a0 = Rational(c.front() * l).get_num();
    const Integer an = Rational(c.back() * l).get_num();
    const auto nums = positive_divisors(a0);
    const auto dens = positive_divisors(an);
    std::vector<Rational> candidates;
    for (const auto& p : nums)
      for (const auto& q : dens) {
        Rational r(p, q);
        r.canonicalize();
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
      unsigned m = 0;
      while (c.size() > 1 && divide_by_root(c, r)) ++m;
      if (m) found.emplace_back(r, m);
      if (c.size() == 1) break;
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [r, m] : found) {
    out.roots.push_back(r);
    out.multiplicities.push_back(m);
  }
  out.residual = c.size() > 1;
  return out;
}

#define OCTIC_INSTANTIATE_GB(K)                                                                          \
  template class Ideal<K>;                                                                               \
  template struct GroebnerBasis<K>;                                                                      \
  template GroebnerBasis<K> buchberger(const Ideal<K>&, const MonomialOrder&);                          \
  template Polynomial<K> normal_form(const Polynomial<K>&, const GroebnerBasis<K>&, std::mt19937_64*);  \
  template bool ideal_membership(const Polynomial<K>&, const Ideal<K>&);                                \
  template bool radical_membership(const Polynomial<K>&, const Ideal<K>&);                              \
  template Ideal<K> eliminate(const Ideal<K>&, const std::vector<std::string>&);                        \
  template Ideal<K> saturate_by(const Ideal<K>&, const Polynomial<K>&);                                 \
  template EmbeddingReduction<K> reduce_embedding(const Ideal<K>&, const std::vector<std::string>&);    \
  template std::string fresh_variable(const PolyRing<K>&, const std::string&);

OCTIC_INSTANTIATE_GB(Rational)
OCTIC_INSTANTIATE_GB(FieldElement)

}  // namespace octic
