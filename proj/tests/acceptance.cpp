// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "octic/arrangement.hpp"
#include "octic/counting.hpp"
#include "octic/elliptic.hpp"
#include "octic/errors.hpp"
#include "octic/finite_field.hpp"
#include "octic/groebner.hpp"
#include "octic/resolution.hpp"
#include "octic/specseq.hpp"
#include "octic/zeta.hpp"

using namespace octic;

namespace {

// Runtime limits in seconds, per criterion.
constexpr double kLimit1 = 1, kLimit2 = 5, kLimit3 = 30, kLimit4PerPrime = 300, kLimit5 = 120, kLimit6 = 60,
                 kLimit7 = 120, kLimit8 = 30, kLimit9 = 1, kLimit10 = 300;
// Relative tolerance on |root| against q^(-i/2) when bucketing by weight.
constexpr double kWeightTol = 1e-6;

struct Outcome {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) why << what;
      else why << "; " << what;
      ok = false;
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& title, double limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f s (limit %.0f s)", s, limit);
  o.require(s <= limit, "runtime limit exceeded");
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " [" << buf << "]";
  if (!o.ok) std::cout << " -- " << o.why.str();
  std::cout << std::endl;
  if (!o.ok) ++failures;
}

template <class K>
Polynomial<K> var(const RingPtr<K>& ring, const std::string& name) {
  return Polynomial<K>::variable(ring, name);
}

std::vector<Plane> octic_at(const Rational& t) { return instantiate(reference_octic(), t); }

bool fivefold_at_origin(const IncidenceSignature& sig) {
  return sig.fivefold_points.size() == 1 && sig.fivefold_points[0].point.to_string() == "(0:0:0:1)" &&
         sig.fivefold_points[0].planes == std::vector<int>{1, 2, 3, 4, 5};
}

// ------------------------------------------------------------ criterion 10 helpers

std::vector<std::size_t> used_vars(const std::vector<FPoly>& polys) {
  std::set<std::size_t> s;
  for (const auto& f : polys)
    for (std::size_t v = 0; v < f.ring()->vars().size(); ++v)
      if (f.involves(v)) s.insert(v);
  return {s.begin(), s.end()};
}

int rank_mod(std::vector<std::vector<FieldElement>> m) {
  int r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(r);
    while (piv < m.size() && m[piv][c].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(r)]);
    const FieldElement inv = m[static_cast<std::size_t>(r)][c].inverse();
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == static_cast<std::size_t>(r) || m[i][c].is_zero()) continue;
      const FieldElement f = m[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[static_cast<std::size_t>(r)][j];
    }
    ++r;
  }
  return r;
}

// F_p-points where the equations vanish and the evaluated Jacobian drops rank,
// compared against the zero set of the singular-locus basis.
bool singular_points_agree(const std::vector<FPoly>& eqs, const GroebnerBasis<FieldElement>& J, const FieldSpec& f,
                           std::string* detail) {
  std::vector<FPoly> all = eqs;
  all.insert(all.end(), J.basis.begin(), J.basis.end());
  const auto vars = used_vars(all);
  const auto& names = eqs.front().ring()->vars();
  std::vector<std::vector<FPoly>> jac;
  for (const auto& e : eqs) {
    std::vector<FPoly> row;
    for (std::size_t v : vars) row.push_back(partial_derivative(e, names[v]));
    jac.push_back(row);
  }
  const std::uint64_t p = f.p();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) total *= p;
  std::vector<FieldElement> pt(names.size(), FieldElement::zero(f));
  std::uint64_t brute = 0, gb = 0, mismatch = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t r = idx;
    for (std::size_t v : vars) {
      pt[v] = FieldElement(f, r % p);
      r /= p;
    }
    bool on = true;
    for (const auto& e : eqs)
      if (!e.evaluate(pt).is_zero()) on = false;
    bool sing = false;
    if (on) {
      std::vector<std::vector<FieldElement>> m;
      for (const auto& row : jac) {
        std::vector<FieldElement> vals;
        for (const auto& d : row) vals.push_back(d.evaluate(pt));
        m.push_back(vals);
      }
      sing = rank_mod(m) < static_cast<int>(eqs.size());
    }
    bool in_j = true;
    for (const auto& g : J.basis)
      if (!g.evaluate(pt).is_zero()) in_j = false;
    brute += sing;
    gb += in_j;
    mismatch += sing != in_j;
  }
  if (detail) *detail = std::to_string(brute) + " singular points by enumeration, " + std::to_string(gb) + " from the basis";
  return mismatch == 0;
}

std::vector<FPoly> nonzero_gens(const Ideal<FieldElement>& I) {
  std::vector<FPoly> out;
  for (const auto& g : I.generators())
    if (!g.is_zero()) out.push_back(g);
  return out;
}

template <class K>
Polynomial<K> random_poly(const RingPtr<K>& ring, std::mt19937_64& rng, int terms, unsigned maxdeg,
                          const std::function<K(long)>& coeff) {
  Polynomial<K> f(ring);
  const std::size_t n = ring->vars().size();
  for (int i = 0; i < terms; ++i) {
    std::vector<std::uint32_t> e(n, 0);
    unsigned budget = static_cast<unsigned>(rng() % (maxdeg + 1));
    for (unsigned b = 0; b < budget; ++b) ++e[rng() % n];
    const long c = static_cast<long>(rng() % 9) - 4;
    if (c == 0) continue;
    f += Polynomial<K>::monomial(ring, Monomial(e), coeff(c));
  }
  return f;
}

template <class K>
void gb_properties(Outcome& o, const RingPtr<K>& ring, std::mt19937_64& rng, const std::function<K(long)>& coeff,
                   int trials) {
  for (int t = 0; t < trials; ++t) {
    std::vector<Polynomial<K>> gens;
    const std::size_t ngens = 2 + rng() % 2;
    while (gens.size() < ngens) {
      auto g = random_poly<K>(ring, rng, 3, 2, coeff);
      if (!g.is_constant()) gens.push_back(g);
    }
    Ideal<K> I(ring, gens);
    const auto G = buchberger(I);
    // Confluence: every reduction path gives the same remainder.
    for (int k = 0; k < 3; ++k) {
      auto f = random_poly<K>(ring, rng, 4, 3, coeff);
      const auto nf = normal_form(f, G);
      for (int r = 0; r < 3; ++r) {
        std::mt19937_64 path(rng());
        if (!(normal_form(f, G, &path) == nf)) {
          o.require(false, "reduction is not confluent");
          return;
        }
      }
      // Membership round trip: f - NF(f) lies in I, and so does sum h_i g_i.
      if (!ideal_membership(f - nf, I)) o.require(false, "f - NF(f) not in the ideal");
    }
    Polynomial<K> comb(ring);
    for (const auto& g : gens) comb += random_poly<K>(ring, rng, 2, 1, coeff) * g;
    if (!ideal_membership(comb, I)) o.require(false, "combination of generators not in the ideal");
    for (const auto& g : gens)
      if (!normal_form(g, G).is_zero()) o.require(false, "generator does not reduce to zero");
    const auto G2 = buchberger(G.ideal());
    if (!(G2.basis == G.basis)) o.require(false, "reduced basis is not idempotent");
  }
}

}  // namespace

int main() {
  std::cout << "acceptance run" << std::endl;

  criterion(1, "census of the octic family at t = 5", kLimit1, [](Outcome& o) {
    auto sig = incidence_signature(octic_at(5));
    o.require(sig.lines_of(3) == 1, "triple lines != 1");
    o.require(!sig.lines.empty() && sig.lines.front().line.to_string() == "{x = 0, y = 0}",
              "triple line is not {x = y = 0}");
    o.require(sig.lines_of(2) == 25, "double lines != 25");
    o.require(sig.points_of(4, false) == 6, "fourfold points off the triple line != 6");
    o.require(sig.points_of(4, true) == 5, "fourfold points on the triple line != 5");
  });

  criterion(2, "degenerate parameters {0, 1, 2, infinity}; fivefold point at t = 0", kLimit2, [](Outcome& o) {
    auto d = degenerate_parameters(reference_octic());
    o.require(d.values == std::vector<Rational>{0, 1, 2}, "rational degenerate values != {0, 1, 2}");
    o.require(d.infinity, "infinity flag not set");
    o.require(!d.residual, "irrational degeneracies not excluded");
    o.require(fivefold_at_origin(incidence_signature(octic_at(0))), "no fivefold point (0:0:0:1) on P1..P5");
  });

  criterion(3, "pencil cross-ratio in the orbit of 2, j = 1728 over Q and mod 7, 11", kLimit3, [](Outcome& o) {
    auto l3 = LineP3::meet(Plane::from_integers(1, 0, 0, 0), Plane::from_integers(0, 1, 0, 0));
    auto at0 = octic_at(0);
    auto P = span_line_line(l3, LineP3::meet(at0[3], at0[4]));
    const Plane planes[4] = {at0[0], at0[1], at0[2], P};
    BranchQuadruple<Rational> q;
    for (std::size_t i = 0; i < 4; ++i) {
      auto [a, b] = pencil_coordinate(l3, planes[i]);
      q[i] = {Rational(a), Rational(b)};
    }
    const Rational l = cross_ratio(q);
    const std::vector<Rational> orbit{l, 1 - l, 1 / l, (l - 1) / l, l / (l - 1), 1 / (1 - l)};
    o.require(std::count(orbit.begin(), orbit.end(), Rational(2)) > 0, "cross-ratio orbit misses 2");
    o.require(j_from_lambda(l) == 1728, "j over Q != 1728");
    for (std::uint32_t p : {7u, 11u}) {
      auto r = run_local_pipeline(p, Rational(static_cast<unsigned long>(p)));
      o.require(r.j_is_1728 && r.j_value == std::to_string(1728 % p), "pinch-point j != 1728 mod " + std::to_string(p));
    }
  });

  {
    double worst = 0;
    criterion(4, "resolution pipeline certificates for p = 7, 11 (t = p)", 2 * kLimit4PerPrime, [&](Outcome& o) {
      for (std::uint32_t p : {7u, 11u}) {
        const auto t0 = std::chrono::steady_clock::now();
        auto r = run_local_pipeline(p, Rational(static_cast<unsigned long>(p)));
        worst = std::max(worst, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        const std::string at = " (p = " + std::to_string(p) + ")";
        o.require(r.step2_matches, "step-2 charts differ" + at);
        o.require(r.generic_smooth, "generic fiber not smooth" + at);
        o.require(r.singular_line_is_L && r.singular_line_charts == std::vector<std::string>{"T=1"},
                  "central singular locus is not L" + at);
        o.require(r.pinch_form_degree == 4 && r.pinch_form_squarefree, "pinch form not squarefree of degree 4" + at);
        o.require(r.ok(), "a pipeline stage failed" + at);
      }
      o.require(worst <= kLimit4PerPrime, "a single prime exceeded its limit");
    });
  }

  criterion(5, "fast counting engines equal the naive oracle", kLimit5, [](Outcome& o) {
    std::mt19937_64 rng(5);
    auto ring = make_ring<Rational>({"x", "y", "z", "v"});
    for (int trial = 0; trial < 50; ++trial) {
      CountTask task;
      task.p = 7;
      if (trial % 2 == 0) {
        std::vector<Plane> planes;
        while (planes.size() < 8) {
          long c[4];
          for (auto& v : c) v = static_cast<long>(rng() % 7) - 3;
          if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0) continue;
          planes.push_back(Plane::from_integers(c[0], c[1], c[2], c[3]));
        }
        task = octic_task(planes, 7);
      } else {
        QPoly f(ring);
        while (f.is_zero())
          for (unsigned a = 0; a <= 8; ++a)
            for (unsigned b = 0; a + b <= 8; ++b)
              for (unsigned c = 0; a + b + c <= 8; ++c)
                if (rng() % 3 == 0)
                  f += QPoly::monomial(ring, Monomial(std::vector<std::uint32_t>{a, b, c, 8 - a - b - c}),
                                       Rational(static_cast<long>(rng() % 7)));
        task.kind = CountKind::DoubleCoverP3;
        task.polys = {f};
      }
      if (run_count(task).N != naive_oracle(task).N) o.require(false, "random octic " + std::to_string(trial));
    }
    for (long t : {0L, 5L, 7L})
      for (int k : {1, 2}) {
        auto task = octic_task(octic_at(Rational(t)), 7, k);
        if (run_count(task, 2).N != naive_oracle(task).N)
          o.require(false, "octic t = " + std::to_string(t) + " over F_7^" + std::to_string(k));
      }
    for (long l = 2; l < 7; ++l) {
      auto task = legendre_task(Rational(l), 7);
      if (run_count(task).N != naive_oracle(task).N) o.require(false, "Legendre lambda = " + std::to_string(l));
    }
  });

  criterion(6, "octic over F_343 on 4 threads, deterministic", kLimit6, [](Outcome& o) {
    auto task = octic_task(octic_at(7), 7, 3);
    const auto a = run_count(task, 4);
    const auto b = run_count(task, 4);
    o.require(a.q == 343, "field size != 343");
    o.require(a.N == b.N, "count differs between runs");
    std::cout << "  N(F_343) = " << a.N << ", first run " << a.seconds << " s" << std::endl;
  });

  criterion(7, "Legendre lambda = 2: a_p = 0, predicted N_2, weight-1 buckets", kLimit7, [](Outcome& o) {
    for (std::uint32_t p : {7u, 11u, 19u, 23u}) {
      const Integer P(static_cast<unsigned long>(p));
      const auto n1 = run_count(legendre_task(2, p)).N;
      auto z = zeta_elliptic_from_count(Integer(static_cast<unsigned long>(n1)), P);
      o.require(frobenius_trace(z) == 0, "a_p != 0 for p = " + std::to_string(p));
      auto w = weight_buckets(z, kWeightTol);
      o.require(w.populated() == std::set<int>{1} && w.count(1) == 2 && w.unassigned.empty(),
                "buckets != {1: 2} for p = " + std::to_string(p));
      if (p == 7 || p == 11) {
        const auto brute = naive_oracle(legendre_task(2, p, 2)).N;
        o.require(predict_count(z, 2) == Integer(static_cast<unsigned long>(brute)),
                  "predicted N_2 differs from enumeration for p = " + std::to_string(p));
      }
    }
  });

  criterion(8, "weight-3 obstruction 4 vs 2, stable under 100 low-weight factors", kLimit8, [](Outcome& o) {
    const Integer q = 7, q3 = 343;
    auto a = ZetaFunction::make(intpoly_mul({1, 0, q3}, {1, 0, q3}), {1}, q);
    auto b = ZetaFunction::make({1, 0, q3}, {1}, q);
    auto v = weight3_obstruction(a, b);
    o.require(v.verdict() == "obstructed" && v.weight3_a == 4 && v.weight3_b == 2, "base verdict");
    std::mt19937_64 rng(8);
    ZetaFunction wa = a, wb = b;
    for (int i = 0; i < 100; ++i) {
      auto fa = random_low_weight_factor(q, rng);
      auto fb = random_low_weight_factor(q, rng);
      o.require(weil_check(fa, {0, 1}, kWeightTol) && weil_check(fb, {0, 1}, kWeightTol), "factor outside weights 0, 1");
      if (!weight3_obstruction(a * fa, b).obstructed || !weight3_obstruction(a, b * fb).obstructed ||
          !weight3_obstruction(a * fa, b * fb).obstructed)
        o.require(false, "verdict changed under factor " + std::to_string(i));
      if (i < 10) {
        wa = wa * fa;
        wb = wb * fb;
      }
    }
    o.require(weight3_obstruction(wa, wb).obstructed, "verdict changed under accumulated factors");
  });

  criterion(9, "E1 ledger: h^3 = 4 for every rank assignment, forced ranks zero on the h = 3 row", kLimit9,
            [](Outcome& o) {
              auto page = build_E1(two_component_instance(2, 2, 0), 7);
              o.require(page.row(3) == std::vector<int>{0, 4, 0}, "row s = 3 != (0, 4, 0)");
              auto all = consistency_search(page, {});
              o.require(!all.empty(), "no valid rank assignment");
              for (const auto& r : all)
                if (abutment_dims(page, r)[3] != 4) o.require(false, "h^3 != 4 for some assignment");
              auto forced = consistency_search(page, {{3, 4}});
              o.require(!forced.empty(), "target h^3 = 4 unsatisfiable");
              for (const auto& r : forced)
                for (const auto& [pos, rk] : r)
                  if (pos.second == 3 && rk != 0) o.require(false, "nonzero rank on the h = 3 row");
              // With b2(C) > 0 the neighbouring rows feed h^3: h^3 = 4 + 2 b2(C) - ranks.
              for (int b2c = 1; b2c <= 2; ++b2c) {
                auto wide = build_E1(two_component_instance(2, 2, 0, 0, 0, b2c), 7);
                for (const auto& r : consistency_search(wide, {})) {
                  const int ra = r.count({-1, 4}) ? r.at({-1, 4}) : 0;
                  const int rb = r.count({0, 2}) ? r.at({0, 2}) : 0;
                  if (abutment_dims(wide, r)[3] != 4 + 2 * b2c - ra - rb) o.require(false, "b2 sweep identity");
                }
              }
            });

  criterion(10, "kernel property suites", kLimit10, [](Outcome& o) {
    // Field axioms and multiplicativity of the quadratic character, q <= 49.
    for (std::uint32_t q = 7; q <= 49; ++q) {
      std::uint32_t p = 0;
      int k = 0;
      if (is_prime(q)) {
        p = q;
        k = 1;
      } else if (q == 49) {
        p = 7;
        k = 2;
      } else {
        continue;
      }
      const FieldSpec& f = FieldSpec::get(p, k);
      std::vector<FieldElement> el;
      for (std::uint64_t i = 0; i < f.q(); ++i) el.push_back(FieldElement::from_index(f, i));
      const FieldElement zero = FieldElement::zero(f), one = FieldElement::one(f);
      bool ok = true;
      for (const auto& a : el) {
        ok = ok && a + zero == a && a * one == a && a + (-a) == zero;
        if (!a.is_zero()) ok = ok && a * a.inverse() == one;
        for (const auto& b : el) {
          ok = ok && a + b == b + a && a * b == b * a;
          ok = ok && quadratic_character(a * b) == quadratic_character(a) * quadratic_character(b);
          for (std::size_t c = 0; c < el.size(); c += 5)
            ok = ok && (a * b) * el[c] == a * (b * el[c]) && a * (b + el[c]) == a * b + a * el[c] &&
                 (a + b) + el[c] == a + (b + el[c]);
        }
      }
      o.require(ok, "field axioms or character multiplicativity fail for q = " + std::to_string(q));
    }

    // Groebner confluence and membership on 200 random small ideals.
    std::mt19937_64 rng(10);
    auto qring = make_ring<Rational>({"x", "y", "z"});
    gb_properties<Rational>(o, qring, rng, [](long c) { return Rational(c); }, 100);
    const FieldSpec& f7 = FieldSpec::get(7);
    auto fring = make_fp_ring({"x", "y", "z"}, f7);
    gb_properties<FieldElement>(o, fring, rng, [&](long c) { return FieldElement(f7, ((c % 7) + 7) % 7); }, 100);

    // Strict-transform soundness and singular loci on every chart of the pipeline, p = 7.
    const std::uint32_t p = 7;
    const auto planes = octic_at(7);
    int charts_checked = 0;
    std::string t1_detail;
    for (int near : {1, 2}) {
      const std::string tag = " (near m" + std::to_string(near) + ")";
      auto s1 = step1_local_model(planes, p, near);
      {
        const auto& ring = s1.chart.ring;
        std::map<std::string, QPoly> down = s1.blowdown;
        const QPoly xa = var(ring, "x").scaled(Rational(1 / s1.alpha));
        down["u"] = xa.pow(static_cast<unsigned>(s1.cover_power)) * var(ring, "u");
        const QPoly lhs = substitute(var(ring, "u").pow(2) - change_ring(s1.octic_affine, ring), down, ring);
        const QPoly rhs = xa.pow(2 * static_cast<unsigned>(s1.cover_power)) * s1.chart.full_equation();
        o.require(lhs == rhs, "step-1 blow-down identity" + tag);
      }
      std::vector<ChartMap<Rational>> maps;
      auto step2 = blowup_double_cover(s1.chart, "x", "y", &maps);
      for (std::size_t i = 0; i < step2.size(); ++i) {
        const QPoly pulled = substitute(s1.chart.full_equation(), maps[i].images);
        const QPoly e = var(step2[i].ring, maps[i].exceptional).pow(2 * static_cast<unsigned>(maps[i].cover_power));
        o.require(pulled == e * step2[i].full_equation(), "step-2 strict transform " + step2[i].name + tag);
      }
      const QChart& B = step2[1];
      const QPoly x = B.factors[0], z = B.factors[1], g = B.factors[2];
      auto raw = graph_closure_blowup(B, {x * z, x * g, z * g, var(B.ring, "u")}, {"X", "Y", "Z", "T"});
      std::vector<IdealChart<Rational>> step3;
      for (const auto& c : raw) {
        o.require(ideal_membership(change_ring(B.equation(), c.ideal.ring()), c.ideal),
                  "chart " + c.name + " does not lie over step 2" + tag);
        auto red = reduce_chart(c, {"u", "x", "z", "X", "Y", "Z", "T"});
        std::map<std::string, QPoly> img;
        for (const auto& [v, im] : red.eliminated) img[v] = im;
        const QPoly back = substitute(change_ring(B.equation(), c.ideal.ring()), img, red.ideal.ring());
        o.require(ideal_membership(back, red.ideal), "reduced chart " + c.name + " does not lie over step 2" + tag);
        step3.push_back(red);
      }

      const FieldSpec& spec = FieldSpec::get(p);
      std::vector<FChart> dcharts{central_fiber(s1.chart, spec)};
      for (const auto& c : step2) dcharts.push_back(central_fiber(c, spec));
      for (const auto& c : dcharts) {
        std::string detail;
        ++charts_checked;
        if (!singular_points_agree({c.equation()}, singular_locus(c), spec, &detail))
          o.require(false, "singular points of " + c.name + tag + ": " + detail);
      }
      for (const auto& c : step3) {
        auto cf = central_fiber(c, spec);
        std::string detail;
        ++charts_checked;
        if (!singular_points_agree(nonzero_gens(cf.ideal), singular_locus(cf), spec, &detail))
          o.require(false, "singular points of " + c.name + tag + ": " + detail);
        if (c.name == "T=1" && near == 1) t1_detail = detail;
      }
    }
    std::cout << "  " << charts_checked << " charts enumerated over F_7; T=1: " << t1_detail << std::endl;
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
