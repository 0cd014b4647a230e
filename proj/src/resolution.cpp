#include "octic/resolution.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "octic/elliptic.hpp"
#include "octic/errors.hpp"
#include "octic/univariate.hpp"

namespace octic {

template <class K>
Polynomial<K> DoubleCoverChart<K>::branch() const {
  Polynomial<K> b = Polynomial<K>::constant(ring, 1);
  for (const auto& f : factors) b *= f;
  return b;
}

template <class K>
Polynomial<K> DoubleCoverChart<K>::equation() const {
  return Polynomial<K>::variable(ring, cover_var).pow(2) - branch();
}

template <class K>
Polynomial<K> DoubleCoverChart<K>::full_equation() const {
  return Polynomial<K>::variable(ring, cover_var).pow(2) - branch() * residual;
}

namespace {

template <class K>
Polynomial<K> var(const RingPtr<K>& ring, const std::string& name) {
  return Polynomial<K>::variable(ring, name);
}

template <class K>
Polynomial<K> det(const std::vector<std::vector<Polynomial<K>>>& m, const RingPtr<K>& ring) {
  const std::size_t n = m.size();
  if (n == 0) return Polynomial<K>::constant(ring, 1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Polynomial<K> out(ring);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Polynomial<K>>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial<K>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Polynomial<K> term = m[0][j] * det(minor, ring);
    if (j % 2) out -= term;
    else out += term;
  }
  return out;
}

// All k x k minors of the Jacobian of `fs` with respect to every variable.
template <class K>
std::vector<Polynomial<K>> jacobian_minors(const std::vector<Polynomial<K>>& fs, const RingPtr<K>& ring) {
  const std::size_t k = fs.size(), n = ring->nvars();
  std::vector<Polynomial<K>> out;
  if (k == 0 || k > n) return out;
  std::vector<std::vector<Polynomial<K>>> jac(k);
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& v : ring->vars()) jac[i].push_back(partial_derivative(fs[i], v));
  std::vector<std::size_t> cols(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t start) {
    if (pos == k) {
      std::vector<std::vector<Polynomial<K>>> sub(k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c : cols) sub[i].push_back(jac[i][c]);
      Polynomial<K> d = det(sub, ring);
      if (!d.is_zero()) out.push_back(std::move(d));
      return;
    }
    for (std::size_t c = start; c < n; ++c) {
      cols[pos] = c;
      rec(pos + 1, c + 1);
    }
  };
  rec(0, 0);
  return out;
}

template <class K>
std::vector<Polynomial<K>> nonzero(const std::vector<Polynomial<K>>& gs) {
  std::vector<Polynomial<K>> out;
  for (const auto& g : gs)
    if (!g.is_zero()) out.push_back(g);
  return out;
}

bool is_scaled_variable(const QPoly& f, const std::string& v, Rational* scale) {
  if (f.size() != 1) return false;
  const auto& t = f.terms()[0];
  const std::size_t i = f.ring()->index(v);
  if (t.mono.degree() != 1 || t.mono[i] != 1) return false;
  *scale = t.coeff;
  return true;
}

}  // namespace

// --------------------------------------------------------------- step 1

Step1Model step1_local_model(const std::vector<Plane>& planes, std::uint32_t p, int near) {
  if (near != 1 && near != 2) throw DomainError("step 1 chart selector must be 1 or 2");
  const FieldSpec& spec = FieldSpec::get(p);
  auto affine = make_ring<Rational>({"x", "y", "z"});
  auto rb = make_ring<Rational>({"u", "e", "a", "z"});
  auto rf = make_ring<Rational>({"u", "x", "y", "z"});

  Step1Model model;
  model.octic_affine = QPoly::constant(affine, 1);
  const QPoly e = var(rb, "e"), a = var(rb, "a");
  const QPoly X = near == 1 ? e * a : e;
  const QPoly Y = near == 1 ? e : e * a;
  const std::size_t ie = rb->index("e");

  std::uint32_t total = 0;
  Rational units = 1;
  std::vector<QPoly> residual_factors;
  std::optional<QPoly> a_factor, z_factor, mixed;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const auto c = planes[i].as_rational();
    model.octic_affine *= QPoly::constant(affine, c[0]) * var(affine, "x") + QPoly::constant(affine, c[1]) * var(affine, "y") +
                          QPoly::constant(affine, c[2]) * var(affine, "z") + QPoly::constant(affine, c[3]);
    QPoly f = QPoly::constant(rb, c[0]) * X + QPoly::constant(rb, c[1]) * Y + QPoly::constant(rb, c[2]) * var(rb, "z") +
              QPoly::constant(rb, c[3]);
    if (f.is_zero()) throw GeometryError("plane " + std::to_string(i + 1) + " contains the blown-up chart");
    const std::uint32_t k = f.order_in(ie);
    f = exact_divide_by_var_power(f, "e", k);
    total += k;
    const int index = static_cast<int>(i) + 1;
    if (f.is_constant()) {
      units *= f.constant_term();
      model.residual_planes.push_back(index);
      continue;
    }
    const Rational c0 = f.constant_term();
    const bool local = is_zero_coeff(c0) || FiniteDomain{&spec}.from_rational(c0).is_zero();
    if (!local) {
      residual_factors.push_back(f);
      model.residual_planes.push_back(index);
      continue;
    }
    model.local_planes.push_back(index);
    Rational s;
    if (is_scaled_variable(f, "a", &s)) {
      if (a_factor) throw GeometryError("two local components of the form a = 0");
      a_factor = f;
    } else if (is_scaled_variable(f, "z", &s)) {
      if (z_factor) throw GeometryError("two local components of the form z = 0");
      z_factor = f;
    } else {
      if (mixed) throw GeometryError("more than one non-coordinate component through the chart origin");
      mixed = f;
    }
  }
  if (!a_factor || !z_factor || !mixed)
    throw GeometryError("chart origin is not of the expected type (need components a, z and one mixed plane)");
  if (total % 2 == 0) throw GeometryError("exceptional divisor is not in the branch locus");

  // mixed = alpha0*e + beta0*e*a + gamma*z + c0
  Rational alpha0 = 0, beta0 = 0, gamma = 0, c0 = 0;
  for (const auto& t : mixed->terms()) {
    const auto& m = t.mono;
    if (m.is_one()) c0 = t.coeff;
    else if (m.degree() == 1 && m[ie] == 1) alpha0 = t.coeff;
    else if (m.degree() == 1 && m[rb->index("z")] == 1) gamma = t.coeff;
    else if (m.degree() == 2 && m[ie] == 1 && m[rb->index("a")] == 1) beta0 = t.coeff;
    else throw GeometryError("mixed component " + mixed->to_string() + " has an unexpected term");
  }
  if (is_zero_coeff(alpha0) || is_zero_coeff(beta0) || is_zero_coeff(gamma))
    throw GeometryError("mixed component " + mixed->to_string() + " is not of the form alpha*e + beta*e*a + z + c");
  model.alpha = Rational(alpha0 / gamma);
  model.beta = Rational(beta0 / gamma);
  const Rational c0n = Rational(c0 / gamma);
  model.cover_power = static_cast<int>(total / 2);

  model.blowup_chart.name = near == 1 ? "step1/m1" : "step1/m2";
  model.blowup_chart.ring = rb;
  model.blowup_chart.factors = {e, *a_factor, *z_factor, *mixed};
  model.blowup_chart.residual = QPoly::constant(rb, units);
  for (const auto& f : residual_factors) model.blowup_chart.residual *= f;
  model.blowup_chart.exceptional = {{"e", static_cast<int>(total)}};

  // e = x/alpha, a = 2*alpha*y/beta
  const Rational inv_alpha = Rational(1 / model.alpha);
  const Rational a_scale = Rational(2 * model.alpha / model.beta);
  std::map<std::string, QPoly> to_final{{"u", var(rf, "u")},
                                        {"e", var(rf, "x").scaled(inv_alpha)},
                                        {"a", var(rf, "y").scaled(a_scale)},
                                        {"z", var(rf, "z")}};
  const QPoly x = var(rf, "x"), y = var(rf, "y"), z = var(rf, "z");
  QPoly h = x + QPoly::constant(rf, 2) * x * y + z + QPoly::constant(rf, c0n);
  QPoly product = x * y * z * h;
  QPoly original = substitute(model.blowup_chart.branch() * model.blowup_chart.residual, to_final, rf);
  Rational scale = 1;
  // original = scale * product * residual_rest; collect the scale from the
  // local factors, all of which are constant multiples of x, y, z, h.
  for (const auto& f : model.blowup_chart.factors) {
    QPoly img = substitute(f, to_final, rf);
    const QPoly* target = nullptr;
    QPoly candidates[] = {x, y, z, h};
    for (const auto& c : candidates)
      if (img.size() == c.size() && !img.is_zero()) {
        Rational r = Rational(img.terms()[0].coeff / c.terms()[0].coeff);
        if (img == c.scaled(r)) {
          scale *= r;
          target = &c;
          break;
        }
      }
    if (!target) throw GeometryError("rescaled component " + img.to_string() + " has no match");
  }
  model.chart.name = model.blowup_chart.name;
  model.chart.ring = rf;
  model.chart.factors = {x, y, z, h};
  model.chart.residual = substitute(model.blowup_chart.residual, to_final, rf).scaled(scale);
  model.chart.exceptional = {{"x", static_cast<int>(total)}};
  model.chart.history = {near == 1 ? "blow-up of {x = y = 0}: x -> e*a, y -> e" : "blow-up of {x = y = 0}: x -> e, y -> e*a",
                         "rescale x = alpha*e, y = beta*a/(2*alpha)"};
  if (!(model.chart.branch() * model.chart.residual == original))
    throw GeometryError("rescaled chart does not reproduce the strict transform");

  const Rational two_over_beta = Rational(2 / model.beta);
  QPoly xo = x.scaled(two_over_beta) * y, yo = x.scaled(inv_alpha);
  if (near == 2) std::swap(xo, yo);
  model.blowdown = {{"x", xo}, {"y", yo}, {"z", z}};
  return model;
}

// --------------------------------------------------------------- blow-ups

template <class K>
std::vector<DoubleCoverChart<K>> blowup_double_cover(const DoubleCoverChart<K>& chart, const std::string& a,
                                                     const std::string& b, std::vector<ChartMap<K>>* maps) {
  const auto& ring = chart.ring;
  if (!ring->find(a) || !ring->find(b) || a == b || a == chart.cover_var || b == chart.cover_var)
    throw UnsupportedError("unsupported-center: blow-up center must be a pair of distinct coordinate variables");
  std::vector<DoubleCoverChart<K>> out;
  for (const auto& [exc, other] : {std::pair{a, b}, std::pair{b, a}}) {
    std::map<std::string, Polynomial<K>> images{{other, var(ring, exc) * var(ring, other)}};
    const std::size_t ie = ring->index(exc);
    DoubleCoverChart<K> c;
    c.name = chart.name + "/" + other + "->" + exc + "*" + other;
    c.ring = ring;
    c.cover_var = chart.cover_var;
    c.exceptional = chart.exceptional;
    c.history = chart.history;
    c.history.push_back("blow-up of {" + a + " = " + b + " = 0}: " + other + " -> " + exc + "*" + other);
    std::uint32_t total = 0;
    Polynomial<K> units = Polynomial<K>::constant(ring, 1);
    for (const auto& f : chart.factors) {
      Polynomial<K> g = substitute(f, images);
      const std::uint32_t k = g.order_in(ie);
      g = exact_divide_by_var_power(g, exc, k);
      total += k;
      if (g.is_constant()) units *= g;
      else c.factors.push_back(g);
    }
    Polynomial<K> res = substitute(chart.residual, images);
    const std::uint32_t kr = res.order_in(ie);
    if (kr) {
      res = exact_divide_by_var_power(res, exc, kr);
      total += kr;
    }
    c.residual = res * units;
    if (total % 2) c.factors.insert(c.factors.begin(), var(ring, exc));
    for (auto& m : c.exceptional)
      if (m.var == exc || m.var == other) m.var = m.var + "'";
    c.exceptional.push_back({exc, static_cast<int>(total)});
    if (maps) {
      ChartMap<K> cm;
      cm.images = images;
      cm.exceptional = exc;
      cm.cover_power = static_cast<int>(total / 2);
      cm.images[chart.cover_var] = var(ring, exc).pow(total / 2) * var(ring, chart.cover_var);
      maps->push_back(std::move(cm));
    }
    out.push_back(std::move(c));
  }
  return out;
}

template <class K>
IdealChart<K> graph_closure_chart(const DoubleCoverChart<K>& chart, const std::vector<Polynomial<K>>& gens,
                                  const std::vector<std::string>& ratio_names, std::size_t index) {
  if (gens.size() != ratio_names.size() || index >= gens.size())
    throw DomainError("graph closure needs one ratio name per generator");
  std::vector<std::string> vars = chart.ring->vars();
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (j == index) continue;
    if (chart.ring->find(ratio_names[j])) throw DomainError("ratio name " + ratio_names[j] + " clashes with a chart variable");
    vars.push_back(ratio_names[j]);
  }
  auto ring = make_ring<K>(vars, chart.ring->domain());
  const Polynomial<K> gi = change_ring(gens[index], ring);
  std::vector<Polynomial<K>> rel{change_ring(chart.equation(), ring)};
  for (std::size_t j = 0; j < gens.size(); ++j)
    if (j != index) rel.push_back(change_ring(gens[j], ring) - var(ring, ratio_names[j]) * gi);
  IdealChart<K> out{ratio_names[index] + "=1", saturate_by(Ideal<K>(ring, rel), gi), chart.exceptional, chart.history, {}};
  out.exceptional.push_back({"E", 1});
  out.history.push_back("graph closure, chart " + out.name);
  return out;
}

template <class K>
std::vector<IdealChart<K>> graph_closure_blowup(const DoubleCoverChart<K>& chart, const std::vector<Polynomial<K>>& gens,
                                                const std::vector<std::string>& ratio_names) {
  std::vector<IdealChart<K>> out;
  bool any = false;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    out.push_back(graph_closure_chart(chart, gens, ratio_names, i));
    const auto& g = out.back().ideal.generators();
    if (!(g.size() == 1 && g[0].is_constant() && !g[0].is_zero())) any = true;
  }
  if (!any) throw GeometryError("graph closure is empty in every chart");
  return out;
}

template <class K>
IdealChart<K> reduce_chart(const IdealChart<K>& chart, const std::vector<std::string>& preferred) {
  auto red = reduce_embedding(chart.ideal, preferred);
  IdealChart<K> out{chart.name, red.ideal, chart.exceptional, chart.history, chart.eliminated};
  for (auto& e : red.eliminated) out.eliminated.push_back(e);
  if (!red.eliminated.empty()) out.history.push_back("embedding reduced");
  return out;
}

// --------------------------------------------------------------- reduction mod p

FChart central_fiber(const QChart& chart, const FieldSpec& spec) {
  auto ring = make_fp_ring(chart.ring->vars(), spec);
  FChart out;
  out.name = chart.name;
  out.ring = ring;
  out.cover_var = chart.cover_var;
  for (const auto& f : chart.factors) out.factors.push_back(reduce_mod(f, ring));
  out.residual = reduce_mod(chart.residual, ring);
  out.exceptional = chart.exceptional;
  out.history = chart.history;
  out.history.push_back("reduced mod " + std::to_string(spec.p()));
  return out;
}

IdealChart<FieldElement> central_fiber(const IdealChart<Rational>& chart, const FieldSpec& spec) {
  auto ring = make_fp_ring(chart.ideal.ring()->vars(), spec);
  std::vector<FPoly> gens;
  for (const auto& g : chart.ideal.generators()) gens.push_back(reduce_mod(g, ring));
  IdealChart<FieldElement> out{chart.name, Ideal<FieldElement>(ring, gens), chart.exceptional, chart.history, {}};
  for (const auto& [v, img] : chart.eliminated) out.eliminated.push_back({v, reduce_mod(img, ring)});
  out.history.push_back("reduced mod " + std::to_string(spec.p()));
  return out;
}

// --------------------------------------------------------------- singularities

template <class K>
Ideal<K> jacobian_ideal(const Ideal<K>& chart) {
  auto eqs = nonzero(chart.generators());
  if (eqs.size() > 2) throw UnsupportedError("singular locus only implemented for at most two equations");
  const auto& ring = chart.ring();
  if (eqs.empty()) return Ideal<K>(ring, {Polynomial<K>::constant(ring, 1)});
  std::vector<Polynomial<K>> gens = eqs;
  for (auto& m : jacobian_minors(eqs, ring)) gens.push_back(std::move(m));
  return Ideal<K>(ring, gens);
}

template <class K>
GroebnerBasis<K> singular_locus(const IdealChart<K>& chart) {
  return buchberger(jacobian_ideal(chart.ideal));
}

template <class K>
GroebnerBasis<K> singular_locus(const DoubleCoverChart<K>& chart) {
  return buchberger(jacobian_ideal(Ideal<K>(chart.ring, {chart.equation()})));
}

template <class K>
bool is_smooth(const IdealChart<K>& chart) {
  return singular_locus(chart).is_unit();
}

template <class K>
bool is_smooth(const DoubleCoverChart<K>& chart) {
  return singular_locus(chart).is_unit();
}

template <class K>
SncReport<K> branch_is_snc(const DoubleCoverChart<K>& chart) {
  SncReport<K> rep;
  const std::size_t r = chart.factors.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << r); ++mask) {
    std::vector<Polynomial<K>> fs;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) fs.push_back(chart.factors[i]);
    std::vector<Polynomial<K>> gens = fs;
    for (auto& m : jacobian_minors(fs, chart.ring)) gens.push_back(std::move(m));
    if (buchberger(Ideal<K>(chart.ring, gens)).is_unit()) continue;
    rep.snc = false;
    std::string s = "{";
    for (std::size_t i = 0; i < fs.size(); ++i) s += (i ? ", " : "") + fs[i].to_string();
    rep.failures.push_back(s + "}: not transversal");
  }
  return rep;
}

template <class K>
LocusComparison<K> compare_locus(const GroebnerBasis<K>& J, const Ideal<K>& line_ideal) {
  LocusComparison<K> c;
  const Ideal<K> jid = J.ideal();
  c.line_in_locus = true;
  for (const auto& g : line_ideal.generators())
    if (!radical_membership(g, jid)) c.line_in_locus = false;
  c.locus_in_line = true;
  for (const auto& g : J.basis)
    if (!radical_membership(g, line_ideal)) c.locus_in_line = false;
  return c;
}

// --------------------------------------------------------------- pinch points

TransverseDiscriminant transverse_discriminant(const FPoly& h, const std::string& line_var,
                                               const std::vector<std::string>& transverse) {
  const auto& ring = h.ring();
  const FieldSpec& spec = *ring->domain().spec;
  std::map<std::string, FPoly> zero;
  for (const auto& v : transverse) zero[v] = FPoly(ring);
  for (const auto& v : ring->vars())
    if (v != line_var && !zero.count(v))
      throw GeometryError("variable " + v + " is neither the line parameter nor transverse");
  if (!substitute(h, zero).is_zero()) throw GeometryError("equation does not vanish along the line");
  for (const auto& v : transverse)
    if (!substitute(partial_derivative(h, v), zero).is_zero())
      throw GeometryError("equation is not singular along the line (d/d" + v + " is nonzero there)");
  auto uni = make_fp_ring({line_var}, spec);
  TransverseDiscriminant td;
  std::vector<std::vector<FPoly>> H(transverse.size());
  for (std::size_t i = 0; i < transverse.size(); ++i)
    for (std::size_t j = 0; j < transverse.size(); ++j) {
      FPoly hij = substitute(partial_derivative(partial_derivative(h, transverse[i]), transverse[j]), zero);
      H[i].push_back(change_ring(hij, uni));
    }
  td.hessian = H;
  td.hessian_det = det(H, uni);
  td.degree = td.hessian_det.is_zero() ? -1 : static_cast<int>(td.hessian_det.total_degree());
  td.squarefree = !td.hessian_det.is_zero() && dense_squarefree(dense_from(td.hessian_det));
  return td;
}

int BinaryForm::infinity_multiplicity() const {
  const int d = affine.is_zero() ? -1 : static_cast<int>(affine.total_degree());
  return degree - d;
}

bool BinaryForm::squarefree() const {
  if (affine.is_zero()) return false;
  return infinity_multiplicity() <= 1 && dense_squarefree(dense_from(affine));
}

int BinaryForm::distinct_roots() const {
  if (affine.is_zero()) throw DomainError("zero binary form");
  return dense_squarefree_part(dense_from(affine)).degree() + (infinity_multiplicity() > 0 ? 1 : 0);
}

FieldElement pinch_point_j_check(const BinaryForm& form) {
  if (form.degree != 4) throw DegeneracyError("pinch form has degree " + std::to_string(form.degree) + ", expected 4");
  if (!form.squarefree()) throw DegeneracyError("pinch form is not squarefree");
  return j_from_quartic(form.affine);
}

// --------------------------------------------------------------- pipeline

bool PipelineReport::ok() const {
  for (const auto& s : stages)
    if (s.status != "pass") return false;
  return generic_smooth && singular_line_is_L && pinch_points == 4 && pinch_form_degree == 4 && pinch_form_squarefree &&
         j_is_1728 && step2_matches;
}

namespace {

const std::vector<std::string> kRatioNames{"X", "Y", "Z", "T"};
const std::vector<std::string> kPreferred{"u", "x", "z", "X", "Y", "Z", "T"};

struct LocalRun {
  Step1Model s1;
  std::vector<QChart> step2;
  std::vector<ChartMap<Rational>> maps;
  std::vector<QPoly> closure_gens;
};

LocalRun local_run(const std::vector<Plane>& planes, std::uint32_t p, int near) {
  LocalRun r;
  r.s1 = step1_local_model(planes, p, near);
  r.step2 = blowup_double_cover(r.s1.chart, "x", "y", &r.maps);
  const QChart& b = r.step2[1];
  if (b.factors.size() != 3) throw GeometryError("second step-2 chart does not have three branch components");
  const QPoly& x = b.factors[0];
  const QPoly& z = b.factors[1];
  const QPoly& g = b.factors[2];
  r.closure_gens = {x * z, x * g, z * g, var(b.ring, "u")};
  return r;
}

// Residual of chart B pulled back to a reduced graph-closure chart, reduced
// mod p and restricted to {transverse = 0}.
FPoly residual_on_line(const QChart& b, const IdealChart<Rational>& chart, const FieldSpec& spec,
                       const std::string& line_var, const std::vector<std::string>& transverse) {
  const auto& ring = chart.ideal.ring();
  std::map<std::string, QPoly> img;
  for (const auto& [v, im] : chart.eliminated) img[v] = im;
  const QPoly r = substitute(b.residual, img, ring);
  auto fring = make_fp_ring(ring->vars(), spec);
  std::map<std::string, FPoly> zero;
  for (const auto& v : transverse) zero[v] = FPoly(fring);
  return change_ring(substitute(reduce_mod(r, fring), zero), make_fp_ring({line_var}, spec));
}

std::vector<FieldElement> coeffs_low(const FPoly& f, const FieldSpec& spec) {
  Dense<FieldElement> d = dense_from(f);
  std::vector<FieldElement> c = d.c;
  if (c.empty()) c.push_back(FieldElement::zero(spec));
  return c;
}

std::vector<FieldElement> strip_and_normalize(std::vector<FieldElement> c, int* low_order) {
  std::size_t k = 0;
  while (k < c.size() && c[k].is_zero()) ++k;
  if (low_order) *low_order = static_cast<int>(k);
  c.erase(c.begin(), c.begin() + static_cast<long>(k));
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  if (!c.empty()) {
    const FieldElement inv = c.back().inverse();
    for (auto& v : c) v *= inv;
  }
  return c;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}

std::string rational_string(const Rational& r) {
  return r.get_str();
}

}  // namespace

PipelineReport run_local_pipeline(std::uint32_t p, const Rational& t) {
  const FieldSpec& spec = FieldSpec::get(p);
  PipelineReport rep;
  rep.p = p;
  rep.t = t;
  const auto planes = instantiate(reference_octic(), t);
  const std::string tstr = rational_string(t);

  auto stage = [&](const std::string& id, const std::function<void(StageRecord&)>& body) {
    StageRecord rec;
    rec.id = id;
    rec.status = "pass";
    const auto t0 = std::chrono::steady_clock::now();
    try {
      body(rec);
    } catch (const StageError&) {
      throw;
    } catch (const Error& e) {
      throw StageError(id, e.what());
    }
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.stages.push_back(std::move(rec));
  };
  auto fail = [](StageRecord& rec, const std::string& why) {
    rec.status = "fail";
    rec.detail += (rec.detail.empty() ? "" : "; ") + why;
  };

  LocalRun m1, m2;
  stage("step1", [&](StageRecord& rec) {
    m1 = local_run(planes, p, 1);
    const auto& ring = m1.s1.chart.ring;
    std::vector<QPoly> expected;
    for (const char* s : {"x", "y", "z"}) expected.push_back(parse_polynomial<Rational>(s, ring));
    expected.push_back(parse_polynomial<Rational>("x + 2*x*y + z + (" + tstr + ")", ring));
    if (m1.s1.chart.factors != expected) fail(rec, "local branch differs from x*y*z*(x + 2*x*y + z + t)");
    // Strict-transform identity against the octic itself.
    const auto& s1 = m1.s1;
    std::map<std::string, QPoly> down = s1.blowdown;
    const QPoly xa = var(ring, "x").scaled(Rational(1 / s1.alpha));
    down["u"] = xa.pow(static_cast<unsigned>(s1.cover_power)) * var(ring, "u");
    const QPoly lhs = substitute(var(ring, "u").pow(2) - change_ring(s1.octic_affine, ring), down, ring);
    const QPoly rhs = xa.pow(2 * static_cast<unsigned>(s1.cover_power)) * s1.chart.full_equation();
    if (!(lhs == rhs)) fail(rec, "blow-down identity fails");
    const Rational f0 = s1.chart.residual.constant_term();
    if (FiniteDomain{&spec}.from_rational(f0).is_zero()) fail(rec, "residual vanishes at the chart origin mod p");
    std::vector<std::string> lp, rp;
    for (int i : s1.local_planes) lp.push_back("P" + std::to_string(i));
    for (int i : s1.residual_planes) rp.push_back("P" + std::to_string(i));
    rec.data["local_planes"] = join(lp);
    rec.data["residual_planes"] = join(rp);
    rec.data["alpha"] = rational_string(s1.alpha);
    rec.data["beta"] = rational_string(s1.beta);
    rec.data["residual"] = s1.chart.residual.to_string();
    rec.equations.push_back(s1.chart.equation().to_string() + " = 0");
    rec.detail = rec.status == "pass" ? "branch x*y*z*(x + 2*x*y + z + t) near m1" : rec.detail;
  });

  stage("step2", [&](StageRecord& rec) {
    const auto& A = m1.step2[0];
    const auto& B = m1.step2[1];
    const auto& ring = A.ring;
    const std::string P = "(" + tstr + ")";
    std::vector<QPoly> ea{parse_polynomial<Rational>("y", ring), parse_polynomial<Rational>("z", ring),
                          parse_polynomial<Rational>("x + 2*x^2*y + z + " + P, ring)};
    std::vector<QPoly> eb{parse_polynomial<Rational>("x", ring), parse_polynomial<Rational>("z", ring),
                          parse_polynomial<Rational>("x*y + 2*x*y^2 + z + " + P, ring)};
    rep.step2_matches = A.factors == ea && B.factors == eb;
    if (!rep.step2_matches) fail(rec, "step-2 charts differ from the expected branch equations");
    // Each chart pulls back the step-1 equation.
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& cm = m1.maps[i];
      const QPoly pulled = substitute(m1.s1.chart.full_equation(), cm.images);
      const QPoly e = var(ring, cm.exceptional).pow(2 * static_cast<unsigned>(cm.cover_power));
      if (!(pulled == e * m1.step2[i].full_equation())) fail(rec, "chart " + m1.step2[i].name + " is not a pull-back");
    }
    const auto snc_a_q = branch_is_snc(A);
    const auto snc_a_p = branch_is_snc(central_fiber(A, spec));
    const auto snc_b_p = branch_is_snc(central_fiber(B, spec));
    if (!snc_a_q.snc || !snc_a_p.snc) fail(rec, "first chart branch is not SNC");
    rec.data["chart_A_branch_snc_mod_p"] = snc_a_p.snc ? "true" : "false";
    rec.data["chart_B_branch_snc_mod_p"] = snc_b_p.snc ? "true" : "false";
    if (!snc_b_p.failures.empty()) rec.data["chart_B_non_transversal"] = join(snc_b_p.failures);
    rec.equations = {A.equation().to_string() + " = 0", B.equation().to_string() + " = 0"};
    if (rec.status == "pass") rec.detail = "blow-up of m1 = {x = y = 0}; second chart needs a further blow-up";
  });

  std::vector<IdealChart<Rational>> charts;
  stage("step3", [&](StageRecord& rec) {
    auto raw = graph_closure_blowup(m1.step2[1], m1.closure_gens, kRatioNames);
    rep.generic_smooth = true;
    for (auto& c : raw) {
      charts.push_back(reduce_chart(c, kPreferred));
      const auto& ch = charts.back();
      const auto gens = nonzero(ch.ideal.generators());
      std::string eq;
      for (const auto& g : gens) eq += (eq.empty() ? "" : ", ") + g.to_string() + " = 0";
      rec.equations.push_back(ch.name + ": " + eq);
      const bool smooth = is_smooth(ch);
      rec.data[ch.name + ".smooth_over_Q"] = smooth ? "true" : "false";
      if (!smooth) rep.generic_smooth = false;
    }
    if (!rep.generic_smooth) fail(rec, "generic fiber is singular in some chart");
    else rec.detail = "graph closure of (x*z : x*g : z*g : u); generic fiber smooth";
  });

  std::optional<IdealChart<FieldElement>> t_chart;
  stage("central_fiber", [&](StageRecord& rec) {
    rep.singular_line_is_L = false;
    bool others_smooth = true, t_equal = false;
    for (const auto& ch : charts) {
      auto cf = central_fiber(ch, spec);
      auto J = singular_locus(cf);
      if (J.is_unit()) continue;
      rep.singular_line_charts.push_back(ch.name);
      if (ch.name == "T=1") {
        auto ring = cf.ideal.ring();
        auto cmp = compare_locus(J, Ideal<FieldElement>(ring, {var(ring, "X"), var(ring, "Y"), var(ring, "Z")}));
        t_equal = cmp.equal();
        std::string js;
        for (const auto& g : J.basis) js += (js.empty() ? "" : ", ") + g.to_string();
        rec.data["T=1.singular_locus"] = "(" + js + ")";
        t_chart = cf;
      } else {
        others_smooth = false;
      }
    }
    rep.singular_line_is_L = t_equal && others_smooth;
    rec.data["singular_charts"] = join(rep.singular_line_charts);
    if (!rep.singular_line_is_L) fail(rec, "singular locus of the central fiber is not the line L");
    else rec.detail = "singular locus is L = {X = Y = Z = 0} in chart T=1, parameter y";
  });

  std::optional<BinaryForm> form;
  stage("pinch_points", [&](StageRecord& rec) {
    if (!t_chart) throw GeometryError("no chart contains the singular line");
    const auto gens = nonzero(t_chart->ideal.generators());
    if (gens.size() != 1) throw UnsupportedError("chart T=1 is not a hypersurface after reduction");
    const std::vector<std::string> tr{"X", "Y", "Z"};
    const auto td = transverse_discriminant(gens[0], "y", tr);
    rep.chart_discriminant_degree = td.degree;
    const auto& t1 = charts[3];
    const FPoly f1 = residual_on_line(m1.step2[1], t1, spec, "y", tr);
    const FPoly a1 = td.hessian_det * f1;

    // The same construction near m2 covers the point at infinity of L.
    m2 = local_run(planes, p, 2);
    auto t2 = reduce_chart(graph_closure_chart(m2.step2[1], m2.closure_gens, kRatioNames, 3), kPreferred);
    auto t2p = central_fiber(t2, spec);
    const auto g2 = nonzero(t2p.ideal.generators());
    if (g2.size() != 1) throw UnsupportedError("chart T=1 near m2 is not a hypersurface after reduction");
    const auto td2 = transverse_discriminant(g2[0], "y", tr);
    const FPoly a2 = td2.hessian_det * residual_on_line(m2.step2[1], t2, spec, "y", tr);

    // s * s' = kappa on the overlap.
    const FieldElement kappa =
        FiniteDomain{&spec}.from_rational(Rational(m1.s1.beta * m2.s1.beta / (4 * m1.s1.alpha * m2.s1.alpha)));
    auto c1 = coeffs_low(a1, spec);
    const int n = static_cast<int>(c1.size()) - 1;
    std::vector<FieldElement> rev(c1.size(), FieldElement::zero(spec));
    FieldElement kp = FieldElement::one(spec);
    for (int i = 0; i <= n; ++i, kp *= kappa) rev[static_cast<std::size_t>(n - i)] = c1[static_cast<std::size_t>(i)] * kp;
    int ord_inf = 0;
    const auto lhs = strip_and_normalize(rev, nullptr);
    const auto rhs = strip_and_normalize(coeffs_low(a2, spec), &ord_inf);
    if (!(lhs == rhs)) fail(rec, "the two charts of L disagree on the overlap");

    form = BinaryForm{a1, n + ord_inf};
    rep.pinch_form_degree = form->degree;
    rep.pinch_form_squarefree = form->squarefree();
    rep.pinch_points = form->distinct_roots();
    rec.data["hessian_det"] = td.hessian_det.to_string();
    rec.data["residual_on_L"] = f1.to_string();
    rec.data["pinch_form_affine"] = a1.to_string();
    rec.data["pinch_form_degree"] = std::to_string(form->degree);
    rec.data["root_at_infinity_multiplicity"] = std::to_string(form->infinity_multiplicity());
    rec.data["m2_hessian_det"] = td2.hessian_det.to_string();
    if (rep.pinch_points != 4 || !rep.pinch_form_squarefree || rep.pinch_form_degree != 4)
      fail(rec, "expected four simple pinch points");
    else rec.detail = "four simple pinch points on L";
  });

  stage("j_invariant", [&](StageRecord& rec) {
    const FieldElement j = pinch_point_j_check(*form);
    rep.j_value = field_value_string(j);
    rep.j_is_1728 = j == FieldElement(spec, 1728);
    rec.data["j"] = rep.j_value;
    if (!rep.j_is_1728) fail(rec, "j differs from 1728");
    else rec.detail = "pinch points form a harmonic quadruple";
  });

  stage("step4", [&](StageRecord& rec) {
    rec.detail = "metadata only, not recomputed: V0 with multiplicity two, local form F*G^2 = p";
    rec.data["double_fiber_multiplicity"] = "2";
  });
  return rep;
}

#define OCTIC_INSTANTIATE_RES(K)                                                                                       \
  template struct DoubleCoverChart<K>;                                                                                 \
  template std::vector<DoubleCoverChart<K>> blowup_double_cover(const DoubleCoverChart<K>&, const std::string&,        \
                                                                const std::string&, std::vector<ChartMap<K>>*);        \
  template IdealChart<K> graph_closure_chart(const DoubleCoverChart<K>&, const std::vector<Polynomial<K>>&,           \
                                             const std::vector<std::string>&, std::size_t);                           \
  template std::vector<IdealChart<K>> graph_closure_blowup(const DoubleCoverChart<K>&, const std::vector<Polynomial<K>>&, \
                                                           const std::vector<std::string>&);                          \
  template IdealChart<K> reduce_chart(const IdealChart<K>&, const std::vector<std::string>&);                         \
  template GroebnerBasis<K> singular_locus(const IdealChart<K>&);                                                      \
  template GroebnerBasis<K> singular_locus(const DoubleCoverChart<K>&);                                                \
  template bool is_smooth(const IdealChart<K>&);                                                                       \
  template bool is_smooth(const DoubleCoverChart<K>&);                                                                 \
  template Ideal<K> jacobian_ideal(const Ideal<K>&);                                                                   \
  template SncReport<K> branch_is_snc(const DoubleCoverChart<K>&);                                                     \
  template LocusComparison<K> compare_locus(const GroebnerBasis<K>&, const Ideal<K>&);

OCTIC_INSTANTIATE_RES(Rational)
OCTIC_INSTANTIATE_RES(FieldElement)

}  // namespace octic
