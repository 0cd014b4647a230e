#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "octic/arrangement.hpp"
#include "octic/groebner.hpp"
#include "octic/polynomial.hpp"

namespace octic {

struct ExceptionalMarker {
  std::string var;
  int multiplicity = 1;
};

// Affine chart u^2 = (product of branch factors) * residual. The residual is
// a unit near the chart origin; chart equations and singular loci use the
// factors only.
template <class K>
struct DoubleCoverChart {
  std::string name;
  RingPtr<K> ring;  // contains the cover variable
  std::string cover_var = "u";
  std::vector<Polynomial<K>> factors;
  Polynomial<K> residual;
  std::vector<ExceptionalMarker> exceptional;
  std::vector<std::string> history;

  Polynomial<K> branch() const;       // product of factors
  Polynomial<K> equation() const;     // u^2 - branch()
  Polynomial<K> full_equation() const;  // u^2 - branch() * residual
};

using QChart = DoubleCoverChart<Rational>;
using FChart = DoubleCoverChart<FieldElement>;

// Chart given by an ideal (after the graph-closure blow-up).
template <class K>
struct IdealChart {
  std::string name;
  Ideal<K> ideal;
  std::vector<ExceptionalMarker> exceptional;
  std::vector<std::string> history;
  // Variables removed by reduce_chart, with their images.
  std::vector<std::pair<std::string, Polynomial<K>>> eliminated;
};

// Records of how a chart's coordinates map to the previous chart's: each
// previous variable's image in the new chart's ring.
template <class K>
struct ChartMap {
  std::map<std::string, Polynomial<K>> images;
  std::string exceptional;
  int cover_power = 0;  // u_old = exceptional^cover_power * u_new
};

// --------------------------------------------------------------- step 1

struct Step1Model {
  QChart chart;              // u^2 = x*y*z*(x + 2*x*y + z + t), residual F
  QChart blowup_chart;       // u^2 = e * a * ... in (u, e, a, z) before rescaling
  std::vector<int> local_planes;     // plane indices through the chart origin mod p
  std::vector<int> residual_planes;  // the rest
  Rational alpha, beta;              // x = alpha*e, y = beta*a/(2*alpha)
  // Blow-down to the affine chart v = 1: images of x, y, z in (x, y, z) of
  // the final chart, and the power of e absorbed by u.
  std::map<std::string, QPoly> blowdown;
  int cover_power = 0;
  QPoly octic_affine;  // the octic in (x, y, z) with v = 1
};

// Blow-up of the triple line {x = y = 0} of the arrangement near m_1 = P1 ∩ H
// in the chart x -> e*a, y -> e of the affine piece v = 1, followed by the
// rescaling that puts the strict transform of P5 into the form
// x + 2*x*y + z + t. Components through the origin are those vanishing there
// modulo p.
// `near` selects the chart of the l_3 blow-up: 1 for the chart x -> e*a,
// y -> e (containing m_1), 2 for x -> e, y -> e*a (containing m_2).
Step1Model step1_local_model(const std::vector<Plane>& planes, std::uint32_t p, int near = 1);

// --------------------------------------------------------------- blow-ups

// Blow-up of the coordinate line {a = b = 0}. Returns the chart b -> a*b
// (exceptional a) followed by the chart a -> b*a (exceptional b).
template <class K>
std::vector<DoubleCoverChart<K>> blowup_double_cover(const DoubleCoverChart<K>& chart, const std::string& a,
                                                     const std::string& b, std::vector<ChartMap<K>>* maps = nullptr);

// Closure of the graph of (g_0 : ... : g_{n-1}), one chart per index i with
// ratio variables r_j = g_j / g_i. Throws GeometryError if every chart is
// empty.
template <class K>
IdealChart<K> graph_closure_chart(const DoubleCoverChart<K>& chart, const std::vector<Polynomial<K>>& gens,
                                  const std::vector<std::string>& ratio_names, std::size_t index);
template <class K>
std::vector<IdealChart<K>> graph_closure_blowup(const DoubleCoverChart<K>& chart, const std::vector<Polynomial<K>>& gens,
                                                const std::vector<std::string>& ratio_names);

// Removes variables appearing linearly with constant coefficient, trying
// `preferred` first.
template <class K>
IdealChart<K> reduce_chart(const IdealChart<K>& chart, const std::vector<std::string>& preferred);

// --------------------------------------------------------------- reduction mod p

FChart central_fiber(const QChart& chart, const FieldSpec& spec);
IdealChart<FieldElement> central_fiber(const IdealChart<Rational>& chart, const FieldSpec& spec);

// --------------------------------------------------------------- singularities

// Equations plus all c x c Jacobian minors, c = number of equations (<= 2).
template <class K>
GroebnerBasis<K> singular_locus(const IdealChart<K>& chart);
template <class K>
GroebnerBasis<K> singular_locus(const DoubleCoverChart<K>& chart);
template <class K>
bool is_smooth(const IdealChart<K>& chart);
template <class K>
bool is_smooth(const DoubleCoverChart<K>& chart);

// The Jacobian ideal before the Groebner basis step.
template <class K>
Ideal<K> jacobian_ideal(const Ideal<K>& chart);

// Simple normal crossings of the branch factors: for every subset S, the
// factors in S and the |S| x |S| minors of their Jacobian have no common zero.
template <class K>
struct SncReport {
  bool snc = true;
  std::vector<std::string> failures;  // e.g. "{z, x*y + ...}: not transversal"
};
template <class K>
SncReport<K> branch_is_snc(const DoubleCoverChart<K>& chart);

// V(J) equals the linear subspace cut out by `line_ideal` (two-sided radical
// containment).
template <class K>
struct LocusComparison {
  bool line_in_locus = false;   // every generator of I(line) lies in rad(J)
  bool locus_in_line = false;   // every generator of J lies in rad(I(line))
  bool equal() const { return line_in_locus && locus_in_line; }
};
template <class K>
LocusComparison<K> compare_locus(const GroebnerBasis<K>& J, const Ideal<K>& line_ideal);

// --------------------------------------------------------------- pinch points

struct TransverseDiscriminant {
  FPoly hessian_det;  // univariate in the line parameter
  int degree = -1;
  bool squarefree = false;
  std::vector<std::vector<FPoly>> hessian;
};

// h must vanish to order two along the line {transverse = 0}; the line
// parameter is `line_var`. GeometryError otherwise.
TransverseDiscriminant transverse_discriminant(const FPoly& h, const std::string& line_var,
                                               const std::vector<std::string>& transverse);

// A binary form on P^1 given by a univariate polynomial and a formal degree
// >= its actual degree; the excess is the multiplicity of the root at
// infinity.
struct BinaryForm {
  FPoly affine;
  int degree = 0;
  int infinity_multiplicity() const;
  bool squarefree() const;
  // Number of distinct roots over the algebraic closure (including infinity).
  int distinct_roots() const;
};

FieldElement pinch_point_j_check(const BinaryForm& form);

// --------------------------------------------------------------- pipeline

struct StageRecord {
  std::string id;
  std::string status;  // "pass" | "fail"
  std::string detail;
  std::map<std::string, std::string> data;
  std::vector<std::string> equations;
  double seconds = 0;
};

struct PipelineReport {
  std::uint32_t p = 0;
  Rational t;
  std::vector<StageRecord> stages;
  bool generic_smooth = false;
  bool singular_line_is_L = false;
  int pinch_points = 0;
  int chart_discriminant_degree = -1;
  int pinch_form_degree = -1;
  bool pinch_form_squarefree = false;
  std::string j_value;
  bool j_is_1728 = false;
  bool step2_matches = false;
  std::vector<std::string> singular_line_charts;

  bool ok() const;
};

PipelineReport run_local_pipeline(std::uint32_t p, const Rational& t);

}  // namespace octic
