#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "octic/polynomial.hpp"

namespace octic {

// Coefficients (c_x, c_y, c_z, c_v), coprime, first nonzero entry positive.
struct Plane {
  std::array<Integer, 4> coeffs;

  static Plane from_rational(const std::vector<Rational>& c);
  static Plane from_integers(long long cx, long long cy, long long cz, long long cv);
  std::vector<Rational> as_rational() const;
  bool contains(const std::array<Integer, 4>& point) const;
  // e.g. "x + 2*y + z + 5*v"
  std::string to_string() const;
  friend bool operator==(const Plane& a, const Plane& b) { return a.coeffs == b.coeffs; }
  friend bool operator<(const Plane& a, const Plane& b) { return a.coeffs < b.coeffs; }
};

// Projective point with the same normalization as Plane.
struct PointP3 {
  std::array<Integer, 4> coords;

  static PointP3 from_rational(const std::vector<Rational>& c);
  std::string to_string() const;  // "(0:0:0:1)"
  friend bool operator==(const PointP3& a, const PointP3& b) { return a.coords == b.coords; }
  friend bool operator<(const PointP3& a, const PointP3& b) { return a.coords < b.coords; }
};

// Line in P^3 via Pluecker coordinates (p01, p02, p03, p12, p13, p23) of two
// spanning points, primitive with first nonzero entry positive.
class LineP3 {
 public:
  static LineP3 through(const PointP3& a, const PointP3& b);
  static LineP3 meet(const Plane& a, const Plane& b);

  const std::array<Integer, 6>& plucker() const { return plucker_; }
  // Two points spanning the line (not canonical).
  const std::array<PointP3, 2>& points() const { return points_; }
  bool contains(const PointP3& p) const;
  bool lies_on(const Plane& h) const;
  std::string to_string() const;  // equations, e.g. "{x = 0, y = 0}"

  friend bool operator==(const LineP3& a, const LineP3& b) { return a.plucker_ == b.plucker_; }
  friend bool operator<(const LineP3& a, const LineP3& b) { return a.plucker_ < b.plucker_; }

 private:
  std::array<Integer, 6> plucker_;
  std::array<PointP3, 2> points_;
};

// Eight (or any number of) planes whose coefficients are integer polynomials
// in the parameter t.
struct FamilyArrangement {
  RingPtr<Rational> ring;  // single variable "t"
  std::vector<std::array<QPoly, 4>> planes;
  std::optional<Rational> pinned_t;  // from a "t = ..." header

  std::size_t size() const { return planes.size(); }
  bool depends_on_t() const;
};

RingPtr<Rational> parameter_ring();
FamilyArrangement reference_octic();
FamilyArrangement constant_family(const std::vector<Plane>& planes);

// Throws DegeneracyError if a plane vanishes or two planes coincide.
std::vector<Plane> instantiate(const FamilyArrangement& fam, const Rational& t);

struct MultipleLine {
  LineP3 line;
  std::vector<int> planes;  // 1-based indices
};

struct MultiplePoint {
  PointP3 point;
  std::vector<int> planes;  // 1-based indices
  bool on_triple_line = false;
};

struct IncidenceSignature {
  std::map<int, int> line_census;                   // m >= 2 -> count
  std::map<std::pair<int, bool>, int> point_census;  // (l >= 3, on a >=3-fold line) -> count
  std::vector<MultipleLine> lines;                  // sorted by multiplicity desc, then line
  std::vector<MultiplePoint> points;                // l >= 3, sorted likewise
  std::vector<MultiplePoint> fivefold_points;       // l >= 5

  int lines_of(int m) const;
  int points_of(int l, bool on_triple_line) const;
  friend bool operator==(const IncidenceSignature& a, const IncidenceSignature& b) {
    return a.line_census == b.line_census && a.point_census == b.point_census;
  }
};

// Requires pairwise distinct planes.
IncidenceSignature incidence_signature(const std::vector<Plane>& planes);

struct Admissibility {
  bool admissible = true;
  std::vector<std::string> violations;
};
Admissibility is_octic_admissible(const std::vector<Plane>& planes);

struct DegenerateParameters {
  std::vector<Rational> values;  // increasing
  bool infinity = false;
  // Some minor had non-rational roots, so degeneracies at irrational t are
  // not excluded.
  bool residual = false;
  std::vector<Rational> generic_references;
  std::vector<Rational> candidates_checked;
};
DegenerateParameters degenerate_parameters(const FamilyArrangement& fam);

// The planes whose leading coefficients in t survive as t -> infinity.
// Throws DegeneracyError for coincident or vanishing limit planes.
std::vector<Plane> limit_at_infinity(const FamilyArrangement& fam);

// (a : b) with plane = a*B1 + b*B2 for the reduced-echelon basis B1, B2 of
// the planes through `line` (for {x = y = 0}: B1 = x, B2 = y).
std::pair<Integer, Integer> pencil_coordinate(const LineP3& line, const Plane& plane);

// Plane through two distinct intersecting lines.
Plane span_line_line(const LineP3& a, const LineP3& b);

// Text format: one plane per line, four whitespace-separated integer
// polynomial expressions in t; optional "t = <rational>" header; '#' starts a
// comment.
FamilyArrangement parse_arrangement(const std::string& text);
std::string format_arrangement(const FamilyArrangement& fam);

}  // namespace octic
