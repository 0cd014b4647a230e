#include "octic/arrangement.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "octic/errors.hpp"
#include "octic/groebner.hpp"
#include "octic/linalg.hpp"

namespace octic {

namespace {

const char* const kCoordNames[4] = {"x", "y", "z", "v"};

std::array<Integer, 4> normalized4(const std::vector<Rational>& c) {
  if (c.size() != 4) throw DomainError("expected 4 homogeneous coordinates");
  auto v = primitive_integer_vector(c);
  if (std::all_of(v.begin(), v.end(), [](const Integer& z) { return z == 0; }))
    throw DegeneracyError("all four coordinates vanish");
  return {v[0], v[1], v[2], v[3]};
}

std::vector<Rational> to_rational(const std::array<Integer, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

Integer dot(const std::array<Integer, 4>& a, const std::array<Integer, 4>& b) {
  Integer s = 0;
  for (int i = 0; i < 4; ++i) s += a[i] * b[i];
  return s;
}

std::string linear_form_string(const std::array<Integer, 4>& c) {
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (c[i] == 0) continue;
    Integer a = abs(c[i]);
    if (out.empty()) {
      if (c[i] < 0) out += "-";
    } else {
      out += c[i] < 0 ? " - " : " + ";
    }
    if (a != 1) out += a.get_str() + "*";
    out += kCoordNames[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace

// ---------------------------------------------------------------- basic types

Plane Plane::from_rational(const std::vector<Rational>& c) { return Plane{normalized4(c)}; }

Plane Plane::from_integers(long long cx, long long cy, long long cz, long long cv) {
  return from_rational({Rational(static_cast<long>(cx)), Rational(static_cast<long>(cy)),
                        Rational(static_cast<long>(cz)), Rational(static_cast<long>(cv))});
}

std::vector<Rational> Plane::as_rational() const { return to_rational(coeffs); }

bool Plane::contains(const std::array<Integer, 4>& point) const { return dot(coeffs, point) == 0; }

std::string Plane::to_string() const { return linear_form_string(coeffs); }

PointP3 PointP3::from_rational(const std::vector<Rational>& c) { return PointP3{normalized4(c)}; }

std::string PointP3::to_string() const {
  return "(" + coords[0].get_str() + ":" + coords[1].get_str() + ":" + coords[2].get_str() + ":" +
         coords[3].get_str() + ")";
}

LineP3 LineP3::through(const PointP3& a, const PointP3& b) {
  const auto& p = a.coords;
  const auto& q = b.coords;
  std::vector<Integer> pl;
  const int idx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (const auto& ij : idx) pl.push_back(p[ij[0]] * q[ij[1]] - p[ij[1]] * q[ij[0]]);
  auto v = primitive_integer_vector(pl);
  if (std::all_of(v.begin(), v.end(), [](const Integer& z) { return z == 0; }))
    throw GeometryError("points " + a.to_string() + " and " + b.to_string() + " do not span a line");
  LineP3 line;
  for (int i = 0; i < 6; ++i) line.plucker_[i] = v[i];
  line.points_ = {a, b};
  return line;
}

LineP3 LineP3::meet(const Plane& a, const Plane& b) {
  auto ns = nullspace({a.as_rational(), b.as_rational()}, 4);
  if (ns.size() != 2) throw GeometryError("planes " + a.to_string() + " and " + b.to_string() + " coincide");
  return through(PointP3::from_rational(ns[0]), PointP3::from_rational(ns[1]));
}

bool LineP3::contains(const PointP3& p) const {
  QMatrix m{to_rational(points_[0].coords), to_rational(points_[1].coords), to_rational(p.coords)};
  return rank(m) == 2;
}

bool LineP3::lies_on(const Plane& h) const { return h.contains(points_[0].coords) && h.contains(points_[1].coords); }

std::string LineP3::to_string() const {
  QMatrix m{to_rational(points_[0].coords), to_rational(points_[1].coords)};
  auto eqs = nullspace(m, 4);
  // Present the two equations in reduced echelon form for readability.
  QMatrix e{eqs[0], eqs[1]};
  rref(e);
  return "{" + Plane::from_rational(e[0]).to_string() + " = 0, " + Plane::from_rational(e[1]).to_string() + " = 0}";
}

// ---------------------------------------------------------------- families

bool FamilyArrangement::depends_on_t() const {
  for (const auto& p : planes)
    for (const auto& c : p)
      if (!c.is_constant()) return true;
  return false;
}

RingPtr<Rational> parameter_ring() {
  static const RingPtr<Rational> ring = make_ring<Rational>({"t"});
  return ring;
}

FamilyArrangement reference_octic() {
  auto R = parameter_ring();
  const char* rows[8][4] = {
      {"1", "0", "0", "0"}, {"0", "1", "0", "0"}, {"1", "1", "0", "0"}, {"0", "0", "1", "0"},
      {"1", "2", "1", "t"}, {"0", "0", "0", "1"}, {"0", "1", "1", "1"}, {"1", "1", "1", "t-1"},
  };
  FamilyArrangement fam{R, {}, std::nullopt};
  for (const auto& row : rows) {
    std::array<QPoly, 4> p;
    for (int i = 0; i < 4; ++i) p[i] = parse_polynomial(row[i], R);
    fam.planes.push_back(std::move(p));
  }
  return fam;
}

FamilyArrangement constant_family(const std::vector<Plane>& planes) {
  auto R = parameter_ring();
  FamilyArrangement fam{R, {}, std::nullopt};
  for (const auto& h : planes) {
    std::array<QPoly, 4> p;
    for (int i = 0; i < 4; ++i) p[i] = QPoly::constant(R, Rational(h.coeffs[i]));
    fam.planes.push_back(std::move(p));
  }
  return fam;
}

namespace {

void check_distinct(const std::vector<Plane>& planes) {
  for (std::size_t i = 0; i < planes.size(); ++i)
    for (std::size_t j = i + 1; j < planes.size(); ++j)
      if (planes[i] == planes[j])
        throw DegeneracyError("planes P" + std::to_string(i + 1) + " and P" + std::to_string(j + 1) + " coincide (" +
                              planes[i].to_string() + ")");
}

}  // namespace

std::vector<Plane> instantiate(const FamilyArrangement& fam, const Rational& t) {
  std::vector<Plane> out;
  const std::vector<Rational> at{t};
  for (std::size_t i = 0; i < fam.planes.size(); ++i) {
    std::vector<Rational> c;
    for (const auto& poly : fam.planes[i]) c.push_back(poly.evaluate(at));
    try {
      out.push_back(Plane::from_rational(c));
    } catch (const DegeneracyError&) {
      throw DegeneracyError("plane P" + std::to_string(i + 1) + " vanishes identically at t = " + to_string(t));
    }
  }
  check_distinct(out);
  return out;
}

std::vector<Plane> limit_at_infinity(const FamilyArrangement& fam) {
  std::vector<Plane> out;
  for (std::size_t i = 0; i < fam.planes.size(); ++i) {
    std::uint32_t d = 0;
    for (const auto& c : fam.planes[i]) d = std::max(d, c.total_degree());
    std::vector<Rational> lead;
    for (const auto& c : fam.planes[i]) {
      Rational v = 0;
      for (const auto& term : c.terms())
        if (term.mono.degree() == d) v = term.coeff;
      lead.push_back(v);
    }
    try {
      out.push_back(Plane::from_rational(lead));
    } catch (const DegeneracyError&) {
      throw DegeneracyError("plane P" + std::to_string(i + 1) + " has no limit as t -> infinity");
    }
  }
  check_distinct(out);
  return out;
}

// ---------------------------------------------------------------- census

int IncidenceSignature::lines_of(int m) const {
  auto it = line_census.find(m);
  return it == line_census.end() ? 0 : it->second;
}

int IncidenceSignature::points_of(int l, bool on_triple_line) const {
  auto it = point_census.find({l, on_triple_line});
  return it == point_census.end() ? 0 : it->second;
}

IncidenceSignature incidence_signature(const std::vector<Plane>& planes) {
  check_distinct(planes);
  const std::size_t n = planes.size();
  IncidenceSignature sig;

  std::map<LineP3, std::vector<int>> lines;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      LineP3 l = LineP3::meet(planes[i], planes[j]);
      if (lines.count(l)) continue;
      std::vector<int> on;
      for (std::size_t k = 0; k < n; ++k)
        if (l.lies_on(planes[k])) on.push_back(static_cast<int>(k + 1));
      lines.emplace(std::move(l), std::move(on));
    }
  for (auto& [l, on] : lines) sig.lines.push_back({l, on});

  std::map<PointP3, std::vector<int>> points;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto ns = nullspace({planes[i].as_rational(), planes[j].as_rational(), planes[k].as_rational()}, 4);
        if (ns.size() != 1) continue;
        PointP3 p = PointP3::from_rational(ns[0]);
        if (points.count(p)) continue;
        std::vector<int> on;
        for (std::size_t m = 0; m < n; ++m)
          if (planes[m].contains(p.coords)) on.push_back(static_cast<int>(m + 1));
        points.emplace(std::move(p), std::move(on));
      }
  for (auto& [p, on] : points) {
    MultiplePoint mp{p, on, false};
    for (const auto& ml : sig.lines)
      if (ml.planes.size() >= 3 && ml.line.contains(p)) mp.on_triple_line = true;
    sig.points.push_back(std::move(mp));
  }

  auto by_mult = [](const auto& a, const auto& b) {
    if (a.planes.size() != b.planes.size()) return a.planes.size() > b.planes.size();
    return a.planes < b.planes;
  };
  std::sort(sig.lines.begin(), sig.lines.end(), by_mult);
  std::sort(sig.points.begin(), sig.points.end(), by_mult);
  for (const auto& l : sig.lines) ++sig.line_census[static_cast<int>(l.planes.size())];
  for (const auto& p : sig.points) {
    ++sig.point_census[{static_cast<int>(p.planes.size()), p.on_triple_line}];
    if (p.planes.size() >= 5) sig.fivefold_points.push_back(p);
  }
  return sig;
}

Admissibility is_octic_admissible(const std::vector<Plane>& planes) {
  Admissibility out;
  const auto sig = incidence_signature(planes);
  auto names = [](const std::vector<int>& idx) {
    std::string s;
    for (auto i : idx) s += (s.empty() ? "P" : ",P") + std::to_string(i);
    return s;
  };
  for (const auto& l : sig.lines)
    if (l.planes.size() >= 4)
      out.violations.push_back(std::to_string(l.planes.size()) + "-fold line " + l.line.to_string() + " on " +
                               names(l.planes));
  for (const auto& p : sig.points)
    if (p.planes.size() >= 6)
      out.violations.push_back(std::to_string(p.planes.size()) + "-fold point " + p.point.to_string() + " on " +
                               names(p.planes));
  out.admissible = out.violations.empty();
  return out;
}

// ---------------------------------------------------------------- degenerations

namespace {

QPoly det_poly(const std::vector<std::vector<QPoly>>& m, const RingPtr<Rational>& R) {
  const std::size_t k = m.size();
  if (k == 1) return m[0][0];
  QPoly acc(R);
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<std::vector<QPoly>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<QPoly> row;
      for (std::size_t cc = 0; cc < k; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    QPoly term = m[0][c] * det_poly(minor, R);
    if (c % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

std::optional<IncidenceSignature> try_signature(const std::vector<Plane>& planes) {
  try {
    return incidence_signature(planes);
  } catch (const DegeneracyError&) {
    return std::nullopt;
  }
}

}  // namespace

DegenerateParameters degenerate_parameters(const FamilyArrangement& fam) {
  DegenerateParameters out;
  if (!fam.depends_on_t()) return out;
  const auto& R = fam.ring;
  const std::size_t n = fam.planes.size();

  std::set<Rational> candidates;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    subsets(n, k, rows);
    subsets(4, k, cols);
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        std::vector<std::vector<QPoly>> m;
        for (auto r : rs) {
          std::vector<QPoly> row;
          for (auto c : cs) row.push_back(fam.planes[r][c]);
          m.push_back(std::move(row));
        }
        QPoly d = det_poly(m, R);
        if (d.is_zero() || d.is_constant()) continue;
        auto roots = rational_roots(d);
        out.residual = out.residual || roots.residual;
        candidates.insert(roots.roots.begin(), roots.roots.end());
      }
  }
  out.candidates_checked.assign(candidates.begin(), candidates.end());

  // Two integer parameters avoiding every candidate must give the same
  // signature; that signature is the generic one.
  std::optional<IncidenceSignature> generic;
  for (long t = 3; out.generic_references.size() < 2; ++t) {
    if (candidates.count(Rational(t))) continue;
    auto sig = incidence_signature(instantiate(fam, Rational(t)));
    if (generic && !(*generic == sig))
      throw DataError("signatures at two non-candidate parameters differ; candidate set is incomplete");
    generic = sig;
    out.generic_references.push_back(Rational(t));
  }

  for (const auto& t : candidates) {
    std::optional<IncidenceSignature> sig;
    try {
      sig = try_signature(instantiate(fam, t));
    } catch (const DegeneracyError&) {
    }
    if (!sig || !(*sig == *generic)) out.values.push_back(t);
  }
  std::optional<IncidenceSignature> at_inf;
  try {
    at_inf = try_signature(limit_at_infinity(fam));
  } catch (const DegeneracyError&) {
  }
  out.infinity = !at_inf || !(*at_inf == *generic);
  return out;
}

// ---------------------------------------------------------------- pencils

std::pair<Integer, Integer> pencil_coordinate(const LineP3& line, const Plane& plane) {
  if (!line.lies_on(plane)) throw GeometryError("plane " + plane.to_string() + " does not contain " + line.to_string());
  QMatrix pts{to_rational(line.points()[0].coords), to_rational(line.points()[1].coords)};
  auto basis = nullspace(pts, 4);
  QMatrix b{basis[0], basis[1]};
  rref(b);
  // Solve plane = a*b0 + c*b1 using the pivot columns of the echelon basis.
  std::vector<std::size_t> piv;
  for (const auto& row : b)
    for (std::size_t j = 0; j < 4; ++j)
      if (sgn(row[j]) != 0) {
        piv.push_back(j);
        break;
      }
  const auto h = plane.as_rational();
  const Rational a = h[piv[0]], c = h[piv[1]];
  auto v = primitive_integer_vector(std::vector<Rational>{a, c});
  return {v[0], v[1]};
}

Plane span_line_line(const LineP3& a, const LineP3& b) {
  if (a == b) throw GeometryError("lines coincide; the spanning plane is not unique");
  QMatrix pts;
  for (const auto& p : a.points()) pts.push_back(to_rational(p.coords));
  for (const auto& p : b.points()) pts.push_back(to_rational(p.coords));
  auto ns = nullspace(pts, 4);
  if (ns.empty()) throw GeometryError("lines " + a.to_string() + " and " + b.to_string() + " are skew");
  return Plane::from_rational(ns[0]);
}

// ---------------------------------------------------------------- text format

namespace {

int codepoints(const std::string& s, std::size_t end) {
  int n = 0;
  for (std::size_t i = 0; i < end && i < s.size(); ++i)
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) ++n;
  return n;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

FamilyArrangement parse_arrangement(const std::string& text) {
  auto R = parameter_ring();
  FamilyArrangement fam{R, {}, std::nullopt};
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    const std::string t = trim(line);
    if (t[0] == 't' && trim(t.substr(1)).rfind('=', 0) == 0) {
      const auto eq = line.find('=');
      const std::string value = trim(line.substr(eq + 1));
      if (fam.pinned_t) throw ParseError("duplicate parameter header", lineno, 1);
      try {
        fam.pinned_t = parse_rational(value);
      } catch (const Error&) {
        throw ParseError("malformed rational parameter '" + value + "'", lineno,
                         codepoints(line, line.find_first_not_of(" \t", eq + 1)) + 1);
      }
      continue;
    }
    std::array<QPoly, 4> plane;
    std::size_t pos = 0;
    int field = 0;
    while (true) {
      pos = line.find_first_not_of(" \t\r", pos);
      if (pos == std::string::npos) break;
      const std::size_t end = std::min(line.find_first_of(" \t\r", pos), line.size());
      if (field == 4)
        throw ParseError("expected 4 coefficient expressions, found more", lineno, codepoints(line, pos) + 1);
      ParseOptions opt;
      opt.allow_division = false;
      opt.line = lineno;
      opt.column_offset = codepoints(line, pos);
      plane[field++] = parse_polynomial(line.substr(pos, end - pos), R, opt);
      pos = end;
    }
    if (field < 4)
      throw ParseError("expected 4 coefficient expressions, found " + std::to_string(field), lineno,
                       codepoints(line, line.size()) + 1);
    fam.planes.push_back(std::move(plane));
  }
  if (fam.planes.empty()) throw ParseError("arrangement has no planes", std::max(lineno, 1), 1);
  return fam;
}

std::string format_arrangement(const FamilyArrangement& fam) {
  std::string out;
  if (fam.pinned_t) out += "t = " + to_string(*fam.pinned_t) + "\n";
  for (const auto& p : fam.planes) {
    for (int i = 0; i < 4; ++i) {
      std::string s = p[i].to_string();
      s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
      out += (i ? " " : "") + s;
    }
    out += "\n";
  }
  return out;
}

}  // namespace octic
