#include "octic/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "octic/errors.hpp"
#include "octic/univariate.hpp"

namespace octic {

namespace {

using cplx = std::complex<long double>;

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Dense<Rational> to_dense(const IntPoly& f) {
  Dense<Rational> d;
  d.zero = 0;
  for (const auto& c : f) d.c.push_back(Rational(c));
  d.trim();
  return d;
}

IntPoly from_dense_integral(const Dense<Rational>& d) {
  IntPoly out;
  for (const auto& c : d.c) {
    if (c.get_den() != 1) throw DataError("non-integral quotient in zeta reduction");
    out.push_back(c.get_num());
  }
  trim(out);
  return out;
}

// Scales so the constant term is 1.
Dense<Rational> unit_constant(Dense<Rational> d) {
  const Rational c0 = d.c.at(0);
  for (auto& c : d.c) c = Rational(c / c0);
  return d;
}

Dense<Rational> exact_div(const Dense<Rational>& a, const Dense<Rational>& b) {
  Dense<Rational> q, r;
  dense_divmod(a, b, q, r);
  if (!r.is_zero()) throw DataError("inexact polynomial division");
  return q;
}

std::vector<std::pair<Dense<Rational>, int>> yun(const Dense<Rational>& f) {
  std::vector<std::pair<Dense<Rational>, int>> out;
  Dense<Rational> fp = dense_derivative(f);
  Dense<Rational> a = dense_gcd(f, fp);
  Dense<Rational> b = exact_div(f, a);
  Dense<Rational> c = exact_div(fp, a);
  Dense<Rational> bp = dense_derivative(b);
  Dense<Rational> d = c;
  for (std::size_t i = 0; i < bp.c.size() || i < d.c.size(); ++i) {
    if (i >= d.c.size()) d.c.push_back(Rational(0));
    if (i < bp.c.size()) d.c[i] -= bp.c[i];
  }
  d.trim();
  int mult = 1;
  while (b.degree() > 0) {
    Dense<Rational> g = dense_gcd(b, d);
    b = exact_div(b, g);
    c = exact_div(d, g);
    if (g.degree() > 0) out.push_back({g, mult});
    bp = dense_derivative(b);
    d = c;
    for (std::size_t i = 0; i < bp.c.size() || i < d.c.size(); ++i) {
      if (i >= d.c.size()) d.c.push_back(Rational(0));
      if (i < bp.c.size()) d.c[i] -= bp.c[i];
    }
    d.trim();
    ++mult;
  }
  return out;
}

cplx horner(const std::vector<long double>& c, cplx z) {
  cplx acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

long double scale_at(const std::vector<long double>& c, long double r) {
  long double s = 0, pw = 1;
  for (long double v : c) {
    s += std::fabs(v) * pw;
    pw *= r;
  }
  return s;
}

std::vector<cplx> durand_kerner(const std::vector<long double>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<long double> m(c.size());
  for (std::size_t i = 0; i <= n; ++i) m[i] = c[i] / c[n];
  if (n == 1) return {cplx(-m[0], 0)};
  long double bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, std::fabs(m[i]));
  bound += 1;
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long double ang = 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L;
    z[k] = std::polar(bound, ang);
  }
  const int cap = 20000;
  for (int it = 0; it < cap; ++it) {
    long double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
      cplx den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) den *= z[k] - z[j];
      if (std::abs(den) == 0) den = cplx(1e-30L, 0);
      const cplx step = horner(m, z[k]) / den;
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max<long double>(1, std::abs(z[k])));
    }
    if (worst < 1e-17L) return z;
  }
  std::ostringstream msg;
  msg << "Durand-Kerner did not converge for degree " << n << " after " << cap << " iterations";
  throw NumericalError(msg.str());
}

}  // namespace

IntPoly intpoly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

std::string intpoly_string(const IntPoly& f) {
  if (f.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    Integer a = abs(f[i]);
    if (s.empty()) s += f[i] < 0 ? "-" : "";
    else s += f[i] < 0 ? " - " : " + ";
    if (i == 0) s += a.get_str();
    else {
      if (a != 1) s += a.get_str() + "*";
      s += i == 1 ? "T" : "T^" + std::to_string(i);
    }
  }
  return s;
}

ZetaFunction ZetaFunction::make(IntPoly numerator, IntPoly denominator, const Integer& q) {
  trim(numerator);
  trim(denominator);
  if (numerator.empty()) numerator = {1};
  if (denominator.empty()) denominator = {1};
  if (numerator[0] != 1 || denominator[0] != 1) throw DataError("zeta polynomials must have constant term 1");
  if (q < 2) throw DataError("zeta needs q >= 2");
  Dense<Rational> n = to_dense(numerator), d = to_dense(denominator);
  const Dense<Rational> g = dense_gcd(n, d);
  if (g.degree() > 0) {
    const Dense<Rational> gu = unit_constant(g);
    numerator = from_dense_integral(exact_div(n, gu));
    denominator = from_dense_integral(exact_div(d, gu));
  }
  return ZetaFunction{numerator, denominator, q};
}

std::string ZetaFunction::to_string() const {
  return "num=" + intpoly_string(numerator) + "; den=" + intpoly_string(denominator) + "; q=" + q.get_str();
}

ZetaFunction operator*(const ZetaFunction& a, const ZetaFunction& b) {
  if (a.q != b.q) throw TaskError("zeta functions over different q");
  return ZetaFunction::make(intpoly_mul(a.numerator, b.numerator), intpoly_mul(a.denominator, b.denominator), a.q);
}

ZetaFunction zeta_elliptic_from_count(const Integer& n1, const Integer& p) {
  const Integer a = p + 1 - n1;
  if (a * a > 4 * p) throw DataError("Hasse bound violated: N1 = " + n1.get_str() + " over F_" + p.get_str());
  return ZetaFunction::make({1, Integer(-a), p}, {1, Integer(-(p + 1)), p}, p);
}

Integer frobenius_trace(const ZetaFunction& elliptic) {
  if (elliptic.numerator.size() != 3) throw DataError("not an elliptic zeta numerator");
  return -elliptic.numerator[1];
}

Integer power_sum(const IntPoly& f, int k) {
  if (k < 1) throw DomainError("power sums start at k = 1");
  if (f.empty() || f[0] != 1) throw DataError("power sums need constant term 1");
  const int n = static_cast<int>(f.size()) - 1;
  // e_j = (-1)^j c_j
  auto e = [&](int j) -> Integer { return j > n ? Integer(0) : (j % 2 ? Integer(-f[static_cast<std::size_t>(j)]) : f[static_cast<std::size_t>(j)]); };
  std::vector<Integer> p(static_cast<std::size_t>(k) + 1, 0);
  for (int m = 1; m <= k; ++m) {
    Integer s = 0;
    for (int j = 1; j < m; ++j) s += (j % 2 ? 1 : -1) * e(j) * p[static_cast<std::size_t>(m - j)];
    s += (m % 2 ? 1 : -1) * m * e(m);
    p[static_cast<std::size_t>(m)] = s;
  }
  return p[static_cast<std::size_t>(k)];
}

Integer predict_count(const ZetaFunction& z, int k) {
  return power_sum(z.denominator, k) - power_sum(z.numerator, k);
}

std::vector<std::complex<double>> complex_roots(const IntPoly& f0) {
  IntPoly f = f0;
  trim(f);
  if (f.size() < 2) throw DomainError("complex_roots needs degree >= 1");
  std::vector<std::complex<double>> out;
  for (const auto& [factor, mult] : yun(to_dense(f))) {
    std::vector<long double> c;
    for (const auto& v : factor.c) c.push_back(static_cast<long double>(v.get_d()));
    auto roots = durand_kerner(c);
    for (auto& r : roots) {
      for (int it = 0; it < 3; ++it) {
        std::vector<long double> dc;
        for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<long double>(i));
        const cplx d = horner(dc, r);
        if (std::abs(d) == 0) break;
        r -= horner(c, r) / d;
      }
      const long double res = std::abs(horner(c, r));
      if (res > 1e-10L * scale_at(c, std::abs(r))) {
        std::ostringstream msg;
        msg << "root " << static_cast<double>(r.real()) << "+" << static_cast<double>(r.imag())
            << "i has residual " << static_cast<double>(res);
        throw NumericalError(msg.str());
      }
      for (int m = 0; m < mult; ++m)
        out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return out;
}

std::size_t WeightMultiset::count(int i) const {
  auto it = buckets.find(i);
  return it == buckets.end() ? 0 : it->second.size();
}

std::set<int> WeightMultiset::populated() const {
  std::set<int> s;
  for (const auto& [i, v] : buckets)
    if (!v.empty()) s.insert(i);
  return s;
}

WeightMultiset weight_buckets(const ZetaFunction& z, double tol) {
  WeightMultiset w;
  if (z.numerator.size() < 2) return w;
  const double lq = std::log(z.q.get_d());
  for (const auto& r : complex_roots(z.numerator)) {
    const double mag = std::abs(r);
    bool placed = false;
    for (int i = 0; i <= 6 && !placed; ++i) {
      const double target = std::exp(-0.5 * i * lq);
      if (std::fabs(mag - target) <= tol * target) {
        w.buckets[i].push_back(r);
        placed = true;
      }
    }
    if (!placed) w.unassigned.push_back(r);
  }
  return w;
}

ObstructionVerdict weight3_obstruction(const ZetaFunction& a, const ZetaFunction& b) {
  if (a.q != b.q) throw TaskError("weight comparison needs zetas over the same q");
  ObstructionVerdict v;
  v.weight3_a = weight_buckets(a).count(3);
  v.weight3_b = weight_buckets(b).count(3);
  v.obstructed = v.weight3_a != v.weight3_b;
  return v;
}

bool weil_check(const ZetaFunction& z, const std::set<int>& expected_weights, double tol) {
  const auto w = weight_buckets(z, tol);
  if (!w.unassigned.empty()) return false;
  for (int i : w.populated())
    if (!expected_weights.count(i)) return false;
  return true;
}

ZetaFunction random_low_weight_factor(const Integer& q, std::mt19937_64& rng) {
  const std::vector<IntPoly> weight0{{1, -1}, {1, 1}, {1, 0, 1}, {1, 1, 1}, {1, -1, 1}};
  IntPoly num{1}, den{1};
  const int pieces = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < pieces; ++i) {
    if (rng() % 2) {
      num = intpoly_mul(num, weight0[rng() % weight0.size()]);
    } else {
      // a^2 < 4q
      const long bound = static_cast<long>(std::floor(2 * std::sqrt(q.get_d())));
      long a = static_cast<long>(rng() % static_cast<unsigned long>(2 * bound + 1)) - bound;
      if (Integer(a) * a >= 4 * q) a = 0;
      num = intpoly_mul(num, IntPoly{1, Integer(-a), q});
    }
  }
  const int dens = static_cast<int>(rng() % 3);
  for (int i = 0; i < dens; ++i) den = intpoly_mul(den, rng() % 2 ? IntPoly{1, -1} : IntPoly{1, Integer(-q)});
  return ZetaFunction::make(num, den, q);
}

}  // namespace octic
