#include "octic/finite_field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "octic/errors.hpp"

namespace octic {

namespace {

using u64 = std::uint64_t;

void trim(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const PrimePoly& f) { return static_cast<int>(f.size()) - 1; }

u64 inv_mod(u64 a, u64 p) {
  u64 result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// Remainder of a modulo b (b nonzero), coefficients mod p.
PrimePoly poly_mod(PrimePoly a, const PrimePoly& b, u64 p) {
  trim(a);
  const int db = degree(b);
  const u64 lead_inv = inv_mod(b.back(), p);
  while (degree(a) >= db) {
    const u64 factor = a.back() * lead_inv % p;
    const int shift = degree(a) - db;
    for (int i = 0; i <= db; ++i) {
      auto& slot = a[static_cast<std::size_t>(i + shift)];
      slot = static_cast<std::uint32_t>((slot + p - factor * b[static_cast<std::size_t>(i)] % p) % p);
    }
    trim(a);
  }
  return a;
}

PrimePoly poly_mulmod(const PrimePoly& a, const PrimePoly& b, const PrimePoly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  PrimePoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<u64>(a[i]) * b[j]) % p);
  return poly_mod(prod, m, p);
}

PrimePoly poly_gcd(PrimePoly a, PrimePoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    PrimePoly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^i) mod f by repeated p-th powering.
PrimePoly frobenius_power_of_x(const PrimePoly& f, u64 p, int i) {
  PrimePoly h = poly_mod(PrimePoly{0, 1}, f, p);
  for (int step = 0; step < i; ++step) {
    PrimePoly result{1};
    PrimePoly base = h;
    u64 e = p;
    while (e) {
      if (e & 1) result = poly_mulmod(result, base, f, p);
      base = poly_mulmod(base, base, f, p);
      e >>= 1;
    }
    h = result;
  }
  return h;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::string poly_string(const PrimePoly& f, const char* var) {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(f); i >= 0; --i) {
    const auto c = f[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(const PrimePoly& f_in, std::uint32_t p) {
  PrimePoly f = f_in;
  trim(f);
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  for (int i = 1; i <= n / 2; ++i) {
    PrimePoly h = frobenius_power_of_x(f, p, i);
    if (h.size() < 2) h.resize(2, 0);
    h[1] = static_cast<std::uint32_t>((h[1] + p - 1) % p);
    trim(h);
    PrimePoly g = poly_gcd(f, h, p);
    if (degree(g) > 0) return false;
  }
  return true;
}

PrimePoly find_irreducible(std::uint32_t p, int k) {
  if (k < 1) throw DomainError("extension degree must be positive");
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (k == 1) return PrimePoly{0, 1};
  u64 count = 1;
  for (int i = 0; i < k; ++i) count *= p;
  // Counter digits, most significant first, are (c_{k-1}, ..., c_0).
  for (u64 n = 0; n < count; ++n) {
    PrimePoly f(static_cast<std::size_t>(k) + 1, 0);
    f[static_cast<std::size_t>(k)] = 1;
    u64 rest = n;
    for (int i = 0; i < k; ++i) {
      f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (is_irreducible(f, p)) return f;
  }
  throw DomainError("no irreducible polynomial found");  // unreachable
}

struct FieldRegistry {
  std::mutex mutex;
  std::map<std::pair<std::uint32_t, int>, std::unique_ptr<FieldSpec>> specs;

  const FieldSpec& get(std::uint32_t p, int k) {
    std::lock_guard lock(mutex);
    auto& slot = specs[{p, k}];
    if (!slot) slot.reset(new FieldSpec(p, k, find_irreducible(p, k)));
    return *slot;
  }
};

namespace {
FieldRegistry& registry() {
  static FieldRegistry r;
  return r;
}
}  // namespace

const FieldSpec& FieldSpec::get(std::uint32_t p, int k) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (p <= 5)
    throw DomainError("field characteristic must be a prime p > 5 (got " + std::to_string(p) + ")");
  if (k < 1 || k > kMaxExtensionDegree)
    throw DomainError("extension degree must lie in [1, " + std::to_string(kMaxExtensionDegree) + "]");
  long double q = 1;
  for (int i = 0; i < k; ++i) q *= p;
  if (q > 1e15L) throw DomainError("field order too large");
  return registry().get(p, k);
}

FieldSpec::FieldSpec(std::uint32_t p, int k, PrimePoly modulus) : p_(p), k_(k), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < k; ++i) q_ *= p;
}

std::string FieldSpec::modulus_string() const { return poly_string(modulus_, "x"); }

std::string FieldSpec::label() const {
  if (k_ == 1) return "F_" + std::to_string(p_);
  return "F_" + std::to_string(p_) + "^" + std::to_string(k_) + " mod " + modulus_string();
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(const FieldSpec& spec, long long value) : spec_(&spec) {
  const long long p = spec.p();
  long long r = value % p;
  if (r < 0) r += p;
  c_[0] = static_cast<std::uint32_t>(r);
}

FieldElement::FieldElement(const FieldSpec& spec, std::span<const std::uint32_t> coeffs) : spec_(&spec) {
  // Reduce an arbitrary-length coefficient list modulo the field modulus.
  PrimePoly f(coeffs.begin(), coeffs.end());
  for (auto& c : f) c %= spec.p();
  if (spec.k() == 1) {
    // The k = 1 placeholder modulus is x: only the constant term survives.
    c_[0] = f.empty() ? 0 : f[0];
    return;
  }
  f = poly_mod(f, spec.modulus(), spec.p());
  for (std::size_t i = 0; i < f.size(); ++i) c_[i] = f[i];
}

FieldElement FieldElement::from_index(const FieldSpec& spec, std::uint64_t index) {
  FieldElement e = zero(spec);
  for (int i = 0; i < spec.k(); ++i) {
    e.c_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(index % spec.p());
    index /= spec.p();
  }
  return e;
}

std::uint64_t FieldElement::index() const {
  const auto& s = spec();
  u64 idx = 0;
  for (int i = s.k() - 1; i >= 0; --i) idx = idx * s.p() + c_[static_cast<std::size_t>(i)];
  return idx;
}

const FieldSpec& FieldElement::spec() const {
  if (!spec_) throw DomainError("field element without a field");
  return *spec_;
}

std::span<const std::uint32_t> FieldElement::coeffs() const {
  return {c_.data(), static_cast<std::size_t>(spec().k())};
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](auto c) { return c == 0; });
}

bool FieldElement::is_one() const {
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](auto c) { return c == 0; });
}

bool FieldElement::in_prime_field() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](auto c) { return c == 0; });
}

void FieldElement::check_same(const FieldElement& o) const {
  if (spec_ != o.spec_) {
    if (!spec_ || !o.spec_) throw DomainError("field element without a field");
    throw DomainError("field elements from different fields: " + spec_->label() + " vs " + o.spec_->label());
  }
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  const auto p = spec().p();
  for (auto& c : r.c_) c = c ? p - c : 0;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same(o);
  const auto p = spec_->p();
  for (int i = 0; i < spec_->k(); ++i) {
    auto s = static_cast<u64>(c_[static_cast<std::size_t>(i)]) + o.c_[static_cast<std::size_t>(i)];
    c_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same(o);
  const u64 p = spec_->p();
  const int k = spec_->k();
  if (k == 1) {
    c_[0] = static_cast<std::uint32_t>(static_cast<u64>(c_[0]) * o.c_[0] % p);
    return *this;
  }
  std::array<u64, 2 * kMaxExtensionDegree> prod{};
  for (int i = 0; i < k; ++i) {
    if (!c_[static_cast<std::size_t>(i)]) continue;
    for (int j = 0; j < k; ++j) {
      auto& slot = prod[static_cast<std::size_t>(i + j)];
      slot = (slot + static_cast<u64>(c_[static_cast<std::size_t>(i)]) * o.c_[static_cast<std::size_t>(j)]) % p;
    }
  }
  const auto& m = spec_->modulus();
  for (int d = 2 * k - 2; d >= k; --d) {
    const u64 factor = prod[static_cast<std::size_t>(d)];
    if (!factor) continue;
    prod[static_cast<std::size_t>(d)] = 0;
    for (int i = 0; i < k; ++i) {
      auto& slot = prod[static_cast<std::size_t>(d - k + i)];
      slot = (slot + p - factor * m[static_cast<std::size_t>(i)] % p) % p;
    }
  }
  for (int i = 0; i < k; ++i) c_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(prod[static_cast<std::size_t>(i)]);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

bool operator==(const FieldElement& a, const FieldElement& b) { return a.spec_ == b.spec_ && a.c_ == b.c_; }

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero in " + spec().label());
  return pow(spec().q() - 2);
}

FieldElement FieldElement::pow(std::uint64_t n) const {
  FieldElement result = one(spec());
  FieldElement base = *this;
  while (n) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

FieldElement FieldElement::pow(long long n) const {
  if (n >= 0) return pow(static_cast<std::uint64_t>(n));
  return inverse().pow(static_cast<std::uint64_t>(-n));
}

std::string FieldElement::to_string() const {
  if (spec().k() == 1) return std::to_string(c_[0]);
  PrimePoly f(c_.begin(), c_.begin() + spec().k());
  trim(f);
  return poly_string(f, "a");
}

bool lex_less(const FieldElement& a, const FieldElement& b) {
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

int quadratic_character(const FieldElement& a) {
  if (a.is_zero()) return 0;
  const auto r = a.pow((a.spec().q() - 1) / 2);
  return r.is_one() ? 1 : -1;
}

namespace {
FieldElement pick_representative(const FieldElement& r) {
  const FieldElement s = -r;
  return lex_less(s, r) ? s : r;
}
}  // namespace

std::optional<FieldElement> sqrt_exhaustive(const FieldElement& a) {
  const auto& spec = a.spec();
  for (u64 i = 0; i < spec.q(); ++i) {
    const auto r = FieldElement::from_index(spec, i);
    if (r * r == a) return pick_representative(r);
  }
  return std::nullopt;
}

std::optional<FieldElement> sqrt_tonelli_shanks(const FieldElement& a) {
  const auto& spec = a.spec();
  if (a.is_zero()) return a;
  if (quadratic_character(a) != 1) return std::nullopt;
  u64 odd = spec.q() - 1;
  int s = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++s;
  }
  FieldElement z;
  for (u64 i = 2; i < spec.q(); ++i) {
    z = FieldElement::from_index(spec, i);
    if (quadratic_character(z) == -1) break;
  }
  int m = s;
  FieldElement c = z.pow(odd);
  FieldElement t = a.pow(odd);
  FieldElement r = a.pow((odd + 1) / 2);
  while (!t.is_one()) {
    int i = 0;
    FieldElement t2 = t;
    while (!t2.is_one()) {
      t2 *= t2;
      ++i;
    }
    FieldElement b = c;
    for (int j = 0; j < m - i - 1; ++j) b *= b;
    m = i;
    c = b * b;
    t *= c;
    r *= b;
  }
  return pick_representative(r);
}

std::optional<FieldElement> sqrt_in_field(const FieldElement& a) {
  if (a.spec().q() <= (u64{1} << 16)) return sqrt_exhaustive(a);
  return sqrt_tonelli_shanks(a);
}

FieldElement horner(std::span<const FieldElement> coeffs, const FieldElement& x) {
  FieldElement acc = FieldElement::zero(x.spec());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<FieldRoot> univariate_roots(std::uint32_t p, const PrimePoly& f_in, int max_degree) {
  PrimePoly f = f_in;
  for (auto& c : f) c %= p;
  trim(f);
  if (f.empty()) throw DomainError("univariate_roots: zero polynomial");
  if (max_degree < 1 || max_degree > 4) throw DomainError("univariate_roots: extension degree must lie in [1, 4]");
  std::vector<FieldRoot> roots;
  for (int e = 1; e <= max_degree; ++e) {
    const auto& spec = FieldSpec::get(p, e);
    std::vector<FieldElement> coeffs;
    for (auto c : f) coeffs.emplace_back(spec, static_cast<long long>(c));
    for (u64 i = 0; i < spec.q(); ++i) {
      const auto a = FieldElement::from_index(spec, i);
      if (!horner(coeffs, a).is_zero()) continue;
      bool smaller = false;
      for (int d = 1; d < e && !smaller; ++d) {
        if (e % d) continue;
        u64 pd = 1;
        for (int j = 0; j < d; ++j) pd *= p;
        smaller = a.pow(pd) == a;
      }
      if (smaller) continue;
      // Multiplicity by repeated synthetic division by (x - a).
      int mult = 0;
      std::vector<FieldElement> cur = coeffs;
      while (cur.size() > 1 && horner(cur, a).is_zero()) {
        std::vector<FieldElement> quotient(cur.size() - 1, FieldElement::zero(spec));
        FieldElement carry = FieldElement::zero(spec);
        for (std::size_t j = cur.size() - 1; j >= 1; --j) {
          carry = carry * a + cur[j];
          quotient[j - 1] = carry;
        }
        cur = std::move(quotient);
        ++mult;
      }
      roots.push_back({a, e, mult});
    }
  }
  return roots;
}

std::vector<FieldRoot> univariate_roots(const std::vector<FieldElement>& f, int max_degree) {
  if (f.empty()) throw DomainError("univariate_roots: zero polynomial");
  PrimePoly g;
  for (const auto& c : f) {
    if (!c.in_prime_field()) throw UnsupportedError("univariate_roots: coefficients must lie in the prime field");
    g.push_back(c.coeff(0));
  }
  return univariate_roots(f.front().spec().p(), g, max_degree);
}

// ---------------------------------------------------------------------------

EncodedField::EncodedField(const FieldSpec& spec) : spec_(&spec), p_(spec.p()) {
  if (spec.q() > (u64{1} << 26)) throw TaskError("field too large for dense tables: " + spec.label());
  q_ = static_cast<std::uint32_t>(spec.q());
  // Primitive element: order exactly q - 1.
  const auto factors = prime_factors(q_ - 1);
  FieldElement g;
  for (std::uint32_t i = 1; i < q_; ++i) {
    g = FieldElement::from_index(spec, i);
    bool primitive = true;
    for (auto r : factors) {
      if (g.pow(static_cast<u64>((q_ - 1) / r)).is_one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) break;
  }
  log_.assign(q_, 0);
  exp_.assign(q_, 0);
  chi_.assign(q_, 0);
  FieldElement cur = FieldElement::one(spec);
  for (std::uint32_t e = 0; e + 1 < q_; ++e) {
    const auto idx = static_cast<std::uint32_t>(cur.index());
    exp_[e] = idx;
    log_[idx] = e;
    chi_[idx] = (e % 2 == 0) ? 1 : -1;
    cur *= g;
  }
  exp_[q_ - 1] = exp_[0];
  neg_.assign(q_, 0);
  for (std::uint32_t a = 0; a < q_; ++a) {
    std::uint32_t rest = a, out = 0, place = 1;
    for (int i = 0; i < spec.k(); ++i) {
      const std::uint32_t d = rest % p_;
      rest /= p_;
      out += (d ? p_ - d : 0) * place;
      place *= p_;
    }
    neg_[a] = out;
  }
  if (q_ <= 1024) {
    add_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (std::uint32_t a = 0; a < q_; ++a)
      for (std::uint32_t b = 0; b < q_; ++b) add_table_[static_cast<std::size_t>(a) * q_ + b] = add_digits(a, b);
  }
}

std::uint32_t EncodedField::add_digits(std::uint32_t a, std::uint32_t b) const {
  if (spec_->k() == 1) {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t out = 0, place = 1;
  for (int i = 0; i < spec_->k(); ++i) {
    std::uint32_t d = a % p_ + b % p_;
    if (d >= p_) d -= p_;
    a /= p_;
    b /= p_;
    out += d * place;
    place *= p_;
  }
  return out;
}

std::uint32_t EncodedField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

}  // namespace octic
