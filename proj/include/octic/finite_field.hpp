#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace octic {

inline constexpr int kMaxExtensionDegree = 8;

// Dense polynomial over F_p, lowest degree first. Used for moduli and for the
// small amount of polynomial arithmetic needed to pick them.
using PrimePoly = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t n);

// F_{p^k} for an odd prime p > 5, realized as F_p[x]/(modulus). Specs are
// interned: FieldSpec::get returns a reference that stays valid for the life
// of the process, so elements can carry a plain pointer to their field.
class FieldSpec {
 public:
  static const FieldSpec& get(std::uint32_t p, int k = 1);

  std::uint32_t p() const { return p_; }
  int k() const { return k_; }
  std::uint64_t q() const { return q_; }
  // Monic modulus, lowest degree first (length k + 1). For k = 1 this is the
  // placeholder x.
  const PrimePoly& modulus() const { return modulus_; }
  std::string modulus_string() const;
  std::string label() const;  // "F_7", "F_7^2 mod x^2 + 1"

  FieldSpec(const FieldSpec&) = delete;
  FieldSpec& operator=(const FieldSpec&) = delete;

 private:
  FieldSpec(std::uint32_t p, int k, PrimePoly modulus);
  friend struct FieldRegistry;

  std::uint32_t p_;
  int k_;
  std::uint64_t q_;
  PrimePoly modulus_;
};

// Monic irreducible of degree k over F_p that is smallest in the order which
// compares (c_{k-1}, ..., c_1, c_0), constant term last. Works for any prime p.
PrimePoly find_irreducible(std::uint32_t p, int k);
bool is_irreducible(const PrimePoly& f, std::uint32_t p);

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const FieldSpec& spec, long long value);
  FieldElement(const FieldSpec& spec, std::span<const std::uint32_t> coeffs);

  static FieldElement zero(const FieldSpec& spec) { return FieldElement(spec, 0); }
  static FieldElement one(const FieldSpec& spec) { return FieldElement(spec, 1); }
  // Base-p digit decoding: index = sum c_i p^i.
  static FieldElement from_index(const FieldSpec& spec, std::uint64_t index);
  std::uint64_t index() const;

  const FieldSpec& spec() const;
  bool bound() const { return spec_ != nullptr; }
  std::span<const std::uint32_t> coeffs() const;
  std::uint32_t coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }
  bool is_zero() const;
  bool is_one() const;
  // True when the element lies in the prime subfield.
  bool in_prime_field() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  FieldElement inverse() const;
  FieldElement pow(std::uint64_t n) const;
  FieldElement pow(long long n) const;
  FieldElement frobenius() const { return pow(static_cast<std::uint64_t>(spec().p())); }

  std::string to_string() const;

 private:
  void check_same(const FieldElement& o) const;

  const FieldSpec* spec_ = nullptr;
  std::array<std::uint32_t, kMaxExtensionDegree> c_{};
};

// Lexicographic comparison of coefficient vectors (c_0, c_1, ...).
bool lex_less(const FieldElement& a, const FieldElement& b);

// chi(a) in {-1, 0, 1} computed as a^((q-1)/2).
int quadratic_character(const FieldElement& a);

// Square root with the lexicographically smaller coefficient vector, or none
// for non-squares. Exhaustive search up to q = 2^16, Tonelli-Shanks above.
std::optional<FieldElement> sqrt_in_field(const FieldElement& a);
std::optional<FieldElement> sqrt_tonelli_shanks(const FieldElement& a);
std::optional<FieldElement> sqrt_exhaustive(const FieldElement& a);

// Univariate polynomial over F_p with coefficients in [0, p), lowest first.
struct FieldRoot {
  FieldElement value;  // lives in F_{p^degree}
  int degree = 1;      // smallest e with value in F_{p^e}
  int multiplicity = 1;
};

// All roots of f (coefficients in F_p) lying in F_{p^e} for e <= max_degree,
// each reported once in the smallest field containing it. Exhaustive search.
std::vector<FieldRoot> univariate_roots(std::uint32_t p, const PrimePoly& f, int max_degree);

// Same search for f with coefficients in an arbitrary field F (they must lie
// in the prime subfield for the extension search to make sense).
std::vector<FieldRoot> univariate_roots(const std::vector<FieldElement>& f, int max_degree);

FieldElement horner(std::span<const FieldElement> coeffs_low_first, const FieldElement& x);

// Dense table form of F_q used by the counting kernels. Elements are encoded
// as base-p digit integers in [0, q). Multiplication goes through discrete
// log tables; addition uses a q x q table for small q and digit arithmetic
// otherwise.
class EncodedField {
 public:
  explicit EncodedField(const FieldSpec& spec);

  const FieldSpec& spec() const { return *spec_; }
  std::uint32_t q() const { return q_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  int chi(std::uint32_t a) const { return chi_[a]; }
  const std::vector<std::int8_t>& chi_table() const { return chi_; }
  std::uint32_t encode(const FieldElement& a) const { return static_cast<std::uint32_t>(a.index()); }
  FieldElement decode(std::uint32_t a) const { return FieldElement::from_index(*spec_, a); }
  std::uint32_t from_int(long long v) const;
  std::uint32_t generator() const { return exp_[1]; }

 private:
  std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const;

  const FieldSpec* spec_;
  std::uint32_t q_;
  std::uint32_t p_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> add_table_;
  std::vector<std::int8_t> chi_;
};

}  // namespace octic
