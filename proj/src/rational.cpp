#include "octic/rational.hpp"

#include <cctype>

#include "octic/errors.hpp"

namespace octic {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw DomainError("malformed rational '" + text + "'");
  Integer n(num[0] == '+' ? num.substr(1) : num);
  Integer d(den[0] == '+' ? den.substr(1) : den);
  return make_rational(n, d);
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
  Integer lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_num() * (lcm / x.get_den()));
  return primitive_integer_vector(out);
}

std::vector<Integer> primitive_integer_vector(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  std::vector<Integer> out = v;
  if (g == 0) return out;
  int sign = 0;
  for (const auto& x : v) {
    if (x != 0) {
      sign = sgn(x);
      break;
    }
  }
  for (auto& x : out) x = sign * x / g;
  return out;
}

long long mod_reduce(const Integer& z, long long m) {
  Integer r;
  Integer mm(static_cast<long>(m));
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mm.get_mpz_t());
  return r.get_si();
}

}  // namespace octic
