#include "octic/counting.hpp"

#include <fcntl.h>
#include <openssl/evp.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "octic/errors.hpp"

namespace octic {

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

const FieldSpec& spec_of(const FPoly& f) {
  const auto& d = f.ring()->domain();
  if (!d.spec) throw TaskError("polynomial has no field attached");
  return *d.spec;
}

void check_odd(const FieldSpec& spec) {
  if (spec.p() == 2) throw TaskError("characteristic 2 is not supported");
}

// f compiled against encoded field tables.
struct Compiled {
  std::size_t nvars = 0;
  u32 maxdeg = 0;
  std::vector<u32> coeffs;
  std::vector<u32> exps;  // nvars per term

  Compiled(const FPoly& f, const EncodedField& F) : nvars(f.ring()->nvars()) {
    for (const auto& t : f.terms()) {
      coeffs.push_back(F.encode(t.coeff));
      for (std::size_t i = 0; i < nvars; ++i) {
        exps.push_back(t.mono[i]);
        maxdeg = std::max(maxdeg, t.mono[i]);
      }
    }
  }

  u32 eval(const EncodedField& F, const u32* pt, std::vector<u32>& pw) const {
    const std::size_t stride = maxdeg + 1;
    pw.resize(nvars * stride);
    for (std::size_t i = 0; i < nvars; ++i) {
      pw[i * stride] = 1;
      for (u32 e = 1; e <= maxdeg; ++e) pw[i * stride + e] = F.mul(pw[i * stride + e - 1], pt[i]);
    }
    u32 acc = 0;
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      u32 v = coeffs[t];
      for (std::size_t i = 0; i < nvars && v; ++i) v = F.mul(v, pw[i * stride + exps[t * nvars + i]]);
      acc = F.add(acc, v);
    }
    return acc;
  }
};

// Sum of fn(point) over the four affine strata of P^3; the big stratum is
// split by its second coordinate across threads.
template <class Fn>
u64 sum_over_P3(const EncodedField& F, unsigned jobs, const Fn& fn) {
  const u32 q = F.q();
  const u32 one = F.from_int(1);
  jobs = std::max(1u, std::min<unsigned>(jobs, q));
  std::vector<u64> partial(jobs, 0);
  auto work = [&](unsigned j) {
    u64 s = 0;
    std::array<u32, 4> pt{one, 0, 0, 0};
    for (u32 y = j; y < q; y += jobs) {
      pt[1] = y;
      for (u32 z = 0; z < q; ++z) {
        pt[2] = z;
        for (u32 v = 0; v < q; ++v) {
          pt[3] = v;
          s += fn(pt.data());
        }
      }
    }
    partial[j] = s;
  };
  std::vector<std::thread> threads;
  for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(work, j);
  work(0);
  for (auto& t : threads) t.join();
  u64 total = 0;
  for (u64 s : partial) total += s;
  std::array<u32, 4> pt{0, one, 0, 0};
  for (u32 z = 0; z < q; ++z)
    for (u32 v = 0; v < q; ++v) {
      pt[2] = z;
      pt[3] = v;
      total += fn(pt.data());
    }
  pt = {0, 0, one, 0};
  for (u32 v = 0; v < q; ++v) {
    pt[3] = v;
    total += fn(pt.data());
  }
  pt = {0, 0, 0, one};
  total += fn(pt.data());
  return total;
}

void require_four_vars(const FPoly& f) {
  if (f.ring()->nvars() != 4) throw TaskError("P^3 counts need a ring with four variables");
}

void require_homogeneous(const FPoly& f, int degree) {
  if (f.is_zero()) throw TaskError("zero polynomial");
  if (!f.is_homogeneous()) throw TaskError("polynomial is not homogeneous");
  if (degree >= 0 && static_cast<int>(f.total_degree()) != degree)
    throw TaskError("expected degree " + std::to_string(degree) + ", got " + std::to_string(f.total_degree()));
}

std::string hex(const unsigned char* d, unsigned n) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < n; ++i) {
    s += digits[d[i] >> 4];
    s += digits[d[i] & 15];
  }
  return s;
}

}  // namespace

std::uint64_t count_double_cover_P3(const FPoly& octic, unsigned jobs) {
  require_four_vars(octic);
  require_homogeneous(octic, 8);
  const FieldSpec& spec = spec_of(octic);
  check_odd(spec);
  const EncodedField F(spec);
  const Compiled c(octic, F);
  const auto& chi = F.chi_table();
  return sum_over_P3(F, jobs, [&](const u32* pt) -> u64 {
    thread_local std::vector<u32> pw;
    return static_cast<u64>(1 + chi[c.eval(F, pt, pw)]);
  });
}

std::uint64_t count_double_cover_P3(const std::vector<FPoly>& linear_forms, unsigned jobs) {
  if (linear_forms.size() != 8) throw TaskError("double octic needs eight linear forms");
  const FieldSpec& spec = spec_of(linear_forms[0]);
  check_odd(spec);
  const EncodedField F(spec);
  const u32 q = F.q();
  std::vector<std::array<u32, 4>> c(8);
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& f = linear_forms[i];
    require_four_vars(f);
    require_homogeneous(f, 1);
    if (&spec_of(f) != &spec) throw TaskError("linear forms over different fields");
    c[i] = {0, 0, 0, 0};
    for (const auto& t : f.terms())
      for (std::size_t j = 0; j < 4; ++j)
        if (t.mono[j]) c[i][j] = F.encode(t.coeff);
  }
  // last[i][v] = c_v * v for the innermost coordinate.
  std::vector<std::vector<u32>> last(8, std::vector<u32>(q));
  for (std::size_t i = 0; i < 8; ++i)
    for (u32 v = 0; v < q; ++v) last[i][v] = F.mul(c[i][3], v);
  const auto& chi = F.chi_table();

  auto run_v = [&](const std::array<u32, 8>& base) -> u64 {
    u64 s = 0;
    for (u32 v = 0; v < q; ++v) {
      int prod = 1;
      for (std::size_t i = 0; i < 8 && prod; ++i) prod *= chi[F.add(base[i], last[i][v])];
      s += static_cast<u64>(1 + prod);
    }
    return s;
  };

  jobs = std::max(1u, std::min<unsigned>(jobs, q));
  std::vector<u64> partial(jobs, 0);
  auto work = [&](unsigned j) {
    u64 s = 0;
    std::array<u32, 8> base{};
    for (u32 y = j; y < q; y += jobs) {
      std::array<u32, 8> xy{};
      for (std::size_t i = 0; i < 8; ++i) xy[i] = F.add(c[i][0], F.mul(c[i][1], y));
      for (u32 z = 0; z < q; ++z) {
        for (std::size_t i = 0; i < 8; ++i) base[i] = F.add(xy[i], F.mul(c[i][2], z));
        s += run_v(base);
      }
    }
    partial[j] = s;
  };
  std::vector<std::thread> threads;
  for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(work, j);
  work(0);
  for (auto& t : threads) t.join();
  u64 total = 0;
  for (u64 s : partial) total += s;
  std::array<u32, 8> base{};
  for (u32 z = 0; z < q; ++z) {
    for (std::size_t i = 0; i < 8; ++i) base[i] = F.add(c[i][1], F.mul(c[i][2], z));
    total += run_v(base);
  }
  for (std::size_t i = 0; i < 8; ++i) base[i] = c[i][2];
  total += run_v(base);
  int prod = 1;
  for (std::size_t i = 0; i < 8; ++i) prod *= chi[c[i][3]];
  total += static_cast<u64>(1 + prod);
  return total;
}

std::uint64_t count_projective_hypersurface(const FPoly& f, unsigned jobs) {
  require_four_vars(f);
  require_homogeneous(f, -1);
  const EncodedField F(spec_of(f));
  const Compiled c(f, F);
  return sum_over_P3(F, jobs, [&](const u32* pt) -> u64 {
    thread_local std::vector<u32> pw;
    return c.eval(F, pt, pw) == 0 ? 1 : 0;
  });
}

std::uint64_t count_affine_zeros(const std::vector<FPoly>& system) {
  if (system.empty()) throw TaskError("empty system");
  const auto& ring = system[0].ring();
  for (const auto& f : system)
    if (!(*f.ring() == *ring)) throw TaskError("system polynomials live in different rings");
  const EncodedField F(spec_of(system[0]));
  const std::size_t n = ring->nvars();
  long double size = 1;
  for (std::size_t i = 0; i < n; ++i) size *= F.q();
  if (size > 1e9L) throw TaskError("affine domain too large");
  std::vector<Compiled> cs;
  for (const auto& f : system) cs.emplace_back(f, F);
  std::vector<u32> pt(n, 0), pw;
  u64 count = 0;
  while (true) {
    bool zero = true;
    for (const auto& c : cs)
      if (c.eval(F, pt.data(), pw) != 0) {
        zero = false;
        break;
      }
    if (zero) ++count;
    std::size_t i = 0;
    while (i < n && ++pt[i] == F.q()) pt[i++] = 0;
    if (i == n) break;
  }
  return count;
}

std::uint64_t count_legendre_curve(const FieldElement& lambda) {
  const FieldSpec& spec = lambda.spec();
  check_odd(spec);
  if (lambda.is_zero() || lambda.is_one()) throw TaskError("degenerate Legendre parameter");
  const EncodedField F(spec);
  const u32 l = F.encode(lambda), m1 = F.encode(-FieldElement::one(spec)), ml = F.neg(l);
  u64 n = 1;
  for (u32 x = 0; x < F.q(); ++x) n += static_cast<u64>(1 + F.chi(F.mul(F.mul(x, F.add(x, m1)), F.add(x, ml))));
  return n;
}

// --------------------------------------------------------------- tasks

std::string kind_name(CountKind kind) {
  switch (kind) {
    case CountKind::AffineZeros: return "affine-zeros";
    case CountKind::ProjectiveHypersurface: return "projective-hypersurface";
    case CountKind::DoubleCoverP3: return "double-cover-P3";
    case CountKind::LegendreCurve: return "legendre-curve";
  }
  return "?";
}

namespace {

QPoly task_product(const CountTask& t) {
  QPoly f = QPoly::constant(t.polys.at(0).ring(), 1);
  for (const auto& g : t.polys) f *= g;
  return f;
}

std::vector<FPoly> reduce_all(const std::vector<QPoly>& polys, const FieldSpec& spec) {
  if (polys.empty()) throw TaskError("task without polynomials");
  auto ring = make_fp_ring(polys[0].ring()->vars(), spec);
  std::vector<FPoly> out;
  for (const auto& f : polys) out.push_back(reduce_mod(f, ring));
  return out;
}

bool is_factored_octic(const CountTask& t) {
  return t.polys.size() == 8;
}

}  // namespace

std::uint64_t CountTask::q() const {
  return FieldSpec::get(p, k).q();
}

std::string CountTask::canonical() const {
  const FieldSpec& spec = FieldSpec::get(p, k);
  std::ostringstream s;
  s << "kind=" << kind_name(kind) << "\n";
  if (kind == CountKind::LegendreCurve) {
    s << "lambda=" << lambda.get_str() << "\n";
  } else {
    const auto& vars = polys.at(0).ring()->vars();
    s << "vars=";
    for (std::size_t i = 0; i < vars.size(); ++i) s << (i ? "," : "") << vars[i];
    s << "\n";
    if (kind == CountKind::DoubleCoverP3) {
      s << "f=" << task_product(*this).to_string() << "\n";
    } else {
      std::vector<std::string> fs;
      for (const auto& f : polys) fs.push_back(f.to_string());
      for (const auto& f : fs) s << "f=" << f << "\n";
    }
  }
  s << "p=" << p << "\nk=" << k << "\nmodulus=" << spec.modulus_string() << "\n";
  return s.str();
}

std::string CountTask::digest() const {
  const std::string c = canonical();
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  if (!EVP_Digest(c.data(), c.size(), out, &n, EVP_sha256(), nullptr)) throw TaskError("SHA-256 failed");
  return hex(out, n);
}

std::uint64_t CountTask::oracle_domain() const {
  const u64 qq = q();
  switch (kind) {
    case CountKind::LegendreCurve: return qq * qq;
    case CountKind::AffineZeros: {
      long double s = 1;
      for (std::size_t i = 0; i < polys.at(0).ring()->nvars(); ++i) s *= static_cast<long double>(qq);
      return s > 1e18L ? ~u64{0} : static_cast<u64>(s);
    }
    default: {
      long double s = static_cast<long double>(qq);
      s = s * s * s * s;
      return s > 1e18L ? ~u64{0} : static_cast<u64>(s);
    }
  }
}

CountTask octic_task(const std::vector<Plane>& planes, std::uint32_t p, int k) {
  auto ring = make_ring<Rational>({"x", "y", "z", "v"});
  CountTask t;
  t.kind = CountKind::DoubleCoverP3;
  t.p = p;
  t.k = k;
  for (const auto& pl : planes) {
    QPoly f(ring);
    const char* names[] = {"x", "y", "z", "v"};
    for (int i = 0; i < 4; ++i) f += QPoly::variable(ring, names[i]).scaled(Rational(pl.coeffs[static_cast<std::size_t>(i)]));
    t.polys.push_back(f);
  }
  return t;
}

CountTask legendre_task(const Rational& lambda, std::uint32_t p, int k) {
  CountTask t;
  t.kind = CountKind::LegendreCurve;
  t.lambda = lambda;
  t.p = p;
  t.k = k;
  return t;
}

CountResult run_count(const CountTask& task, unsigned jobs) {
  const FieldSpec& spec = FieldSpec::get(task.p, task.k);
  const auto t0 = std::chrono::steady_clock::now();
  CountResult r;
  r.hash = task.digest();
  r.q = spec.q();
  r.engine = "fast";
  switch (task.kind) {
    case CountKind::LegendreCurve:
      r.N = count_legendre_curve(FiniteDomain{&spec}.from_rational(task.lambda));
      break;
    case CountKind::AffineZeros:
      r.N = count_affine_zeros(reduce_all(task.polys, spec));
      break;
    case CountKind::ProjectiveHypersurface: {
      if (task.polys.size() != 1) throw TaskError("projective count takes one polynomial");
      r.N = count_projective_hypersurface(reduce_all(task.polys, spec)[0], jobs);
      break;
    }
    case CountKind::DoubleCoverP3: {
      const auto fs = reduce_all(task.polys, spec);
      if (is_factored_octic(task)) {
        r.N = count_double_cover_P3(fs, jobs);
      } else if (fs.size() == 1) {
        r.N = count_double_cover_P3(fs[0], jobs);
      } else {
        throw TaskError("double cover task needs one octic or eight linear forms");
      }
      break;
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// --------------------------------------------------------------- oracle

namespace {

std::vector<FieldElement> all_elements(const FieldSpec& spec) {
  std::vector<FieldElement> out;
  for (u64 i = 0; i < spec.q(); ++i) out.push_back(FieldElement::from_index(spec, i));
  return out;
}

// number of u with u^2 = w, by squaring every u
std::vector<u32> square_counts(const std::vector<FieldElement>& elems) {
  std::vector<u32> n(elems.size(), 0);
  for (const auto& u : elems) ++n[(u * u).index()];
  return n;
}

}  // namespace

CountResult naive_oracle(const CountTask& task) {
  const FieldSpec& spec = FieldSpec::get(task.p, task.k);
  if (task.oracle_domain() > kOracleLimit)
    throw TaskError("oracle refuses a domain of " + std::to_string(task.oracle_domain()) + " representatives");
  if (spec.p() == 2) throw TaskError("characteristic 2 is not supported");
  const auto t0 = std::chrono::steady_clock::now();
  CountResult r;
  r.hash = task.digest();
  r.q = spec.q();
  r.engine = "oracle";
  const auto elems = all_elements(spec);
  const u64 q = spec.q();

  if (task.kind == CountKind::LegendreCurve) {
    const FieldElement l = FiniteDomain{&spec}.from_rational(task.lambda);
    if (l.is_zero() || l.is_one()) throw TaskError("degenerate Legendre parameter");
    u64 n = 1;  // the point at infinity
    for (const auto& x : elems) {
      const FieldElement rhs = x * (x - FieldElement::one(spec)) * (x - l);
      for (const auto& y : elems)
        if (y * y == rhs) ++n;
    }
    r.N = n;
  } else {
    std::vector<FPoly> fs = reduce_all(task.polys, spec);
    if (task.kind == CountKind::DoubleCoverP3) {
      FPoly prod = FPoly::constant(fs[0].ring(), 1);
      for (const auto& f : fs) prod *= f;
      if (!prod.is_homogeneous() || prod.total_degree() != 8) throw TaskError("branch is not an octic form");
      fs = {prod};
    }
    const std::size_t n = fs[0].ring()->nvars();
    std::vector<FieldElement> inv(q);
    for (const auto& a : elems)
      for (const auto& b : elems)
        if ((a * b).is_one()) inv[a.index()] = b;
    const auto sq = square_counts(elems);
    std::set<std::vector<u64>> seen;
    std::vector<u64> idx(n, 0);
    std::vector<FieldElement> pt(n, elems[0]);
    u64 total = 0;
    while (true) {
      for (std::size_t i = 0; i < n; ++i) pt[i] = elems[idx[i]];
      if (task.kind == CountKind::AffineZeros) {
        bool zero = true;
        for (const auto& f : fs)
          if (!f.evaluate(pt).is_zero()) zero = false;
        if (zero) ++total;
      } else {
        // projective point: scale so the first nonzero coordinate is 1
        std::size_t lead = 0;
        while (lead < n && idx[lead] == 0) ++lead;
        if (lead < n) {
          const FieldElement s = inv[idx[lead]];
          std::vector<u64> key(n);
          std::vector<FieldElement> rep(n, elems[0]);
          for (std::size_t i = 0; i < n; ++i) {
            rep[i] = pt[i] * s;
            key[i] = rep[i].index();
          }
          if (seen.insert(key).second) {
            const FieldElement w = fs[0].evaluate(rep);
            if (task.kind == CountKind::DoubleCoverP3) total += sq[w.index()];
            else if (w.is_zero()) ++total;
          }
        }
      }
      std::size_t i = 0;
      while (i < n && ++idx[i] == q) idx[i++] = 0;
      if (i == n) break;
    }
    if (task.kind != CountKind::AffineZeros) {
      u64 expect = 0, pw = 1;
      for (std::size_t i = 0; i < n; ++i, pw *= q) expect += pw;
      if (seen.size() != expect) throw TaskError("oracle deduplication produced a wrong number of projective points");
    }
    r.N = total;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// --------------------------------------------------------------- cache

CountCache::CountCache(std::string path) : path_(std::move(path)) {}

std::optional<std::uint64_t> CountCache::get(const std::string& hash, std::uint64_t q) {
  std::lock_guard<std::mutex> lock(mutex_);
  warnings_.clear();
  std::ifstream in(path_);
  if (!in) return std::nullopt;
  std::string line;
  std::optional<u64> found;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string h, qs, ns, engine, extra;
    if (!std::getline(ls, h, '\t') || !std::getline(ls, qs, '\t') || !std::getline(ls, ns, '\t') ||
        !std::getline(ls, engine, '\t') || std::getline(ls, extra, '\t')) {
      warnings_.push_back(path_ + ":" + std::to_string(lineno) + ": malformed record skipped");
      continue;
    }
    bool ok = h.size() == 64 && h.find_first_not_of("0123456789abcdef") == std::string::npos && !qs.empty() &&
              qs.find_first_not_of("0123456789") == std::string::npos && !ns.empty() &&
              ns.find_first_not_of("0123456789") == std::string::npos && (engine == "fast" || engine == "oracle");
    if (!ok) {
      warnings_.push_back(path_ + ":" + std::to_string(lineno) + ": malformed record skipped");
      continue;
    }
    if (h == hash && std::stoull(qs) == q) found = std::stoull(ns);
  }
  for (const auto& w : warnings_) std::cerr << "warning: " << w << "\n";
  return found;
}

void CountCache::put(const CountResult& result) {
  std::lock_guard<std::mutex> lock(mutex_);
  const std::string line =
      result.hash + "\t" + std::to_string(result.q) + "\t" + std::to_string(result.N) + "\t" + result.engine + "\n";
  const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw DataError("cannot open cache " + path_);
  const ssize_t w = ::write(fd, line.data(), line.size());
  ::close(fd);
  if (w != static_cast<ssize_t>(line.size())) throw DataError("short write to cache " + path_);
}

}  // namespace octic
