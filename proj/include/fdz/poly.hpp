#pragma once

// Univariate polynomials over Q, Z and Z/p, and factorization of integer
// polynomials of bounded degree: Berlekamp modulo a small prime, linear
// Hensel lifting and Zassenhaus recombination.

#include "fdz/integer.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace fdz {

/// Coefficients from the constant term upward; no trailing zeros.
using QPoly = std::vector<Rational>;
using ZPoly = std::vector<Integer>;

class FactorizationIncomplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace poly {

inline constexpr int kMaxDegree = 12;
inline constexpr long kPrimeBound = 10000;

template <class P>
void trim(P& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

template <class P>
int degree(const P& a) {
  return static_cast<int>(a.size()) - 1;
}

// ---- Q[x] ----

inline QPoly add(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

inline QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  QPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline QPoly monic(QPoly a) {
  trim(a);
  if (a.empty()) return a;
  Rational l = a.back();
  for (auto& c : a) c /= l;
  return a;
}

inline QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// s, t with s a + t b = gcd(a, b) (monic).
struct QExtGcd {
  QPoly g, s, t;
};

inline QExtGcd ext_gcd(QPoly a, QPoly b) {
  QPoly s0{Rational(1)}, s1{}, t0{}, t1{Rational(1)};
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    QPoly s2 = sub(s0, mul(q, s1));
    QPoly t2 = sub(t0, mul(q, t1));
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.empty()) return {a, s0, t0};
  Rational l = a.back();
  for (auto& c : a) c /= l;
  for (auto& c : s0) c /= l;
  for (auto& c : t0) c /= l;
  return {a, s0, t0};
}

inline QPoly derivative(const QPoly& a) {
  QPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
  trim(d);
  return d;
}

/// Product of the distinct monic irreducible factors.
inline QPoly squarefree_part(const QPoly& a) {
  QPoly g = gcd(a, derivative(a));
  return monic(divmod(a, g).first);
}

// ---- Z[x] ----

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

inline Integer content(const ZPoly& a) {
  Integer g = 0;
  for (const auto& c : a) g = fdz::gcd(g, c);
  return g;
}

/// Primitive integer polynomial with positive leading coefficient.
inline ZPoly primitive_part(ZPoly a) {
  trim(a);
  if (a.empty()) return a;
  Integer g = content(a);
  if (a.back() < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

inline ZPoly to_zpoly(const QPoly& a) {
  Integer den = 1;
  for (const auto& c : a) den = lcm(den, c.get_den());
  ZPoly z;
  for (const auto& c : a) {
    Rational s = c * den;
    z.push_back(s.get_num());
  }
  return primitive_part(z);
}

inline QPoly to_qpoly(const ZPoly& a) {
  QPoly q;
  for (const auto& c : a) q.emplace_back(c);
  return q;
}

/// Exact quotient a / b over Z when b divides a.
inline std::optional<ZPoly> zdiv_exact(ZPoly a, const ZPoly& b) {
  trim(a);
  if (b.empty()) return std::nullopt;
  if (a.size() < b.size()) {
    if (a.empty()) return ZPoly{};
    return std::nullopt;
  }
  ZPoly q(a.size() - b.size() + 1, Integer(0));
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    if (!divides(b.back(), a.back())) return std::nullopt;
    Integer c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  if (!a.empty()) return std::nullopt;
  trim(q);
  return q;
}

// ---- (Z/p)[x], p < 2^31 ----

using FpPoly = std::vector<long>;

inline long modp(long a, long p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = modp(a, p);
  while (nr != 0) {
    long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::domain_error("not invertible modulo p");
  return modp(t, p);
}

inline FpPoly fp_from(const ZPoly& a, long p) {
  FpPoly f;
  for (const auto& c : a) f.push_back(to_long(reduce_mod(c, p)));
  trim(f);
  return f;
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = modp(a[i] - b[i], p);
  trim(a);
  return a;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  trim(c);
  return c;
}

inline std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, long p) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  FpPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  const long inv = inv_mod(b.back(), p);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    long c = a.back() * inv % p;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = modp(a[shift + i] - c * b[i], p);
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline FpPoly fp_monic(FpPoly a, long p) {
  trim(a);
  if (a.empty()) return a;
  long inv = inv_mod(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = fp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

struct FpExtGcd {
  FpPoly g, s, t;
};

inline FpExtGcd fp_ext_gcd(FpPoly a, FpPoly b, long p) {
  FpPoly s0{1}, s1{}, t0{}, t1{1};
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto [q, r] = fp_divmod(a, b, p);
    FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    a = std::move(b);
    b = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  long inv = inv_mod(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  return {a, s0, t0};
}

inline FpPoly fp_derivative(const FpPoly& a, long p) {
  FpPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(static_cast<long>(i) % p * a[i] % p);
  trim(d);
  return d;
}

inline FpPoly fp_powmod(FpPoly base, long e, const FpPoly& m, long p) {
  FpPoly r{1};
  base = fp_divmod(base, m, p).second;
  while (e > 0) {
    if (e & 1) r = fp_divmod(fp_mul(r, base, p), m, p).second;
    base = fp_divmod(fp_mul(base, base, p), m, p).second;
    e >>= 1;
  }
  return r;
}

/// Left null space of a square matrix modulo p (rows of the result).
inline std::vector<std::vector<long>> fp_left_kernel(std::vector<std::vector<long>> m, long p) {
  const std::size_t n = m.size();
  // Transpose, then compute the right kernel by reduced row echelon form.
  std::vector<std::vector<long>> a(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[j][i] = modp(m[i][j], p);
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(n, false);
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < n; ++c) {
    std::size_t piv = row;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[row], a[piv]);
    long inv = inv_mod(a[row][c], p);
    for (auto& x : a[row]) x = x * inv % p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][c] == 0) continue;
      long f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) a[i][j] = modp(a[i][j] - f * a[row][j], p);
    }
    pivot_col_of_row.push_back(static_cast<int>(c));
    is_pivot[c] = true;
    ++row;
  }
  std::vector<std::vector<long>> kernel;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<long> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) v[pivot_col_of_row[r]] = modp(-a[r][free], p);
    kernel.push_back(v);
  }
  return kernel;
}

/// Monic irreducible factors of a monic squarefree polynomial modulo p.
inline std::vector<FpPoly> berlekamp(const FpPoly& f, long p) {
  const int n = degree(f);
  if (n <= 1) return {f};
  std::vector<std::vector<long>> q(n, std::vector<long>(n, 0));
  FpPoly xp = fp_powmod(FpPoly{0, 1}, p, f, p);
  FpPoly cur{1};
  for (int i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cur.size(); ++j) q[i][j] = cur[j];
    q[i][i] = modp(q[i][i] - 1, p);
    cur = fp_divmod(fp_mul(cur, xp, p), f, p).second;
  }
  auto basis = fp_left_kernel(q, p);
  const std::size_t r = basis.size();
  std::vector<FpPoly> factors{f};
  for (const auto& v : basis) {
    if (factors.size() == r) break;
    FpPoly vp(v.begin(), v.end());
    trim(vp);
    if (degree(vp) <= 0) continue;
    std::vector<FpPoly> next;
    for (const auto& u : factors) {
      FpPoly rest = u;
      for (long s = 0; s < p && degree(rest) > 1; ++s) {
        FpPoly shifted = vp;
        shifted[0] = modp(shifted[0] - s, p);
        FpPoly g = fp_gcd(rest, shifted, p);
        if (degree(g) == degree(rest)) break;
        if (degree(g) > 0) {
          next.push_back(g);
          rest = fp_monic(fp_divmod(rest, g, p).first, p);
        }
      }
      next.push_back(rest);
    }
    factors = std::move(next);
  }
  for (auto& g : factors) g = fp_monic(g, p);
  return factors;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Symmetric representative of a modulo m.
inline Integer symmetric_mod(const Integer& a, const Integer& m) {
  Integer r = reduce_mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

/// Lifts F = g h (mod p), F monic over Z, g and h monic and coprime mod p,
/// to a monic factor G = g (mod p) of F modulo p^k.
inline ZPoly hensel_lift(const ZPoly& big_f, const FpPoly& g0, const FpPoly& h0, long p, int k) {
  auto eg = fp_ext_gcd(g0, h0, p);
  if (degree(eg.g) != 0) throw std::logic_error("hensel_lift: factors not coprime");
  const FpPoly& s = eg.s;
  const FpPoly& t = eg.t;
  ZPoly g(g0.begin(), g0.end()), h(h0.begin(), h0.end());
  Integer m = p;
  for (int step = 1; step < k; ++step) {
    ZPoly gh = zmul(g, h);
    ZPoly e(big_f.size(), Integer(0));
    for (std::size_t i = 0; i < big_f.size(); ++i) e[i] = big_f[i] - (i < gh.size() ? gh[i] : Integer(0));
    ZPoly e_div(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!divides(m, e[i])) throw std::logic_error("hensel_lift: congruence lost");
      e_div[i] = e[i] / m;
    }
    FpPoly ep = fp_from(e_div, p);
    auto [qq, dg] = fp_divmod(fp_mul(ep, t, p), g0, p);
    // dh = e s + q h0 has degree below deg h0.
    FpPoly full_dh = fp_mul(ep, s, p);
    FpPoly qh = fp_mul(qq, h0, p);
    if (full_dh.size() < qh.size()) full_dh.resize(qh.size(), 0);
    for (std::size_t i = 0; i < qh.size(); ++i) full_dh[i] = (full_dh[i] + qh[i]) % p;
    trim(full_dh);
    if (g.size() < dg.size()) g.resize(dg.size(), Integer(0));
    for (std::size_t i = 0; i < dg.size(); ++i) g[i] += m * dg[i];
    if (h.size() < full_dh.size()) h.resize(full_dh.size(), Integer(0));
    for (std::size_t i = 0; i < full_dh.size(); ++i) h[i] += m * full_dh[i];
    m *= p;
    for (auto& c : g) c = reduce_mod(c, m);
    for (auto& c : h) c = reduce_mod(c, m);
  }
  return g;
}

/// Irreducible factors over Z of a monic squarefree integer polynomial.
inline std::vector<ZPoly> factor_monic_squarefree(const ZPoly& f) {
  const int n = degree(f);
  if (n <= 1) return n == 1 ? std::vector<ZPoly>{f} : std::vector<ZPoly>{};
  if (n > kMaxDegree) throw FactorizationIncomplete("degree exceeds the factorization bound");
  // Pick, among the first few good primes, one giving the fewest factors.
  long best_p = 0;
  std::vector<FpPoly> best;
  int good = 0;
  for (long p = 3; p < kPrimeBound && good < 5; p += 2) {
    if (!is_prime(p)) continue;
    FpPoly fp = fp_from(f, p);
    if (degree(fp) != n) continue;
    if (degree(fp_gcd(fp, fp_derivative(fp, p), p)) != 0) continue;
    ++good;
    auto fac = berlekamp(fp, p);
    if (best_p == 0 || fac.size() < best.size()) {
      best_p = p;
      best = fac;
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw FactorizationIncomplete("no good prime below the search bound");
  if (best.size() == 1) return {f};
  const long p = best_p;
  // Coefficient bound for monic factors: 2^n times the 2-norm of f.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  Integer bound = (root + 1) << n;
  int k = 1;
  Integer m = p;
  while (m <= 2 * bound) {
    m *= p;
    ++k;
  }
  FpPoly fp = fp_from(f, p);
  std::vector<ZPoly> lifted;
  for (const auto& g : best) {
    FpPoly h = fp_divmod(fp, g, p).first;
    lifted.push_back(hensel_lift(f, g, h, p, k));
  }
  // Zassenhaus recombination over subsets of increasing size.
  std::vector<ZPoly> out;
  ZPoly rest = f;
  std::vector<std::size_t> live(lifted.size());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
  std::size_t size = 1;
  while (2 * size <= live.size()) {
    bool found = false;
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      ZPoly cand{Integer(1)};
      for (std::size_t i : pick) {
        cand = zmul(cand, lifted[live[i]]);
        for (auto& c : cand) c = reduce_mod(c, m);
      }
      for (auto& c : cand) c = symmetric_mod(c, m);
      trim(cand);
      if (auto q = zdiv_exact(rest, cand)) {
        out.push_back(cand);
        rest = *q;
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < live.size(); ++i)
          if (std::find(pick.begin(), pick.end(), i) == pick.end()) keep.push_back(live[i]);
        live = keep;
        found = true;
        break;
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == live.size() - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!found) ++size;
  }
  if (degree(rest) > 0) out.push_back(rest);
  return out;
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// squarefree polynomial over Q.
inline std::vector<ZPoly> factor_squarefree(const QPoly& a) {
  ZPoly f = to_zpoly(a);
  const int n = degree(f);
  if (n <= 0) return {};
  if (n == 1) return {f};
  if (n > kMaxDegree) throw FactorizationIncomplete("degree exceeds the factorization bound");
  // F(x) = l^(n-1) f(x / l) is monic with integer coefficients.
  const Integer l = f.back();
  ZPoly big(n + 1);
  big[n] = 1;
  Integer pw = 1;
  for (int i = n - 1; i >= 0; --i) {
    big[i] = f[i] * pw;
    pw *= l;
  }
  std::vector<ZPoly> out;
  for (const auto& g : factor_monic_squarefree(big)) {
    // g(l x) then primitive part.
    ZPoly h(g.size());
    Integer lp = 1;
    for (std::size_t i = 0; i < g.size(); ++i) {
      h[i] = g[i] * lp;
      lp *= l;
    }
    out.push_back(primitive_part(h));
  }
  return out;
}

}  // namespace poly
}  // namespace fdz
