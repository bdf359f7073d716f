#pragma once

// Idempotents of a commutative associative unital ring of finite rank and its
// decomposition into indecomposable factors.

#include "fdz/poly.hpp"
#include "fdz/ring.hpp"
#include "fdz/verdict.hpp"

#include <set>

namespace fdz {

struct SpectrumAnalysis {
  std::vector<Vector> idempotents;
  std::vector<Vector> primitive;
  std::vector<RingPresentation> factors;  // P / (1 - e) P for primitive e
  std::size_t infinite_factor_count = 0;
  /// Primitive idempotents of P tensor Q (points of the rational spectrum).
  std::size_t rational_components = 0;
  Verdict spec0_connected = Verdict::unknown;
  /// P tensor Q has no nilpotents (trace form nondegenerate).
  bool nilradical_bounded = false;
};

namespace detail {

using QVector = std::vector<Rational>;

/// Multiplication in the torsion-free quotient T = P / torsion, on the free
/// coordinates of P.
struct FreeQuotient {
  std::vector<std::size_t> free_idx, torsion_idx;
  std::vector<Vector> table;  // n*n products in free coordinates
  std::size_t n = 0;

  explicit FreeQuotient(const FdzRing& p) {
    for (std::size_t i = 0; i < p.rank(); ++i) (p.order_of(i) == 0 ? free_idx : torsion_idx).push_back(i);
    n = free_idx.size();
    table.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Vector& v = p.product(free_idx[a], free_idx[b]);
        Vector w(n);
        for (std::size_t k = 0; k < n; ++k) w[k] = v[free_idx[k]];
        table[a * n + b] = w;
      }
  }
  template <class T>
  std::vector<T> mul(const std::vector<T>& x, const std::vector<T>& y) const {
    std::vector<T> out(n, T(0));
    for (std::size_t a = 0; a < n; ++a) {
      if (x[a] == 0) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (y[b] == 0) continue;
        T c = x[a] * y[b];
        const Vector& v = table[a * n + b];
        for (std::size_t k = 0; k < n; ++k)
          if (v[k] != 0) out[k] += c * v[k];
      }
    }
    return out;
  }
};

inline QVector to_q(const Vector& v) {
  QVector q;
  for (const auto& x : v) q.emplace_back(x);
  return q;
}

/// Evaluates the polynomial at an element of T tensor Q.
inline QVector eval_poly(const FreeQuotient& t, const QPoly& f, const QVector& a, const QVector& one) {
  QVector acc(t.n, Rational(0));
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = t.mul(acc, a);
    for (std::size_t k = 0; k < t.n; ++k) acc[k] += f[i] * one[k];
  }
  return acc;
}

/// Minimal polynomial of an element via the Krylov sequence of powers.
inline QPoly minimal_polynomial(const FreeQuotient& t, const Vector& a, const Vector& one) {
  IntMatrix powers(0, t.n);
  Vector cur = one;
  for (std::size_t m = 0; m <= t.n; ++m) {
    powers.append_row(cur);
    IntMatrix lk = left_kernel(powers);
    if (lk.rows() > 0) {
      QPoly mu;
      for (std::size_t i = 0; i <= m; ++i) mu.emplace_back(lk(0, i));
      return poly::monic(mu);
    }
    cur = t.mul(cur, a);
  }
  throw std::logic_error("minimal polynomial degree exceeds the dimension");
}

inline std::size_t rational_rank(const IntMatrix& m) { return m.rows() && m.cols() ? smith(m).rank : 0; }

}  // namespace detail

struct RationalIdempotents {
  std::vector<detail::QVector> primitive;  // primitive idempotents of T tensor Q
  std::size_t semisimple_dim = 0;
  std::size_t dim = 0;
};

/// Primitive idempotents of P tensor Q, found through a primitive element of
/// the semisimple quotient and CRT on its minimal polynomial.
inline RationalIdempotents rational_idempotents(const FdzRing& p, const Vector& identity) {
  detail::FreeQuotient t(p);
  RationalIdempotents out;
  out.dim = t.n;
  if (t.n == 0) return out;
  Vector one(t.n);
  for (std::size_t k = 0; k < t.n; ++k) one[k] = identity[t.free_idx[k]];
  // Trace form; its rank is the dimension of the semisimple quotient.
  std::vector<IntMatrix> lmat(t.n, IntMatrix(t.n, t.n));
  for (std::size_t a = 0; a < t.n; ++a)
    for (std::size_t b = 0; b < t.n; ++b) lmat[a].set_row(b, t.table[a * t.n + b]);
  IntMatrix g(t.n, t.n);
  for (std::size_t a = 0; a < t.n; ++a)
    for (std::size_t b = 0; b < t.n; ++b) {
      IntMatrix prod = lmat[a] * lmat[b];
      Integer tr = 0;
      for (std::size_t k = 0; k < t.n; ++k) tr += prod(k, k);
      g(a, b) = tr;
    }
  out.semisimple_dim = detail::rational_rank(g);
  for (long k = 1; k <= 64; ++k) {
    Vector a(t.n);
    Integer pw = 1;
    for (std::size_t i = 0; i < t.n; ++i) {
      a[i] = pw;
      pw *= k;
    }
    QPoly mu = detail::minimal_polynomial(t, a, one);
    QPoly rad = poly::squarefree_part(mu);
    if (static_cast<std::size_t>(poly::degree(rad)) != out.semisimple_dim) continue;
    auto irreducibles = poly::factor_squarefree(rad);
    const detail::QVector qa = detail::to_q(a), qone = detail::to_q(one);
    for (const auto& gz : irreducibles) {
      QPoly gi = poly::monic(poly::to_qpoly(gz));
      QPoly qi = gi;
      QPoly rest = poly::divmod(mu, gi).first;
      while (poly::divmod(rest, gi).second.empty()) {
        rest = poly::divmod(rest, gi).first;
        qi = poly::mul(qi, gi);
      }
      // e = s * rest with s * rest + u * qi = 1.
      auto eg = poly::ext_gcd(rest, qi);
      QPoly e = poly::divmod(poly::mul(eg.s, rest), mu).second;
      out.primitive.push_back(detail::eval_poly(t, e, qa, qone));
    }
    return out;
  }
  throw FactorizationIncomplete("no primitive element found for the semisimple quotient");
}

/// All idempotents of P; throws FactorizationIncomplete when the search is
/// not exhaustive.
inline std::vector<Vector> idempotents(const FdzRing& p, std::size_t torsion_limit = 1u << 16) {
  if (!p.is_commutative() || !p.is_associative()) throw std::invalid_argument("idempotents: ring must be commutative and associative");
  auto id = p.identity();
  if (!id) throw std::invalid_argument("idempotents: ring has no identity");
  detail::FreeQuotient t(p);
  auto rat = rational_idempotents(p, *id);
  // Integral subset sums are the idempotents of T.
  std::vector<Vector> t_idem;
  const std::size_t m = rat.primitive.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    detail::QVector s(t.n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i))
        for (std::size_t k = 0; k < t.n; ++k) s[k] += rat.primitive[i][k];
    Vector z(t.n);
    bool integral = true;
    for (std::size_t k = 0; k < t.n && integral; ++k) {
      if (s[k].get_den() != 1) integral = false;
      else z[k] = s[k].get_num();
    }
    if (integral) t_idem.push_back(z);
  }
  if (m == 0) t_idem = {Vector(t.n, Integer(0))};
  // Lift through the torsion by enumeration.
  Integer tor_size = 1;
  std::vector<long> box;
  for (std::size_t i : t.torsion_idx) {
    tor_size *= p.order_of(i);
    box.push_back(to_long(p.order_of(i)));
  }
  if (tor_size > static_cast<long>(torsion_limit)) throw FactorizationIncomplete("torsion too large to enumerate idempotent lifts");
  std::set<Vector> found;
  for (const auto& eps : t_idem) {
    Vector base = p.zero();
    for (std::size_t k = 0; k < t.n; ++k) base[t.free_idx[k]] = eps[k];
    std::vector<long> z(box.size(), 0);
    for (;;) {
      Vector e = base;
      for (std::size_t i = 0; i < z.size(); ++i) e[t.torsion_idx[i]] = z[i];
      e = p.reduce(e);
      if (p.mul(e, e) == e) found.insert(e);
      std::size_t i = 0;
      while (i < z.size() && ++z[i] == box[i]) z[i++] = 0;
      if (i == z.size()) break;
    }
  }
  return {found.begin(), found.end()};
}

/// Nonzero idempotents that have no proper nonzero idempotent below them.
inline std::vector<Vector> primitive_idempotents(const FdzRing& p, const std::vector<Vector>& idem) {
  std::vector<Vector> out;
  for (const auto& e : idem) {
    if (e == p.zero()) continue;
    bool primitive = true;
    for (const auto& f : idem) {
      if (f == p.zero() || f == e) continue;
      if (p.mul(f, e) == f) {
        primitive = false;
        break;
      }
    }
    if (primitive) out.push_back(e);
  }
  return out;
}

/// Connectedness of the punctured spectrum: the non-maximal primes of P are
/// the primes over (0), i.e. the points of Spec(P tensor Q), a finite discrete
/// space. It is connected iff P tensor Q has at most one primitive idempotent.
inline Verdict spec0_rule(std::size_t rational_components) {
  return from_bool(rational_components <= 1);
}

inline SpectrumAnalysis indecomposable_factors(const FdzRing& p) {
  SpectrumAnalysis s;
  auto id = p.identity();
  if (!id) throw std::invalid_argument("indecomposable_factors: ring has no identity");
  s.idempotents = idempotents(p);
  auto rat = rational_idempotents(p, *id);
  s.rational_components = rat.primitive.size();
  s.nilradical_bounded = rat.semisimple_dim == rat.dim;
  s.primitive = primitive_idempotents(p, s.idempotents);
  for (const auto& e : s.primitive) {
    Vector co = p.sub(*id, e);
    IntMatrix gens(0, p.rank());
    for (std::size_t j = 0; j < p.rank(); ++j) gens.append_row(p.mul(co, p.gen(j)));
    auto q = quotient_ring(p, Subgroup(p.additive(), gens));
    if (!q.ring.is_finite()) ++s.infinite_factor_count;
    s.factors.push_back(std::move(q));
  }
  s.spec0_connected = spec0_rule(s.rational_components);
  return s;
}

}  // namespace fdz
