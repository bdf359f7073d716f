#pragma once

// Named example rings.

#include "fdz/ring.hpp"

#include <map>
#include <string>

namespace fdz::corpus {

inline FdzRing integers() { return make_ring({0}, {{0, 0, {1}}}); }
/// 2Z as a ring of rank 1: e * e = 2e.
inline FdzRing even_integers() { return make_ring({0}, {{0, 0, {2}}}); }
inline FdzRing null_integers() { return z0_ring(); }
inline FdzRing integers_times_null() { return direct_product(integers(), z0_ring()); }
/// Generators e1, e2, t with orders 0, 0, 2; e1 * e1 = t, other products 0.
inline FdzRing w_ring() { return make_ring({0, 0, 2}, {{0, 0, {0, 0, 1}}}); }
/// Z[x]/(x^2) on the basis 1, x.
inline FdzRing dual_numbers() {
  return make_ring({0, 0}, {{0, 0, {1, 0}}, {0, 1, {0, 1}}, {1, 0, {0, 1}}});
}
inline FdzRing integers_squared() { return direct_product(integers(), integers()); }
inline FdzRing integers_mod(long n) { return cyclic_ring(n); }

/// Z[x]/(f) for monic f (coefficients from the constant term), basis 1..x^(d-1).
inline FdzRing monogenic(const std::vector<long>& f) {
  const std::size_t d = f.size() - 1;
  if (d == 0 || f.back() != 1) throw std::invalid_argument("monogenic: need a monic polynomial of positive degree");
  // x^k for k < 2d - 1 reduced modulo f.
  std::vector<Vector> pw;
  for (std::size_t k = 0; k < 2 * d - 1; ++k) {
    Vector v(d, Integer(0));
    if (k < d) {
      v[k] = 1;
    } else {
      // x^k = x * x^(k-1); shift then substitute x^d = -sum f_i x^i.
      const Vector& prev = pw[k - 1];
      Vector shifted(d + 1, Integer(0));
      for (std::size_t i = 0; i < d; ++i) shifted[i + 1] = prev[i];
      for (std::size_t i = 0; i < d; ++i) v[i] = shifted[i] - shifted[d] * f[i];
    }
    pw.push_back(v);
  }
  StructureTensor t(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) t[i * d + j] = pw[i + j];
  return validate_ring(Vector(d, Integer(0)), t);
}

inline std::map<std::string, FdzRing> named() {
  return {{"z", integers()},           {"twoz", even_integers()},
          {"z0", null_integers()},     {"zxz0", integers_times_null()},
          {"w", w_ring()},             {"zx2", dual_numbers()},
          {"zxz", integers_squared()}};
}

}  // namespace fdz::corpus
