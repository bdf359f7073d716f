#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdz {

using Integer = mpz_class;
using Rational = mpq_class;
/// Coordinate vector of an element (or a row of a matrix).
using Vector = std::vector<Integer>;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

struct ExtGcd {
  Integer g, s, t;  // s*a + t*b == g >= 0
};

inline ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  ExtGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Quotient minimising |a - q*b| (ties toward the floor).
inline Integer nearest_div(const Integer& a, const Integer& b) {
  Integer q = floor_div(a, b);
  Integer r = a - q * b;
  Integer r2 = r - b;
  if (abs(r2) < abs(r)) q += 1;
  return q;
}

/// Representative of a in [0, |m|); m == 0 means no reduction.
inline Integer reduce_mod(const Integer& a, const Integer& m) {
  if (m == 0) return a;
  Integer r;
  Integer am = abs(m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::string to_string(const Integer& a) { return a.get_str(); }

inline Integer parse_integer(const std::string& s) {
  Integer a;
  if (s.empty() || a.set_str(s, 10) != 0)
    throw std::invalid_argument("not an integer: '" + s + "'");
  return a;
}

inline long to_long(const Integer& a) {
  if (!a.fits_slong_p()) throw std::overflow_error("integer too large: " + a.get_str());
  return a.get_si();
}

// Vector helpers.

inline Vector zero_vector(std::size_t n) { return Vector(n, Integer(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, Integer(0));
  v[i] = 1;
  return v;
}

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Vector operator+(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector operator-(const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vector operator*(const Integer& c, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Vector to_vector(std::initializer_list<long> xs) {
  Vector v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline Vector to_vector(const std::vector<long>& xs) {
  Vector v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace fdz
