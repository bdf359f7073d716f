#pragma once

// Exact normal forms over the integers: Smith form with transforms, row
// Hermite form, integer kernels and linear solving.

#include "fdz/matrix.hpp"

#include <optional>

namespace fdz {

/// U * A * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ... and
/// zeros trailing. V_inv is tracked alongside V.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix V;
  IntMatrix V_inv;
  IntMatrix D;
  std::size_t rank = 0;

  Vector diagonal() const {
    Vector d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

// Position of the nonzero entry of least absolute value in the trailing
// block starting at (t, t); returns false if the block is zero.
inline bool min_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Integer& x = d(i, j);
      if (x == 0) continue;
      Integer ax = abs(x);
      if (!found || ax < best) {
        best = ax;
        pi = i;
        pj = j;
        found = true;
        if (best == 1) return true;
      }
    }
  return found;
}

}  // namespace detail

inline SmithDecomposition smith(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithDecomposition s{IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n), a, 0};
  IntMatrix& d = s.D;
  const std::size_t lim = std::min(m, n);
  std::size_t t = 0;
  for (; t < lim; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!detail::min_pivot(d, t, pi, pj)) break;
    for (;;) {
      d.swap_rows(t, pi);
      s.U.swap_rows(t, pi);
      d.swap_cols(t, pj);
      s.V.swap_cols(t, pj);
      s.V_inv.swap_rows(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = nearest_div(d(i, t), d(t, t));
        d.add_row_multiple(i, t, -q);
        s.U.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = nearest_div(d(t, j), d(t, t));
        d.add_col_multiple(j, t, -q);
        s.V.add_col_multiple(j, t, -q);
        s.V_inv.add_row_multiple(t, j, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        detail::min_pivot(d, t, pi, pj);
        continue;
      }
      // Divisibility: fold an offending row into the pivot row and retry.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!divides(d(t, t), d(i, j))) {
            d.add_row_multiple(t, i, 1);
            s.U.add_row_multiple(t, i, 1);
            fixed = true;
            break;
          }
      if (fixed) {
        detail::min_pivot(d, t, pi, pj);
        continue;
      }
      break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
  }
  s.rank = t;
  return s;
}

/// Row Hermite normal form of the lattice spanned by the rows of a: echelon,
/// positive pivots, entries above each pivot reduced into [0, pivot), zero
/// rows removed. Unique for a given lattice.
inline IntMatrix hermite(const IntMatrix& a) {
  IntMatrix h = a;
  const std::size_t m = h.rows(), n = h.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t piv = m;
      Integer best;
      for (std::size_t i = r; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Integer ax = abs(h(i, c));
        if (piv == m || ax < best) {
          best = ax;
          piv = i;
        }
      }
      if (piv == m) break;
      h.swap_rows(r, piv);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h(i, c) == 0) continue;
        Integer q = nearest_div(h(i, c), h(r, c));
        h.add_row_multiple(i, r, -q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r >= m || h(r, c) == 0) continue;
    if (h(r, c) < 0) h.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      h.add_row_multiple(i, r, -q);
    }
    ++r;
  }
  return h.select_rows(0, r);
}

/// Pivot column of each row of an echelon basis.
inline std::vector<std::size_t> pivot_columns(const IntMatrix& h) {
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t c = 0;
    while (c < h.cols() && h(i, c) == 0) ++c;
    piv.push_back(c);
  }
  return piv;
}

/// Coordinates of v in an echelon basis h, if v lies in its span over Z.
inline std::optional<Vector> lattice_coordinates(const IntMatrix& h, Vector v) {
  Vector coords(h.rows(), Integer(0));
  std::size_t col = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = col;
    while (p < h.cols() && h(i, p) == 0) ++p;
    for (std::size_t c = col; c < p; ++c)
      if (v[c] != 0) return std::nullopt;
    if (!divides(h(i, p), v[p])) return std::nullopt;
    Integer q = v[p] / h(i, p);
    coords[i] = q;
    for (std::size_t c = p; c < h.cols(); ++c) v[c] -= q * h(i, c);
    col = p + 1;
  }
  if (!is_zero(v)) return std::nullopt;
  return coords;
}

inline bool lattice_contains(const IntMatrix& h, const Vector& v) {
  return lattice_coordinates(h, v).has_value();
}

/// Canonical representative of v modulo the lattice with Hermite basis h:
/// every pivot coordinate is reduced into [0, pivot).
inline Vector lattice_reduce(const IntMatrix& h, Vector v) {
  const auto piv = pivot_columns(h);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    Integer q = floor_div(v[piv[i]], h(i, piv[i]));
    if (q == 0) continue;
    for (std::size_t c = 0; c < h.cols(); ++c) v[c] -= q * h(i, c);
  }
  return v;
}

/// Rows form a basis of {x : a * x == 0} (x a column vector).
inline IntMatrix kernel(const IntMatrix& a) {
  const auto s = smith(a);
  IntMatrix k(a.cols() - s.rank, a.cols());
  for (std::size_t j = s.rank; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) k(j - s.rank, i) = s.V(i, j);
  return k;
}

/// Rows form a basis of {y : y * a == 0}.
inline IntMatrix left_kernel(const IntMatrix& a) { return kernel(a.transpose()); }

struct LinearSolution {
  Vector particular;
  IntMatrix kernel;  // rows span the homogeneous solutions
};

/// Integer solutions of a * x == b.
inline std::optional<LinearSolution> solve(const IntMatrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: dimension mismatch");
  const auto s = smith(a);
  Vector ub = mat_vec(s.U, b);
  Vector y(a.cols(), Integer(0));
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (!divides(s.D(i, i), ub[i])) return std::nullopt;
      y[i] = ub[i] / s.D(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  LinearSolution sol;
  sol.particular = mat_vec(s.V, y);
  sol.kernel = IntMatrix(a.cols() - s.rank, a.cols());
  for (std::size_t j = s.rank; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.cols(); ++i) sol.kernel(j - s.rank, i) = s.V(i, j);
  return sol;
}

/// Hermite basis of {x in Z^n : rows(a) . x == 0 mod moduli[i]} (modulus 0
/// means exact equality).
inline IntMatrix congruence_lattice(const IntMatrix& a, const Vector& moduli) {
  const std::size_t n = a.cols();
  std::vector<std::size_t> mod_rows;
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (moduli[i] != 0) mod_rows.push_back(i);
  IntMatrix ext(a.rows(), n + mod_rows.size());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) ext(i, j) = a(i, j);
  for (std::size_t t = 0; t < mod_rows.size(); ++t) ext(mod_rows[t], n + t) = -moduli[mod_rows[t]];
  IntMatrix k = a.rows() ? kernel(ext) : IntMatrix::identity(n + mod_rows.size());
  return hermite(k.select_cols(0, n));
}

/// Hermite basis of {x : x * m lies in the lattice spanned by rows of target}.
inline IntMatrix preimage_lattice(const IntMatrix& m, const IntMatrix& target) {
  const std::size_t r = m.rows();
  if (target.rows() == 0) {
    if (m.cols() == 0) return hermite(IntMatrix::identity(r));
    return hermite(left_kernel(m));
  }
  IntMatrix stacked = vstack(m, target);
  IntMatrix lk = left_kernel(stacked);
  return hermite(lk.select_cols(0, r));
}

/// Solves x * basis == v for an arbitrary (not necessarily echelon) basis.
inline std::optional<Vector> row_combination(const IntMatrix& basis, const Vector& v) {
  auto sol = solve(basis.transpose(), v);
  if (!sol) return std::nullopt;
  return sol->particular;
}

}  // namespace fdz
