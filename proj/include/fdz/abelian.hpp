#pragma once

// Finitely generated abelian groups Z^r / L and their subgroups. Subgroups
// are stored as the Hermite basis of their full preimage in Z^r (which always
// contains L), so equal subgroups have equal representations.

#include "fdz/smith.hpp"

#include <optional>
#include <stdexcept>

namespace fdz {

class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(std::size_t rank, const IntMatrix& relations)
      : rank_(rank), relations_(relations.rows() ? hermite(relations) : IntMatrix(0, rank)) {
    if (relations.rows() && relations.cols() != rank)
      throw std::invalid_argument("relation width does not match rank");
  }

  /// Z/d_1 + ... + Z/d_r (d = 0 for a free summand).
  static FgAbelianGroup diagonal(const Vector& orders) {
    IntMatrix rel(0, orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] != 0) rel.append_row(orders[i] * unit_vector(orders.size(), i));
    return FgAbelianGroup(orders.size(), rel);
  }
  static FgAbelianGroup free(std::size_t rank) { return FgAbelianGroup(rank, IntMatrix(0, rank)); }

  std::size_t rank() const { return rank_; }
  const IntMatrix& relations() const { return relations_; }

  /// Canonical representative modulo the relation lattice.
  Vector reduce(const Vector& v) const { return lattice_reduce(relations_, v); }
  bool equal(const Vector& a, const Vector& b) const { return is_zero_element(a - b); }
  bool is_zero_element(const Vector& v) const { return lattice_contains(relations_, v); }

  /// d_1 | d_2 | ... followed by zeros, unit factors dropped.
  Vector invariant_factors() const {
    Vector out;
    if (relations_.rows()) {
      const auto s = smith(relations_);
      for (std::size_t i = 0; i < s.rank; ++i)
        if (s.D(i, i) != 1) out.push_back(s.D(i, i));
    }
    const std::size_t free_rank = rank_ - relations_.rows();
    for (std::size_t i = 0; i < free_rank; ++i) out.emplace_back(0);
    return out;
  }

  std::size_t free_rank() const { return rank_ - relations_.rows(); }
  bool is_finite() const { return relations_.rows() == rank_; }
  /// Group order, 0 when infinite.
  Integer order() const {
    if (!is_finite()) return 0;
    Integer o = 1;
    for (std::size_t i = 0; i < relations_.rows(); ++i) o *= relations_(i, i);
    return o;
  }

  /// Additive order of v, 0 when infinite.
  Integer element_order(const Vector& v) const;

  friend bool operator==(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    return a.rank_ == b.rank_ && a.relations_ == b.relations_;
  }

 private:
  std::size_t rank_ = 0;
  IntMatrix relations_{0, 0};
};

class Subgroup {
 public:
  Subgroup() = default;
  /// Subgroup of `parent` generated by the rows of `generators`.
  Subgroup(FgAbelianGroup parent, const IntMatrix& generators) : parent_(std::move(parent)) {
    if (generators.rows() && generators.cols() != parent_.rank())
      throw std::invalid_argument("generator width does not match rank");
    basis_ = hermite(vstack(generators.rows() ? generators : IntMatrix(0, parent_.rank()),
                            parent_.relations()));
    if (basis_.cols() != parent_.rank()) basis_ = IntMatrix(0, parent_.rank());
  }

  static Subgroup zero(const FgAbelianGroup& g) { return Subgroup(g, IntMatrix(0, g.rank())); }
  static Subgroup whole(const FgAbelianGroup& g) { return Subgroup(g, IntMatrix::identity(g.rank())); }

  const FgAbelianGroup& parent() const { return parent_; }
  /// Hermite basis of the preimage lattice in Z^r.
  const IntMatrix& lattice() const { return basis_; }
  /// Generators modulo the parent's relations (rows that are not relations).
  IntMatrix generators() const {
    IntMatrix g(0, parent_.rank());
    for (std::size_t i = 0; i < basis_.rows(); ++i)
      if (!parent_.is_zero_element(basis_.row(i))) g.append_row(basis_.row(i));
    return g;
  }

  bool contains(const Vector& v) const { return lattice_contains(basis_, v); }
  bool contains(const Subgroup& t) const {
    for (std::size_t i = 0; i < t.basis_.rows(); ++i)
      if (!contains(t.basis_.row(i))) return false;
    return true;
  }
  bool is_zero() const { return basis_ == parent_.relations(); }
  bool is_whole() const { return basis_ == IntMatrix::identity(parent_.rank()); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subgroup& a, const Subgroup& b) { return !(a == b); }

 private:
  FgAbelianGroup parent_;
  IntMatrix basis_{0, 0};
};

inline Integer FgAbelianGroup::element_order(const Vector& v) const {
  if (is_zero_element(v)) return 1;
  // Intersect the line through v with the relation lattice.
  IntMatrix line(1, rank_);
  line.set_row(0, v);
  if (relations_.rows() == 0) return 0;
  IntMatrix lk = left_kernel(vstack(line, relations_));
  Integer g = 0;
  for (std::size_t i = 0; i < lk.rows(); ++i) g = gcd(g, lk(i, 0));
  return g;
}

namespace detail {
inline void check_parent(const Subgroup& s, const Subgroup& t) {
  if (!(s.parent() == t.parent())) throw std::invalid_argument("subgroups have different parents");
}
}  // namespace detail

/// {x : n x in S for some n >= 1}.
inline Subgroup saturation(const Subgroup& s) {
  const IntMatrix& b = s.lattice();
  if (b.rows() == 0) return s;
  const auto sm = smith(b);
  return Subgroup(s.parent(), sm.V_inv.select_rows(0, sm.rank));
}

inline Subgroup subgroup_sum(const Subgroup& s, const Subgroup& t) {
  detail::check_parent(s, t);
  return Subgroup(s.parent(), vstack(s.lattice(), t.lattice()));
}

inline Subgroup subgroup_intersect(const Subgroup& s, const Subgroup& t) {
  detail::check_parent(s, t);
  const IntMatrix& a = s.lattice();
  const IntMatrix& b = t.lattice();
  if (a.rows() == 0 || b.rows() == 0) return Subgroup::zero(s.parent());
  IntMatrix neg_b = b;
  for (std::size_t i = 0; i < neg_b.rows(); ++i) neg_b.negate_row(i);
  IntMatrix lk = left_kernel(vstack(a, neg_b));
  IntMatrix coeff = lk.select_cols(0, a.rows());
  return Subgroup(s.parent(), coeff * a);
}

/// G / S presented on the same generators.
inline FgAbelianGroup quotient_group(const FgAbelianGroup& g, const Subgroup& s) {
  if (!(s.parent() == g)) throw std::invalid_argument("subgroup of a different group");
  return FgAbelianGroup(g.rank(), s.lattice());
}

inline Vector invariant_factors(const FgAbelianGroup& g) { return g.invariant_factors(); }

/// S as an abstract group on its Hermite basis rows; relations are the
/// coordinates of the parent's relation lattice.
inline FgAbelianGroup present(const Subgroup& s) {
  const IntMatrix& b = s.lattice();
  const IntMatrix& rel = s.parent().relations();
  IntMatrix coords(0, b.rows());
  for (std::size_t i = 0; i < rel.rows(); ++i) coords.append_row(*lattice_coordinates(b, rel.row(i)));
  return FgAbelianGroup(b.rows(), coords);
}

/// Coordinates of v with respect to the Hermite basis of S.
inline std::optional<Vector> coordinates(const Subgroup& s, const Vector& v) {
  return lattice_coordinates(s.lattice(), v);
}

/// T / S for S contained in T, as an abstract group on T's basis.
inline FgAbelianGroup relative_quotient(const Subgroup& t, const Subgroup& s) {
  detail::check_parent(s, t);
  if (!t.contains(s)) throw std::invalid_argument("relative_quotient: S not contained in T");
  const IntMatrix& b = t.lattice();
  IntMatrix coords(0, b.rows());
  for (std::size_t i = 0; i < s.lattice().rows(); ++i)
    coords.append_row(*lattice_coordinates(b, s.lattice().row(i)));
  return FgAbelianGroup(b.rows(), coords);
}

/// C with G = S (+) C, if S is a direct summand of G.
inline std::optional<Subgroup> split_complement(const FgAbelianGroup& g, const Subgroup& s) {
  if (!(s.parent() == g)) throw std::invalid_argument("subgroup of a different group");
  const std::size_t r = g.rank();
  const IntMatrix& bs = s.lattice();
  const IntMatrix& bl = g.relations();
  const std::size_t k = bs.rows(), l = bl.rows();
  if (k == 0) return Subgroup::whole(g);
  // Projection x -> x * alpha * B_S; unknowns alpha (r x k) and beta (k x l)
  // with s_a * alpha * B_S - s_a = beta_a * B_L for each basis row s_a.
  const std::size_t n_alpha = r * k, n_beta = k * l;
  IntMatrix a(k * r, n_alpha + n_beta);
  Vector rhs(k * r, Integer(0));
  for (std::size_t row = 0; row < k; ++row)
    for (std::size_t c = 0; c < r; ++c) {
      const std::size_t eq = row * r + c;
      // (s_row * alpha * B_S)_c = sum_{i,j} s_row[i] alpha[i][j] B_S[j][c]
      for (std::size_t i = 0; i < r; ++i) {
        if (bs(row, i) == 0) continue;
        for (std::size_t j = 0; j < k; ++j) a(eq, i * k + j) += bs(row, i) * bs(j, c);
      }
      for (std::size_t m = 0; m < l; ++m) a(eq, n_alpha + row * l + m) = -bl(m, c);
      rhs[eq] = bs(row, c);
    }
  auto sol = solve(a, rhs);
  if (!sol) return std::nullopt;
  IntMatrix alpha(r, k);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < k; ++j) alpha(i, j) = sol->particular[i * k + j];
  IntMatrix p = alpha * bs;
  IntMatrix comp = IntMatrix::identity(r) - p;
  return Subgroup(g, comp);
}

}  // namespace fdz
