#pragma once

// Characteristic ideals of a ring: Ann, A^2, Delta = Is(A^2), K = Ann + Delta,
// L = Is(Ann + A^2), O = Ann meet Delta, and the quotients M = A/L, N = L/K.

#include "fdz/ring.hpp"

#include <variant>

namespace fdz {

struct IdealChain {
  Subgroup ann, sq, delta, k_ideal, l_ideal, o_ideal;
  FgAbelianGroup m_quot, n_quot;
};

/// {x : x e_j = e_j x = 0 for all j}.
inline Subgroup annihilator(const FdzRing& a) {
  const std::size_t r = a.rank();
  // Column (side, j, k) of x -> coordinate k of x e_j (side 0) or e_j x (side 1).
  IntMatrix eq(0, r);
  Vector moduli;
  for (std::size_t side = 0; side < 2; ++side)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        Vector row(r, Integer(0));
        bool nonzero = false;
        for (std::size_t i = 0; i < r; ++i) {
          row[i] = side == 0 ? a.product(i, j)[k] : a.product(j, i)[k];
          if (reduce_mod(row[i], a.order_of(k)) != 0) nonzero = true;
        }
        if (!nonzero) continue;
        eq.append_row(row);
        moduli.push_back(a.order_of(k));
      }
  if (eq.rows() == 0) return Subgroup::whole(a.additive());
  return Subgroup(a.additive(), congruence_lattice(eq, moduli));
}

/// Two-sided ideal generated by all products.
inline Subgroup square_ideal(const FdzRing& a) {
  const std::size_t r = a.rank();
  IntMatrix gens(0, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gens.append_row(a.product(i, j));
  Subgroup s(a.additive(), gens);
  for (;;) {
    IntMatrix more = s.lattice();
    for (std::size_t g = 0; g < s.lattice().rows(); ++g) {
      Vector x = s.lattice().row(g);
      for (std::size_t j = 0; j < r; ++j) {
        more.append_row(a.mul(x, a.gen(j)));
        more.append_row(a.mul(a.gen(j), x));
      }
    }
    Subgroup next(a.additive(), more);
    if (next == s) return s;
    s = next;
  }
}

inline bool is_two_sided_ideal(const FdzRing& a, const Subgroup& s) {
  for (std::size_t g = 0; g < s.lattice().rows(); ++g) {
    Vector x = s.lattice().row(g);
    for (std::size_t j = 0; j < a.rank(); ++j)
      if (!s.contains(a.mul(x, a.gen(j))) || !s.contains(a.mul(a.gen(j), x))) return false;
  }
  return true;
}

inline bool is_closed_under_product(const FdzRing& a, const Subgroup& s) {
  const IntMatrix& b = s.lattice();
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j)
      if (!s.contains(a.mul(b.row(i), b.row(j)))) return false;
  return true;
}

inline IdealChain characteristic_ideals(const FdzRing& a) {
  IdealChain c;
  c.ann = annihilator(a);
  c.sq = square_ideal(a);
  c.delta = saturation(c.sq);
  c.k_ideal = subgroup_sum(c.ann, c.delta);
  c.l_ideal = saturation(subgroup_sum(c.ann, c.sq));
  c.o_ideal = subgroup_intersect(c.ann, c.delta);
  c.m_quot = quotient_group(a.additive(), c.l_ideal);
  c.n_quot = relative_quotient(c.l_ideal, c.k_ideal);
  return c;
}

struct RingPredicates {
  bool tame = false;
  bool regular = false;
};

inline RingPredicates predicates(const IdealChain& c) {
  return {c.delta.contains(c.ann), c.k_ideal == c.l_ideal};
}
inline RingPredicates predicates(const FdzRing& a) { return predicates(characteristic_ideals(a)); }

struct AdditionFoundation {
  std::optional<Subgroup> addition;
  /// A subring complementing the addition, or the quotient ring A / A_0.
  std::variant<Subgroup, RingPresentation> foundation;
  bool foundation_is_subring() const { return foundation.index() == 0; }
};

/// Complement of O inside Ann, mapped back into A.
inline std::optional<Subgroup> find_addition(const FdzRing& a, const IdealChain& c) {
  FgAbelianGroup ann_group = present(c.ann);
  const IntMatrix& basis = c.ann.lattice();
  IntMatrix o_coords(0, basis.rows());
  for (std::size_t i = 0; i < c.o_ideal.lattice().rows(); ++i)
    o_coords.append_row(*lattice_coordinates(basis, c.o_ideal.lattice().row(i)));
  auto comp = split_complement(ann_group, Subgroup(ann_group, o_coords));
  if (!comp) return std::nullopt;
  return Subgroup(a.additive(), comp->lattice() * basis);
}

inline AdditionFoundation addition_and_foundation(const FdzRing& a, const IdealChain& c) {
  AdditionFoundation out{find_addition(a, c), Subgroup::whole(a.additive())};
  if (!out.addition) return out;
  const Subgroup& a0 = *out.addition;
  // A complement of A_0 containing Delta is the preimage of a complement of
  // (A_0 + Delta)/Delta in A/Delta.
  FgAbelianGroup q(a.rank(), c.delta.lattice());
  auto comp = split_complement(q, Subgroup(q, a0.lattice()));
  if (comp) {
    out.foundation = Subgroup(a.additive(), comp->lattice());
  } else {
    out.foundation = quotient_ring(a, a0);
  }
  return out;
}
inline AdditionFoundation addition_and_foundation(const FdzRing& a) {
  return addition_and_foundation(a, characteristic_ideals(a));
}

/// Free generators a_i, torsion generators b_k with orders, and the constants
/// a_i a_j = sum c a + sum t b, a_i b_j = sum s b, b_j a_i = sum u b,
/// b_i b_j = sum v b (torsion constants reduced into [0, d_k)).
struct NormalPresentation {
  std::vector<Vector> free_gens, torsion_gens;
  Vector torsion_orders;
  // Indexed [i][j][k].
  std::vector<std::vector<Vector>> c, t, s, u, v;
};

inline NormalPresentation normal_presentation(const FdzRing& a) {
  NormalPresentation np;
  std::vector<std::size_t> fi, ti;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (a.order_of(i) == 0) {
      fi.push_back(i);
      np.free_gens.push_back(a.gen(i));
    } else if (a.order_of(i) != 1) {
      ti.push_back(i);
      np.torsion_gens.push_back(a.gen(i));
      np.torsion_orders.push_back(a.order_of(i));
    }
  }
  auto block = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                   const std::vector<std::size_t>& out) {
    std::vector<std::vector<Vector>> m(rows.size(), std::vector<Vector>(cols.size()));
    for (std::size_t x = 0; x < rows.size(); ++x)
      for (std::size_t y = 0; y < cols.size(); ++y) {
        const Vector& p = a.product(rows[x], cols[y]);
        Vector v;
        for (std::size_t k : out) v.push_back(p[k]);
        m[x][y] = v;
      }
    return m;
  };
  np.c = block(fi, fi, fi);
  np.t = block(fi, fi, ti);
  np.s = block(fi, ti, ti);
  np.u = block(ti, fi, ti);
  np.v = block(ti, ti, ti);
  return np;
}

}  // namespace fdz
