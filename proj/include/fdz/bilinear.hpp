#pragma once

// The bilinear map f: A/Ann x A/Ann -> A^2 induced by multiplication, its
// width and complete systems, and the largest scalar ring P(f) (and P(A)).

#include "fdz/ideals.hpp"

#include <set>

namespace fdz {

struct BilinearMap {
  Vector domain_orders;    // diagonal presentation of the domain
  Vector codomain_orders;  // diagonal presentation of the codomain
  /// values[i * rd + j] = f(e_i, e_j) in codomain coordinates.
  std::vector<Vector> values;

  std::size_t domain_rank() const { return domain_orders.size(); }
  std::size_t codomain_rank() const { return codomain_orders.size(); }
  const Vector& value(std::size_t i, std::size_t j) const { return values[i * domain_rank() + j]; }

  Vector reduce_domain(Vector x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = reduce_mod(x[i], domain_orders[i]);
    return x;
  }
  Vector reduce_codomain(Vector u) const {
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = reduce_mod(u[i], codomain_orders[i]);
    return u;
  }
  Vector apply(const Vector& x, const Vector& y) const {
    Vector out(codomain_rank(), Integer(0));
    for (std::size_t i = 0; i < domain_rank(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < domain_rank(); ++j) {
        if (y[j] == 0) continue;
        Integer c = x[i] * y[j];
        const Vector& v = value(i, j);
        for (std::size_t k = 0; k < codomain_rank(); ++k) out[k] += c * v[k];
      }
    }
    return reduce_codomain(out);
  }
  bool codomain_finite() const {
    for (const auto& d : codomain_orders)
      if (d == 0) return false;
    return true;
  }
};

/// f_A together with the coordinate changes linking it to A.
struct InducedMap {
  BilinearMap f;
  DiagonalForm domain;      // A -> A/Ann
  IntMatrix sq_basis;       // Hermite basis of A^2 in A
  DiagonalForm codomain;    // coordinates on A^2 relative to sq_basis
  /// Codomain coordinates of an element of A^2.
  Vector to_codomain(const Vector& u) const {
    auto c = lattice_coordinates(sq_basis, u);
    if (!c) throw std::invalid_argument("element not in A^2");
    return codomain.coords(*c);
  }
  /// Element of A lifting a codomain element.
  Vector codomain_lift(const Vector& y) const { return codomain.lift(y) * sq_basis; }
  Vector domain_lift(const Vector& x) const { return domain.lift(x); }
  /// Matrix of pi: A^2 -> A/Ann in these coordinates (rows = codomain gens).
  IntMatrix pi_matrix() const {
    IntMatrix m(f.codomain_rank(), f.domain_rank());
    for (std::size_t b = 0; b < f.codomain_rank(); ++b)
      m.set_row(b, domain.coords(codomain_lift(unit_vector(f.codomain_rank(), b))));
    return m;
  }
};

inline InducedMap induced_bilinear_map(const FdzRing& a, const IdealChain& c) {
  InducedMap m;
  m.domain = diagonal_form(a.rank(), c.ann.lattice());
  m.sq_basis = c.sq.lattice();
  const IntMatrix& rel = a.additive().relations();
  IntMatrix coords(0, m.sq_basis.rows());
  for (std::size_t i = 0; i < rel.rows(); ++i) coords.append_row(*lattice_coordinates(m.sq_basis, rel.row(i)));
  m.codomain = diagonal_form(m.sq_basis.rows(), coords);
  m.f.domain_orders = m.domain.orders;
  m.f.codomain_orders = m.codomain.orders;
  const std::size_t rd = m.domain.rank();
  m.f.values.resize(rd * rd);
  for (std::size_t i = 0; i < rd; ++i)
    for (std::size_t j = 0; j < rd; ++j)
      m.f.values[i * rd + j] = m.to_codomain(a.mul(m.domain.lift(unit_vector(rd, i)), m.domain.lift(unit_vector(rd, j))));
  return m;
}
inline InducedMap induced_bilinear_map(const FdzRing& a) { return induced_bilinear_map(a, characteristic_ideals(a)); }

namespace detail {

/// Enumerates a finite box of vectors: coordinate i ranges over [0, bound[i]).
template <class F>
void for_each_in_box(const std::vector<long>& bound, F&& fn) {
  std::vector<long> v(bound.size(), 0);
  for (long b : bound)
    if (b <= 0) return;
  for (;;) {
    fn(v);
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == bound[i]) v[i++] = 0;
    if (i == v.size()) break;
  }
}

/// Subgroup of the codomain generated by the rows, as a canonical lattice.
inline IntMatrix codomain_span(const BilinearMap& f, const std::vector<Vector>& rows) {
  IntMatrix m(0, f.codomain_rank());
  for (const auto& r : rows) m.append_row(r);
  for (std::size_t k = 0; k < f.codomain_rank(); ++k)
    if (f.codomain_orders[k] != 0) m.append_row(f.codomain_orders[k] * unit_vector(f.codomain_rank(), k));
  return hermite(m);
}

}  // namespace detail

struct Width {
  std::optional<std::size_t> exact;
  std::size_t upper_bound = 0;
};

inline Width width(const BilinearMap& f, std::size_t enumeration_limit = 4096) {
  Width w;
  const std::size_t rd = f.domain_rank(), rc = f.codomain_rank();
  w.upper_bound = rc == 0 ? 0 : rd;
  if (rc == 0) {
    w.exact = 0;
    return w;
  }
  const IntMatrix whole = hermite(IntMatrix::identity(rc));
  auto image_of = [&](const Vector& x, bool left) {
    std::vector<Vector> rows;
    for (std::size_t j = 0; j < rd; ++j) {
      Vector e = unit_vector(rd, j);
      rows.push_back(left ? f.apply(x, e) : f.apply(e, x));
    }
    return detail::codomain_span(f, rows);
  };
  if (!f.codomain_finite()) {
    // Only width 1 is certified: some x with f(x, -) or f(-, x) onto.
    std::vector<long> box(rd, 3);
    bool found = false;
    detail::for_each_in_box(box, [&](const std::vector<long>& v) {
      if (found) return;
      Vector x(rd);
      for (std::size_t i = 0; i < rd; ++i) x[i] = v[i] - 1;
      if (image_of(x, true) == whole || image_of(x, false) == whole) found = true;
    });
    if (found) w.exact = 1;
    return w;
  }
  // Finite codomain of exponent e: f(x, y) depends on x modulo e.
  Integer e = 1;
  for (const auto& d : f.codomain_orders) e = lcm(e, d);
  std::vector<long> dom_box(rd), cod_box(rc);
  Integer dom_count = 1, cod_count = 1;
  for (std::size_t i = 0; i < rd; ++i) {
    Integer b = f.domain_orders[i] == 0 ? e : gcd(f.domain_orders[i], e);
    dom_box[i] = to_long(b);
    dom_count *= b;
  }
  for (std::size_t k = 0; k < rc; ++k) {
    cod_box[k] = to_long(f.codomain_orders[k]);
    cod_count *= f.codomain_orders[k];
  }
  if (dom_count > enumeration_limit || cod_count > enumeration_limit) return w;
  // Values set S_1 = union over x of the images of f(x, -).
  std::set<Vector> values;
  detail::for_each_in_box(dom_box, [&](const std::vector<long>& v) {
    Vector x = to_vector(v);
    IntMatrix img = image_of(x, true);
    detail::for_each_in_box(cod_box, [&](const std::vector<long>& u) {
      Vector y = to_vector(u);
      if (lattice_contains(img, y)) values.insert(y);
    });
  });
  std::set<Vector> reach{zero_vector(rc)};
  const std::size_t total = to_long(cod_count);
  for (std::size_t k = 0; k <= rd + 1; ++k) {
    if (reach.size() == total) {
      w.exact = k;
      return w;
    }
    std::set<Vector> next;
    for (const auto& a : reach)
      for (const auto& b : values) next.insert(f.reduce_codomain(a + b));
    if (next == reach) break;
    reach = std::move(next);
  }
  return w;
}

struct CompleteSystem {
  std::vector<Vector> witness;
  std::size_t size_bound = 0;
};

/// True if x -> (f(x, e), f(e, x))_{e in E} is injective on the domain.
inline bool is_complete_system(const BilinearMap& f, const std::vector<Vector>& es) {
  const std::size_t rd = f.domain_rank(), rc = f.codomain_rank();
  if (rd == 0) return true;
  IntMatrix m(rd, 2 * es.size() * rc);
  IntMatrix target(0, m.cols());
  for (std::size_t t = 0; t < es.size(); ++t)
    for (std::size_t i = 0; i < rd; ++i) {
      Vector l = f.apply(unit_vector(rd, i), es[t]);
      Vector r = f.apply(es[t], unit_vector(rd, i));
      for (std::size_t k = 0; k < rc; ++k) {
        m(i, (2 * t) * rc + k) = l[k];
        m(i, (2 * t + 1) * rc + k) = r[k];
      }
    }
  for (std::size_t b = 0; b < 2 * es.size(); ++b)
    for (std::size_t k = 0; k < rc; ++k)
      if (f.codomain_orders[k] != 0) {
        Vector row(m.cols(), Integer(0));
        row[b * rc + k] = f.codomain_orders[k];
        target.append_row(row);
      }
  IntMatrix ker = m.cols() ? preimage_lattice(m, target) : hermite(IntMatrix::identity(rd));
  for (std::size_t i = 0; i < ker.rows(); ++i)
    if (f.reduce_domain(ker.row(i)) != zero_vector(rd)) return false;
  return true;
}

class DegenerateMap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smallest complete system among subsets of the domain generators.
inline CompleteSystem complete_system(const BilinearMap& f) {
  const std::size_t rd = f.domain_rank();
  for (std::size_t size = 0; size <= rd; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      std::vector<Vector> es;
      for (std::size_t i : pick) es.push_back(unit_vector(rd, i));
      if (is_complete_system(f, es)) return {es, size};
      // Next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == rd - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw DegenerateMap("bilinear map is degenerate: no complete system among the generators");
}

class PfUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A commutative associative unital ring acting on the domain and codomain.
struct ScalarRingAction {
  FdzRing ring;
  std::vector<IntMatrix> action_on_domain;    // per generator, on row vectors
  std::vector<IntMatrix> action_on_codomain;  // per generator, on row vectors
  Vector identity;
  /// Hermite basis of the solution lattice of pairs (Phi, Psi), flattened.
  IntMatrix solutions;
  /// Pairs whose images lie in the relation lattices.
  IntMatrix zero_pairs;
  RingPresentation presentation;  // coordinates relative to `solutions`

  /// Domain and codomain matrices of an arbitrary ring element.
  std::pair<IntMatrix, IntMatrix> action(const Vector& p) const {
    IntMatrix phi = action_on_domain.empty() ? IntMatrix() : IntMatrix(action_on_domain[0].rows(), action_on_domain[0].cols());
    IntMatrix psi = action_on_codomain.empty() ? IntMatrix() : IntMatrix(action_on_codomain[0].rows(), action_on_codomain[0].cols());
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (p[a] == 0) continue;
      phi = phi + p[a] * action_on_domain[a];
      psi = psi + p[a] * action_on_codomain[a];
    }
    return {phi, psi};
  }
  /// True if the pair satisfies the defining conditions.
  bool contains(const IntMatrix& phi, const IntMatrix& psi) const;
};

namespace detail {

inline Vector flatten_pair(const IntMatrix& phi, const IntMatrix& psi) {
  Vector z;
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < phi.cols(); ++j) z.push_back(phi(i, j));
  for (std::size_t i = 0; i < psi.rows(); ++i)
    for (std::size_t j = 0; j < psi.cols(); ++j) z.push_back(psi(i, j));
  return z;
}

inline std::pair<IntMatrix, IntMatrix> unflatten_pair(const Vector& z, std::size_t rd, std::size_t rc) {
  IntMatrix phi(rd, rd), psi(rc, rc);
  for (std::size_t i = 0; i < rd; ++i)
    for (std::size_t j = 0; j < rd; ++j) phi(i, j) = z[i * rd + j];
  for (std::size_t i = 0; i < rc; ++i)
    for (std::size_t j = 0; j < rc; ++j) psi(i, j) = z[rd * rd + i * rc + j];
  return {phi, psi};
}

}  // namespace detail

inline bool ScalarRingAction::contains(const IntMatrix& phi, const IntMatrix& psi) const {
  return lattice_contains(solutions, detail::flatten_pair(phi, psi));
}

/// Linear conditions on (Phi, Psi): rows of `eqs` dotted with the flattened
/// pair must vanish modulo the matching entry of `moduli`.
struct PairConditions {
  IntMatrix eqs;
  Vector moduli;
};

inline PairConditions pf_conditions(const BilinearMap& f) {
  const std::size_t rd = f.domain_rank(), rc = f.codomain_rank();
  const std::size_t n = rd * rd + rc * rc;
  PairConditions pc{IntMatrix(0, n), {}};
  auto phi_idx = [&](std::size_t i, std::size_t j) { return i * rd + j; };
  auto psi_idx = [&](std::size_t i, std::size_t j) { return rd * rd + i * rc + j; };
  // Respect the relations: d_i * Phi_ij = 0 mod d_j.
  for (std::size_t i = 0; i < rd; ++i)
    for (std::size_t j = 0; j < rd; ++j)
      if (f.domain_orders[i] != 0 && f.domain_orders[j] != 1) {
        Vector row(n, Integer(0));
        row[phi_idx(i, j)] = f.domain_orders[i];
        pc.eqs.append_row(row);
        pc.moduli.push_back(f.domain_orders[j]);
      }
  for (std::size_t i = 0; i < rc; ++i)
    for (std::size_t j = 0; j < rc; ++j)
      if (f.codomain_orders[i] != 0 && f.codomain_orders[j] != 1) {
        Vector row(n, Integer(0));
        row[psi_idx(i, j)] = f.codomain_orders[i];
        pc.eqs.append_row(row);
        pc.moduli.push_back(f.codomain_orders[j]);
      }
  // f(phi e_i, e_j) = psi f(e_i, e_j) and f(e_i, phi e_j) = psi f(e_i, e_j).
  for (std::size_t side = 0; side < 2; ++side)
    for (std::size_t i = 0; i < rd; ++i)
      for (std::size_t j = 0; j < rd; ++j)
        for (std::size_t k = 0; k < rc; ++k) {
          Vector row(n, Integer(0));
          for (std::size_t a = 0; a < rd; ++a) {
            if (side == 0)
              row[phi_idx(i, a)] += f.value(a, j)[k];
            else
              row[phi_idx(j, a)] += f.value(i, a)[k];
          }
          const Vector& v = f.value(i, j);
          for (std::size_t b = 0; b < rc; ++b) row[psi_idx(b, k)] -= v[b];
          pc.eqs.append_row(row);
          pc.moduli.push_back(f.codomain_orders[k]);
        }
  return pc;
}

/// Adds pi(psi(u)) = phi(pi(u)) for the codomain generators u.
inline void add_pa_conditions(const BilinearMap& f, const IntMatrix& pi, PairConditions& pc) {
  const std::size_t rd = f.domain_rank(), rc = f.codomain_rank();
  const std::size_t n = rd * rd + rc * rc;
  for (std::size_t b = 0; b < rc; ++b)
    for (std::size_t k = 0; k < rd; ++k) {
      Vector row(n, Integer(0));
      for (std::size_t c = 0; c < rc; ++c) row[rd * rd + b * rc + c] += pi(c, k);
      for (std::size_t a = 0; a < rd; ++a) row[a * rd + k] -= pi(b, a);
      pc.eqs.append_row(row);
      pc.moduli.push_back(f.domain_orders[k]);
    }
}

inline ScalarRingAction scalar_ring_from_conditions(const BilinearMap& f, const PairConditions& pc) {
  const std::size_t rd = f.domain_rank(), rc = f.codomain_rank();
  if (rd == 0 || rc == 0) throw PfUndefined("P(f) is undefined for a zero domain or codomain");
  const std::size_t n = rd * rd + rc * rc;
  ScalarRingAction s;
  s.solutions = pc.eqs.rows() ? congruence_lattice(pc.eqs, pc.moduli) : hermite(IntMatrix::identity(n));
  // Pairs with image in the relations: Phi_ij in d_j Z, Psi_ij in d'_j Z.
  IntMatrix zero(0, n);
  for (std::size_t i = 0; i < rd; ++i)
    for (std::size_t j = 0; j < rd; ++j)
      if (f.domain_orders[j] != 0) zero.append_row(f.domain_orders[j] * unit_vector(n, i * rd + j));
  for (std::size_t i = 0; i < rc; ++i)
    for (std::size_t j = 0; j < rc; ++j)
      if (f.codomain_orders[j] != 0) zero.append_row(f.codomain_orders[j] * unit_vector(n, rd * rd + i * rc + j));
  s.zero_pairs = zero.rows() ? hermite(zero) : IntMatrix(0, n);
  const IntMatrix& basis = s.solutions;
  IntMatrix rel(0, basis.rows());
  for (std::size_t i = 0; i < s.zero_pairs.rows(); ++i) {
    auto c = lattice_coordinates(basis, s.zero_pairs.row(i));
    if (!c) throw std::logic_error("zero pairs must satisfy the conditions");
    rel.append_row(*c);
  }
  std::vector<std::pair<IntMatrix, IntMatrix>> pairs;
  for (std::size_t i = 0; i < basis.rows(); ++i) pairs.push_back(detail::unflatten_pair(basis.row(i), rd, rc));
  auto compose = [&](const std::pair<IntMatrix, IntMatrix>& x, const std::pair<IntMatrix, IntMatrix>& y) {
    return detail::flatten_pair(x.first * y.first, x.second * y.second);
  };
  s.presentation = present_ring(basis.rows(), rel, [&](std::size_t i, std::size_t j) {
    auto c = lattice_coordinates(basis, compose(pairs[i], pairs[j]));
    if (!c) throw std::runtime_error("scalar ring axioms violated: not closed under composition");
    return *c;
  });
  s.ring = s.presentation.ring;
  for (std::size_t a = 0; a < s.ring.rank(); ++a) {
    Vector z = s.presentation.from_ring_vec(unit_vector(s.ring.rank(), a)) * basis;
    auto pr = detail::unflatten_pair(z, rd, rc);
    s.action_on_domain.push_back(pr.first);
    s.action_on_codomain.push_back(pr.second);
  }
  auto id = lattice_coordinates(basis, detail::flatten_pair(IntMatrix::identity(rd), IntMatrix::identity(rc)));
  if (!id) throw std::runtime_error("scalar ring axioms violated: identity pair missing");
  s.identity = s.presentation.to_ring_vec(*id);
  const FdzRing& p = s.ring;
  bool unital = true;
  for (std::size_t a = 0; a < p.rank(); ++a)
    if (!p.equal(p.mul(s.identity, p.gen(a)), p.gen(a)) || !p.equal(p.mul(p.gen(a), s.identity), p.gen(a)))
      unital = false;
  if (!p.is_commutative() || !p.is_associative() || !unital)
    throw std::runtime_error("scalar ring axioms violated");
  return s;
}

inline ScalarRingAction pf_ring(const BilinearMap& f) { return scalar_ring_from_conditions(f, pf_conditions(f)); }

inline ScalarRingAction pa_ring(const InducedMap& m) {
  PairConditions pc = pf_conditions(m.f);
  add_pa_conditions(m.f, m.pi_matrix(), pc);
  return scalar_ring_from_conditions(m.f, pc);
}
inline ScalarRingAction pa_ring(const FdzRing& a) { return pa_ring(induced_bilinear_map(a)); }

}  // namespace fdz
