#pragma once

// Rings of finite rank over Z given by an orders vector and a structure
// tensor: e_i * e_j = sum_k c[i][j][k] e_k, coordinates reduced modulo the
// orders (0 means infinite order).

#include "fdz/abelian.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fdz {

class InvalidRing : public std::runtime_error {
 public:
  InvalidRing(const std::string& msg, std::size_t i = 0, std::size_t j = 0, std::size_t k = 0)
      : std::runtime_error(msg), i(i), j(j), k(k) {}
  std::size_t i, j, k;  // zero-based location of the violated congruence
};

/// table[i * r + j] holds the coordinates of e_i * e_j.
using StructureTensor = std::vector<Vector>;

class FdzRing {
 public:
  FdzRing() = default;

  std::size_t rank() const { return orders_.size(); }
  const Vector& orders() const { return orders_; }
  const Integer& order_of(std::size_t i) const { return orders_[i]; }
  const Vector& product(std::size_t i, std::size_t j) const { return table_[i * rank() + j]; }
  const StructureTensor& table() const { return table_; }
  const FgAbelianGroup& additive() const { return additive_; }

  bool is_finite() const {
    for (const auto& d : orders_)
      if (d == 0) return false;
    return true;
  }
  /// Number of elements, 0 when infinite.
  Integer size() const {
    Integer n = 1;
    for (const auto& d : orders_) n *= d;
    return n;
  }

  Vector reduce(Vector v) const {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = reduce_mod(v[i], orders_[i]);
    return v;
  }
  Vector zero() const { return zero_vector(rank()); }
  Vector gen(std::size_t i) const { return reduce(unit_vector(rank(), i)); }
  bool equal(const Vector& a, const Vector& b) const { return reduce(a - b) == zero(); }

  Vector add(const Vector& a, const Vector& b) const { return reduce(a + b); }
  Vector sub(const Vector& a, const Vector& b) const { return reduce(a - b); }
  Vector neg(const Vector& a) const { return reduce(-a); }
  Vector scale(const Integer& n, const Vector& a) const { return reduce(n * a); }

  /// Product without the final reduction (a lift in Z^r).
  Vector mul_lift(const Vector& x, const Vector& y) const {
    const std::size_t r = rank();
    Vector out(r, Integer(0));
    for (std::size_t i = 0; i < r; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (y[j] == 0) continue;
        const Vector& c = table_[i * r + j];
        Integer xy = x[i] * y[j];
        for (std::size_t k = 0; k < r; ++k)
          if (c[k] != 0) out[k] += xy * c[k];
      }
    }
    return out;
  }
  Vector mul(const Vector& x, const Vector& y) const { return reduce(mul_lift(x, y)); }

  /// Matrix of y -> x * y acting on row vectors (y * left_matrix(x)).
  IntMatrix left_matrix(const Vector& x) const {
    IntMatrix m(rank(), rank());
    for (std::size_t j = 0; j < rank(); ++j) m.set_row(j, mul_lift(x, unit_vector(rank(), j)));
    return m;
  }
  /// Matrix of y -> y * x acting on row vectors.
  IntMatrix right_matrix(const Vector& x) const {
    IntMatrix m(rank(), rank());
    for (std::size_t j = 0; j < rank(); ++j) m.set_row(j, mul_lift(unit_vector(rank(), j), x));
    return m;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = i + 1; j < rank(); ++j)
        if (!equal(product(i, j), product(j, i))) return false;
    return true;
  }
  bool is_associative() const {
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j)
        for (std::size_t k = 0; k < rank(); ++k)
          if (!equal(mul(product(i, j), gen(k)), mul(gen(i), product(j, k)))) return false;
    return true;
  }
  bool is_null() const {
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j)
        if (reduce(product(i, j)) != zero()) return false;
    return true;
  }

  /// Two-sided identity element, if any.
  std::optional<Vector> identity() const;

  /// All elements of a finite ring in mixed-radix order (coordinate 0 fastest).
  std::vector<Vector> elements() const {
    if (!is_finite()) throw std::logic_error("elements() on an infinite ring");
    std::vector<Vector> out;
    Vector v = zero();
    for (;;) {
      out.push_back(v);
      std::size_t i = 0;
      while (i < rank()) {
        v[i] += 1;
        if (v[i] < orders_[i]) break;
        v[i] = 0;
        ++i;
      }
      if (i == rank()) break;
    }
    return out;
  }

  friend bool operator==(const FdzRing& a, const FdzRing& b) {
    return a.orders_ == b.orders_ && a.table_ == b.table_;
  }

  friend FdzRing validate_ring(const Vector& orders, const StructureTensor& table);

 private:
  Vector orders_;
  StructureTensor table_;
  FgAbelianGroup additive_;
};

/// Checks the well-definedness congruences d_i c_ijk = 0 (mod d_k) and
/// d_j c_ijk = 0 (mod d_k); returns the ring with reduced constants.
inline FdzRing validate_ring(const Vector& orders, const StructureTensor& table) {
  const std::size_t r = orders.size();
  if (table.size() != r * r) throw InvalidRing("structure tensor must have r*r entries");
  for (const auto& d : orders)
    if (d < 0) throw InvalidRing("orders must be nonnegative");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const Vector& c = table[i * r + j];
      if (c.size() != r) throw InvalidRing("structure vector has wrong length", i, j, 0);
      for (std::size_t k = 0; k < r; ++k) {
        Integer li = orders[i] * c[k];
        Integer lj = orders[j] * c[k];
        if (!divides(orders[k], li) || !divides(orders[k], lj)) {
          std::ostringstream os;
          os << "ill-defined product at (" << i + 1 << ", " << j + 1 << ", " << k + 1
             << "): order " << orders[divides(orders[k], li) ? j : i] << " times " << c[k]
             << " is not 0 modulo " << orders[k];
          throw InvalidRing(os.str(), i, j, k);
        }
      }
    }
  FdzRing a;
  a.orders_ = orders;
  a.table_.reserve(table.size());
  for (const auto& c : table) {
    Vector v = c;
    for (std::size_t k = 0; k < r; ++k) v[k] = reduce_mod(v[k], orders[k]);
    a.table_.push_back(std::move(v));
  }
  a.additive_ = FgAbelianGroup::diagonal(orders);
  return a;
}

inline std::optional<Vector> FdzRing::identity() const {
  const std::size_t r = rank();
  if (r == 0) return zero();
  // u * e_j = e_j and e_j * u = e_j modulo the orders; unknowns u and slack.
  std::vector<std::size_t> mod_cols;
  for (std::size_t k = 0; k < r; ++k)
    if (orders_[k] != 0) mod_cols.push_back(k);
  const std::size_t eqs = 2 * r * r;
  const std::size_t slack = 2 * r * mod_cols.size();
  IntMatrix a(eqs, r + slack);
  Vector b(eqs, Integer(0));
  std::size_t s = r;
  for (std::size_t side = 0; side < 2; ++side)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        const std::size_t eq = (side * r + j) * r + k;
        for (std::size_t i = 0; i < r; ++i) a(eq, i) = side == 0 ? product(i, j)[k] : product(j, i)[k];
        b[eq] = j == k ? 1 : 0;
        if (orders_[k] != 0) a(eq, s++) = orders_[k];
      }
  auto sol = solve(a, b);
  if (!sol) return std::nullopt;
  return reduce(Vector(sol->particular.begin(), sol->particular.begin() + static_cast<std::ptrdiff_t>(r)));
}

/// Z^n / relations rewritten on diagonal (Smith) coordinates: y = x * to,
/// x = y * from. Unit factors are dropped; torsion comes before free.
struct DiagonalForm {
  Vector orders;
  IntMatrix to;    // n x r
  IntMatrix from;  // r x n
  std::size_t rank() const { return orders.size(); }
  Vector coords(const Vector& x) const {
    Vector y = x * to;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = reduce_mod(y[i], orders[i]);
    return y;
  }
  Vector lift(const Vector& y) const { return y * from; }
};

inline DiagonalForm diagonal_form(std::size_t n, const IntMatrix& relations) {
  IntMatrix rel = relations.rows() ? relations : IntMatrix(0, n);
  SmithDecomposition s = rel.rows() ? smith(rel) : SmithDecomposition{IntMatrix(0, 0), IntMatrix::identity(n),
                                                                      IntMatrix::identity(n), IntMatrix(0, n), 0};
  std::vector<std::size_t> keep;
  DiagonalForm f;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = i < s.rank ? Integer(s.D(i, i)) : Integer(0);
    if (d == 1) continue;
    keep.push_back(i);
    f.orders.push_back(d);
  }
  const std::size_t r = keep.size();
  f.to = IntMatrix(n, r);
  f.from = IntMatrix(r, n);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      f.to(i, a) = s.V(i, keep[a]);
      f.from(a, i) = s.V_inv(keep[a], i);
    }
  return f;
}

/// A ring on generators x_1..x_n with a relation lattice and a product table
/// on the generators, rewritten in diagonal (Smith) coordinates.
struct RingPresentation {
  FdzRing ring;
  IntMatrix to_ring;    // n x r: x -> x * to_ring
  IntMatrix from_ring;  // r x n: y -> y * from_ring
  Vector to_ring_vec(const Vector& x) const { return ring.reduce(x * to_ring); }
  Vector from_ring_vec(const Vector& y) const { return y * from_ring; }
};

/// `product(i, j)` gives x_i * x_j in Z^n; it must respect the relations.
inline RingPresentation present_ring(std::size_t n, const IntMatrix& relations,
                                     const std::function<Vector(std::size_t, std::size_t)>& product) {
  DiagonalForm df = diagonal_form(n, relations);
  const std::size_t r = df.rank();
  const Vector& orders = df.orders;
  RingPresentation p;
  p.to_ring = df.to;
  p.from_ring = df.from;
  // Products of the new generators, expanded bilinearly.
  std::vector<Vector> base(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i * n + j] = product(i, j);
  StructureTensor table(r * r, Vector(r, Integer(0)));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      Vector prod(n, Integer(0));
      for (std::size_t i = 0; i < n; ++i) {
        if (p.from_ring(a, i) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (p.from_ring(b, j) == 0) continue;
          Integer c = p.from_ring(a, i) * p.from_ring(b, j);
          const Vector& v = base[i * n + j];
          for (std::size_t k = 0; k < n; ++k)
            if (v[k] != 0) prod[k] += c * v[k];
        }
      }
      table[a * r + b] = prod * p.to_ring;
    }
  p.ring = validate_ring(orders, table);
  return p;
}

/// A / I for a two-sided ideal I (not checked here).
inline RingPresentation quotient_ring(const FdzRing& a, const Subgroup& ideal) {
  return present_ring(a.rank(), ideal.lattice(),
                      [&](std::size_t i, std::size_t j) { return a.product(i, j); });
}

/// A subring S presented on its own; `basis` rows are S's lattice basis in A.
struct SubringPresentation {
  RingPresentation pres;
  IntMatrix basis;
  /// Element of S (in A's coordinates) to the subring's coordinates.
  Vector to_sub(const Vector& x) const {
    auto c = lattice_coordinates(basis, x);
    if (!c) throw std::invalid_argument("element not in subring");
    return pres.to_ring_vec(*c);
  }
  /// Subring coordinates to A's coordinates (unreduced lift).
  Vector from_sub(const Vector& y) const { return pres.from_ring_vec(y) * basis; }
};

inline SubringPresentation subring(const FdzRing& a, const Subgroup& s) {
  const IntMatrix& b = s.lattice();
  const IntMatrix& rel = a.additive().relations();
  IntMatrix coords(0, b.rows());
  for (std::size_t i = 0; i < rel.rows(); ++i) coords.append_row(*lattice_coordinates(b, rel.row(i)));
  auto p = present_ring(b.rows(), coords, [&](std::size_t i, std::size_t j) {
    Vector prod = a.mul(b.row(i), b.row(j));
    auto c = lattice_coordinates(b, prod);
    if (!c) throw InvalidRing("subgroup is not closed under multiplication");
    return *c;
  });
  return SubringPresentation{std::move(p), b};
}

/// A / nA.
inline RingPresentation reduce_mod_n(const FdzRing& a, const Integer& n) {
  if (n < 1) throw std::invalid_argument("reduce_mod_n needs n >= 1");
  IntMatrix rel = vstack(a.additive().relations(), n * IntMatrix::identity(a.rank()));
  return present_ring(a.rank(), rel, [&](std::size_t i, std::size_t j) { return a.product(i, j); });
}

inline FdzRing direct_product(const FdzRing& a, const FdzRing& b) {
  const std::size_t ra = a.rank(), rb = b.rank(), r = ra + rb;
  Vector orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  StructureTensor t(r * r, Vector(r, Integer(0)));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ra; ++j)
      for (std::size_t k = 0; k < ra; ++k) t[i * r + j][k] = a.product(i, j)[k];
  for (std::size_t i = 0; i < rb; ++i)
    for (std::size_t j = 0; j < rb; ++j)
      for (std::size_t k = 0; k < rb; ++k) t[(ra + i) * r + ra + j][ra + k] = b.product(i, j)[k];
  return validate_ring(orders, t);
}

/// (Z, +) with the zero product.
inline FdzRing z0_ring() { return validate_ring(to_vector({0}), {to_vector({0})}); }

/// Z/n (n = 0 gives Z) with the usual product.
inline FdzRing cyclic_ring(const Integer& n) {
  Vector o{n};
  return validate_ring(o, {to_vector({1})});
}

/// Ring from orders and a sparse list of products (zero-based indices).
struct ProductEntry {
  std::size_t i, j;
  std::vector<long> value;
};
inline FdzRing make_ring(const std::vector<long>& orders, const std::vector<ProductEntry>& products) {
  const std::size_t r = orders.size();
  StructureTensor t(r * r, Vector(r, Integer(0)));
  for (const auto& e : products) t[e.i * r + e.j] = to_vector(e.value);
  return validate_ring(to_vector(orders), t);
}

}  // namespace fdz
