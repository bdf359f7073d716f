#pragma once

// Symmetric 2-cocycles on diagonal abelian groups, their Ext classes and the
// abelian extensions they define.

#include "fdz/abelian.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace fdz {

class InvalidCocycle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// c : G x G -> D with G = (+) Z/e_i and D = (+) Z/o_k (0 for infinite).
struct SymmetricCocycle {
  enum class Form { table, cyclic };

  Vector source_orders;
  Vector target_orders;
  Form form = Form::cyclic;
  /// Cyclic normal form: one value d_i per factor of G.
  std::vector<Vector> cyclic;
  /// Table form: values on canonical representatives, index x * |G| + y.
  std::vector<Vector> table;

  bool source_finite() const {
    for (const auto& e : source_orders)
      if (e == 0) return false;
    return true;
  }
  std::size_t source_size() const {
    std::size_t n = 1;
    for (const auto& e : source_orders) n *= to_long(e);
    return n;
  }
  Vector reduce_source(Vector x) const {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = reduce_mod(x[i], source_orders[i]);
    return x;
  }
  Vector reduce_target(Vector d) const {
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = reduce_mod(d[k], target_orders[k]);
    return d;
  }
  /// Mixed-radix index of a reduced element of a finite G.
  std::size_t index(const Vector& x) const {
    std::size_t idx = 0, mult = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
      idx += to_long(x[i]) * mult;
      mult *= to_long(source_orders[i]);
    }
    return idx;
  }
  Vector element(std::size_t idx) const {
    Vector x(source_orders.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const long e = to_long(source_orders[i]);
      x[i] = static_cast<long>(idx % e);
      idx /= e;
    }
    return x;
  }

  Vector value(const Vector& x0, const Vector& y0) const {
    const Vector x = reduce_source(x0), y = reduce_source(y0);
    if (form == Form::table) return table[index(x) * source_size() + index(y)];
    Vector out(target_orders.size(), Integer(0));
    for (std::size_t i = 0; i < source_orders.size(); ++i) {
      if (source_orders[i] == 0) continue;
      if (x[i] + y[i] >= source_orders[i]) out = out + cyclic[i];
    }
    return reduce_target(out);
  }
};

/// g(i a, j a) = 0 if i + j < e and d otherwise, on representatives in [0, e).
inline SymmetricCocycle cyclic_cocycle(long e, const Vector& d, const Vector& target_orders) {
  if (e < 1) throw InvalidCocycle("cyclic_cocycle: e must be positive");
  if (d.size() != target_orders.size()) throw InvalidCocycle("cyclic_cocycle: value has the wrong length");
  SymmetricCocycle c;
  c.source_orders = {Integer(e)};
  c.target_orders = target_orders;
  c.form = SymmetricCocycle::Form::cyclic;
  c.cyclic = {e == 1 ? Vector(d.size(), Integer(0)) : c.reduce_target(d)};
  return c;
}

inline SymmetricCocycle zero_cocycle(const Vector& source_orders, const Vector& target_orders) {
  SymmetricCocycle c;
  c.source_orders = source_orders;
  c.target_orders = target_orders;
  c.cyclic.assign(source_orders.size(), Vector(target_orders.size(), Integer(0)));
  return c;
}

/// The same cocycle in table form (finite G only).
inline SymmetricCocycle to_table(const SymmetricCocycle& c) {
  if (!c.source_finite()) throw InvalidCocycle("table form needs a finite source");
  SymmetricCocycle t = c;
  t.form = SymmetricCocycle::Form::table;
  t.cyclic.clear();
  const std::size_t n = c.source_size();
  t.table.resize(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) t.table[x * n + y] = c.value(c.element(x), c.element(y));
  return t;
}

struct CocycleAnalysis {
  bool is_cocycle = false;
  bool is_symmetric = false;
  bool is_normalized = false;
  bool is_coboundary = false;
  /// Per factor Z/e_i of G: the class in D / e_i D and the moduli of that group.
  std::vector<Vector> ext_class;
  std::vector<Vector> class_moduli;
  bool ext_trivial() const {
    for (const auto& v : ext_class)
      if (!is_zero(v)) return false;
    return true;
  }
};

/// Moduli of D / eD for diagonal D.
inline Vector ext_moduli(const Integer& e, const Vector& target_orders) {
  Vector m;
  for (const auto& o : target_orders) m.push_back(o == 0 ? e : gcd(e, o));
  return m;
}

namespace detail {

/// Solvability of c(x, y) = t(x) + t(y) - t(x + y) in D for a finite source,
/// via the lattice of (t, lambda) with lambda * c a coboundary of t.
inline bool coboundary_system(const SymmetricCocycle& c) {
  const std::size_t n = c.source_size(), rd = c.target_orders.size();
  if (rd == 0) return true;
  const std::size_t unknowns = n * rd + 1;
  IntMatrix eqs(0, unknowns);
  Vector moduli;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) {
      const Vector gx = c.element(x), gy = c.element(y);
      const std::size_t s = c.index(c.reduce_source(gx + gy));
      const Vector v = c.value(gx, gy);
      for (std::size_t k = 0; k < rd; ++k) {
        Vector row(unknowns, Integer(0));
        row[x * rd + k] += 1;
        row[y * rd + k] += 1;
        row[s * rd + k] -= 1;
        row[n * rd] = -v[k];
        if (is_zero(row)) continue;
        eqs.append_row(row);
        moduli.push_back(c.target_orders[k]);
      }
    }
  if (eqs.rows() == 0) return true;
  IntMatrix sol = congruence_lattice(eqs, moduli);
  Integer g = 0;
  for (std::size_t i = 0; i < sol.rows(); ++i) g = gcd(g, sol(i, n * rd));
  return g == 1;
}

}  // namespace detail

inline CocycleAnalysis cocycle_analyze(const SymmetricCocycle& c) {
  if (c.form == SymmetricCocycle::Form::table && !c.source_finite())
    throw InvalidCocycle("table form needs a finite source");
  CocycleAnalysis a;
  // Infinite cyclic factors carry no data in cyclic normal form, so checks
  // run over the finite part.
  Vector finite_orders;
  std::vector<std::size_t> finite_idx;
  for (std::size_t i = 0; i < c.source_orders.size(); ++i)
    if (c.source_orders[i] != 0) {
      finite_orders.push_back(c.source_orders[i]);
      finite_idx.push_back(i);
    }
  SymmetricCocycle f;
  f.source_orders = finite_orders;
  f.target_orders = c.target_orders;
  f.form = SymmetricCocycle::Form::table;
  const std::size_t n = f.source_size();
  auto embed = [&](const Vector& x) {
    Vector y(c.source_orders.size(), Integer(0));
    for (std::size_t i = 0; i < finite_idx.size(); ++i) y[finite_idx[i]] = x[i];
    return y;
  };
  f.table.resize(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      f.table[x * n + y] = c.reduce_target(c.value(embed(f.element(x)), embed(f.element(y))));
  auto val = [&](std::size_t x, std::size_t y) -> const Vector& { return f.table[x * n + y]; };
  auto plus = [&](std::size_t x, std::size_t y) { return f.index(f.reduce_source(f.element(x) + f.element(y))); };
  a.is_normalized = a.is_symmetric = a.is_cocycle = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (!is_zero(val(0, x))) a.is_normalized = false;
    for (std::size_t y = 0; y < n; ++y) {
      if (val(x, y) != val(y, x)) a.is_symmetric = false;
      for (std::size_t z = 0; z < n && a.is_cocycle; ++z) {
        Vector lhs = c.reduce_target(val(x, y) + val(plus(x, y), z));
        Vector rhs = c.reduce_target(val(y, z) + val(x, plus(y, z)));
        if (lhs != rhs) a.is_cocycle = false;
      }
    }
  }
  // Class per cyclic factor: sum of c(u, j u) for j in [0, e).
  for (std::size_t i = 0; i < c.source_orders.size(); ++i) {
    const Integer& e = c.source_orders[i];
    const Vector mod = ext_moduli(e, c.target_orders);
    Vector cls(c.target_orders.size(), Integer(0));
    if (e != 0) {
      Vector u(c.source_orders.size(), Integer(0));
      u[i] = 1;
      for (long j = 0; j < to_long(e); ++j) cls = cls + c.value(u, Integer(j) * u);
    }
    for (std::size_t k = 0; k < cls.size(); ++k) cls[k] = reduce_mod(cls[k], mod[k]);
    a.ext_class.push_back(cls);
    a.class_moduli.push_back(mod);
  }
  a.is_coboundary = a.is_cocycle && detail::coboundary_system(f);
  return a;
}

struct GroupExtension {
  /// Generators: lifts (g_i, 0) of G's generators, then (0, delta_k).
  FgAbelianGroup group;
  IntMatrix embed;    // rank D x rank E
  IntMatrix project;  // rank E x rank G
  SymmetricCocycle cocycle;

  /// Coordinates of the carrier element (g, delta).
  Vector coordinates(const Vector& g, const Vector& delta) const {
    const std::size_t rg = cocycle.source_orders.size(), rd = cocycle.target_orders.size();
    // Walk (0,0) -> sum g_i (g_i generator steps) and record the D part.
    Vector cur(rg, Integer(0)), acc(rd, Integer(0));
    const Vector x = cocycle.reduce_source(g);
    Vector coords(rg + rd, Integer(0));
    for (std::size_t i = 0; i < rg; ++i) {
      Vector u(rg, Integer(0));
      u[i] = 1;
      for (Integer s = 0; s < abs(x[i]); ++s) {
        acc = acc + cocycle.value(cur, u);
        cur = cocycle.reduce_source(cur + u);
      }
      coords[i] = x[i];
    }
    for (std::size_t k = 0; k < rd; ++k) coords[rg + k] = delta[k] - acc[k];
    return group.reduce(coords);
  }
};

/// E = G x D with (g, a) + (h, b) = (g + h, a + b + c(g, h)).
inline GroupExtension build_group_extension(const Vector& g_orders, const Vector& d_orders, const SymmetricCocycle& c) {
  if (c.source_orders != g_orders || c.target_orders != d_orders) throw InvalidCocycle("cocycle does not match the groups");
  auto an = cocycle_analyze(c);
  if (!an.is_cocycle || !an.is_symmetric || !an.is_normalized) throw InvalidCocycle("not a normalized symmetric cocycle");
  const std::size_t rg = g_orders.size(), rd = d_orders.size(), n = rg + rd;
  IntMatrix rel(0, n);
  for (std::size_t k = 0; k < rd; ++k)
    if (d_orders[k] != 0) rel.append_row(d_orders[k] * unit_vector(n, rg + k));
  for (std::size_t i = 0; i < rg; ++i) {
    const Integer& e = g_orders[i];
    if (e == 0) continue;
    // e (g_i, 0) = (0, sum_j c(j g_i, g_i)).
    Vector u(rg, Integer(0));
    u[i] = 1;
    Vector acc(rd, Integer(0));
    for (long j = 0; j < to_long(e); ++j) acc = acc + c.value(Integer(j) * u, u);
    Vector row(n, Integer(0));
    row[i] = e;
    for (std::size_t k = 0; k < rd; ++k) row[rg + k] = -acc[k];
    rel.append_row(row);
  }
  GroupExtension ext{FgAbelianGroup(n, rel), IntMatrix(rd, n), IntMatrix(n, rg), c};
  for (std::size_t k = 0; k < rd; ++k) ext.embed(k, rg + k) = 1;
  for (std::size_t i = 0; i < rg; ++i) ext.project(i, i) = 1;
  return ext;
}

}  // namespace fdz
