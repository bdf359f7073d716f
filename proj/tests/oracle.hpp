#pragma once

// Brute-force reference computations on small finite rings, written against
// plain element tables. The library is used only to evaluate the objects
// under test (products, cocycle values, f(x, y)), never to decide membership.

#include "fdz/bilinear.hpp"
#include "fdz/cocycle.hpp"
#include "fdz/ring.hpp"
#include "fdz/smith.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using namespace fdz;

using fdz::FdzRing;
using fdz::Integer;
using fdz::Vector;

/// Finite ring as explicit addition and multiplication tables.
struct Table {
  std::vector<Vector> elems;
  std::map<Vector, int> index;
  std::vector<std::vector<int>> add, mul;
  std::vector<int> neg;
  int zero = 0;
  int size() const { return static_cast<int>(elems.size()); }
};

inline Table make_table(const FdzRing& a) {
  Table t;
  t.elems = a.elements();
  for (int i = 0; i < t.size(); ++i) t.index[t.elems[i]] = i;
  const int n = t.size();
  t.add.assign(n, std::vector<int>(n));
  t.mul.assign(n, std::vector<int>(n));
  t.neg.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    t.neg[i] = t.index.at(a.neg(t.elems[i]));
    for (int j = 0; j < n; ++j) {
      t.add[i][j] = t.index.at(a.add(t.elems[i], t.elems[j]));
      t.mul[i][j] = t.index.at(a.mul(t.elems[i], t.elems[j]));
    }
  }
  t.zero = t.index.at(a.zero());
  return t;
}

using Set = std::set<int>;

/// Additive subgroup generated by a set.
inline Set closure(const Table& t, Set s) {
  s.insert(t.zero);
  bool grown = true;
  while (grown) {
    grown = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int x : cur)
      for (int y : cur) {
        int z = t.add[x][y];
        if (s.insert(z).second) grown = true;
      }
  }
  return s;
}

inline Set sum(const Table& t, const Set& a, const Set& b) {
  Set u = a;
  u.insert(b.begin(), b.end());
  return closure(t, u);
}

inline Set intersect(const Set& a, const Set& b) {
  Set out;
  for (int x : a)
    if (b.count(x)) out.insert(x);
  return out;
}

inline Set ann(const Table& t) {
  Set s;
  for (int x = 0; x < t.size(); ++x) {
    bool ok = true;
    for (int y = 0; y < t.size() && ok; ++y) ok = t.mul[x][y] == t.zero && t.mul[y][x] == t.zero;
    if (ok) s.insert(x);
  }
  return s;
}

inline Set square(const Table& t) {
  Set s;
  for (int x = 0; x < t.size(); ++x)
    for (int y = 0; y < t.size(); ++y) s.insert(t.mul[x][y]);
  return closure(t, s);
}

/// {x : n x in S for some n >= 1}.
inline Set isolator(const Table& t, const Set& s) {
  Set out;
  for (int x = 0; x < t.size(); ++x) {
    int m = x;
    for (int n = 1; n <= t.size(); ++n) {
      if (s.count(m)) {
        out.insert(x);
        break;
      }
      m = t.add[m][x];
    }
  }
  return out;
}

/// Random valid structure tensor on the given orders: c_ijk must be a
/// multiple of d_k / gcd(d_k, d_i) and of d_k / gcd(d_k, d_j).
inline FdzRing random_ring(std::mt19937& rng, const std::vector<long>& orders, double density = 0.5) {
  const std::size_t r = orders.size();
  fdz::StructureTensor table(r * r, Vector(r, Integer(0)));
  std::uniform_real_distribution<double> coin(0, 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        if (coin(rng) > density) continue;
        long dk = orders[k];
        long step = 1;
        if (dk != 0) {
          auto part = [&](long di) { return di == 0 ? 1L : dk / std::gcd(dk, di); };
          step = std::lcm(part(orders[i]), part(orders[j]));
          if (step >= dk) continue;
          long m = static_cast<long>(rng() % static_cast<unsigned long>(dk / step));
          table[i * r + j][k] = m * step;
        } else {
          if (orders[i] != 0 || orders[j] != 0) continue;
          table[i * r + j][k] = static_cast<long>(rng() % 7) - 3;
        }
      }
  return fdz::validate_ring(fdz::to_vector(orders), table);
}

/// Orders vectors (each factor >= 2) whose product is at most `max_order`.
inline std::vector<std::vector<long>> small_order_shapes(long max_order) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  std::function<void(long, long)> rec = [&](long min_factor, long budget) {
    if (!cur.empty()) out.push_back(cur);
    for (long f = min_factor; f <= budget; ++f) {
      cur.push_back(f);
      rec(f, budget / f);
      cur.pop_back();
    }
  };
  rec(2, max_order);
  return out;
}


// Shared brute-force checks for the unit and acceptance tests.

inline IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

inline bool smith_ok(const IntMatrix& a, const SmithDecomposition& s) {
  if (!(s.U * a * s.V == s.D)) return false;
  if (!s.D.is_diagonal()) return false;
  if (!(s.V * s.V_inv == IntMatrix::identity(a.cols()))) return false;
  if (abs(determinant(s.U)) != 1 || abs(determinant(s.V)) != 1) return false;
  const Vector d = s.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (i + 1 < d.size() && !divides(d[i], d[i + 1])) return false;
  }
  return true;
}

std::vector<Vector> elements_of(const Vector& orders) {
  std::vector<Vector> out{Vector()};
  for (const auto& o : orders) {
    std::vector<Vector> next;
    for (const auto& v : out)
      for (long i = 0; i < to_long(o); ++i) {
        Vector w = v;
        w.push_back(i);
        next.push_back(w);
      }
    out = next;
  }
  return out;
}

inline Vector reduce_all(Vector v, const Vector& orders) {
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = reduce_mod(v[k], orders[k]);
  return v;
}

/// Brute force: an equivalence (x, a) -> (x, a + t(x)) between the two
/// extensions of Z/e by D, tried for every normalized t, checked on every
/// pair of carrier elements through integer tables.
inline bool extensions_equivalent(long e, const Vector& d_orders, const SymmetricCocycle& c1, const SymmetricCocycle& c2) {
  const auto ds = elements_of(d_orders);
  const int nd = static_cast<int>(ds.size());
  std::map<Vector, int> idx;
  for (int i = 0; i < nd; ++i) idx[ds[i]] = i;
  std::vector<std::vector<int>> dadd(nd, std::vector<int>(nd));
  for (int i = 0; i < nd; ++i)
    for (int j = 0; j < nd; ++j) dadd[i][j] = idx.at(reduce_all(ds[i] + ds[j], d_orders));
  std::vector<std::vector<int>> v1(e, std::vector<int>(e)), v2 = v1;
  for (long x = 0; x < e; ++x)
    for (long y = 0; y < e; ++y) {
      v1[x][y] = idx.at(reduce_all(c1.value({Integer(x)}, {Integer(y)}), d_orders));
      v2[x][y] = idx.at(reduce_all(c2.value({Integer(x)}, {Integer(y)}), d_orders));
    }
  // Carrier element (x, a) is encoded as x * nd + a.
  auto plus = [&](int p, int q, const std::vector<std::vector<int>>& v) {
    const int x = p / nd, a = p % nd, y = q / nd, b = q % nd;
    return static_cast<int>((x + y) % e) * nd + dadd[dadd[a][b]][v[x][y]];
  };
  const int n = static_cast<int>(e) * nd;
  std::vector<int> t(e, 0);
  for (;;) {
    auto h = [&](int p) { return (p / nd) * nd + dadd[p % nd][t[p / nd]]; };
    bool hom = true;
    for (int p = 0; p < n && hom; ++p)
      for (int q = 0; q < n && hom; ++q) hom = h(plus(p, q, v1)) == plus(h(p), h(q), v2);
    if (hom) return true;
    long i = 1;  // t(0) = 0
    while (i < e && ++t[i] == nd) t[i++] = 0;
    if (i >= e) return false;
  }
}

/// Brute-force P(f) for a finite map: every pair of group endomorphisms
/// compatible with f on all element pairs.
std::vector<std::pair<IntMatrix, IntMatrix>> brute_force_pairs(const BilinearMap& f) {
  auto dom = elements_of(f.domain_orders);
  auto cod = elements_of(f.codomain_orders);
  auto endos = [](const Vector& orders, const std::vector<Vector>& elems) {
    // Images of generators; generator i of order d needs d * image = 0.
    std::vector<IntMatrix> out;
    const std::size_t r = orders.size();
    std::vector<std::size_t> pick(r, 0);
    for (;;) {
      IntMatrix m(r, r);
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i) {
        const Vector& img = elems[pick[i]];
        for (std::size_t k = 0; k < r; ++k)
          if (reduce_mod(orders[i] * img[k], orders[k]) != 0) ok = false;
        m.set_row(i, img);
      }
      if (ok) out.push_back(m);
      std::size_t i = 0;
      while (i < r && ++pick[i] == elems.size()) pick[i++] = 0;
      if (i == r) break;
    }
    return out;
  };
  auto red = [](const Vector& v, const Vector& o) {
    Vector r = v;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = reduce_mod(r[i], o[i]);
    return r;
  };
  std::vector<std::pair<IntMatrix, IntMatrix>> out;
  auto psis = endos(f.codomain_orders, cod);
  for (const auto& phi : endos(f.domain_orders, dom)) {
    std::vector<std::pair<Vector, Vector>> checks;  // (f(x, y), f(phi x, y))
    bool ok = true;
    for (const auto& x : dom) {
      for (const auto& y : dom) {
        Vector l = f.apply(red(x * phi, f.domain_orders), y);
        if (l != f.apply(x, red(y * phi, f.domain_orders))) {
          ok = false;
          break;
        }
        checks.emplace_back(f.apply(x, y), l);
      }
      if (!ok) break;
    }
    if (!ok) continue;
    for (const auto& psi : psis) {
      bool good = true;
      for (const auto& [fxy, l] : checks)
        if (red(fxy * psi, f.codomain_orders) != l) {
          good = false;
          break;
        }
      if (good) out.emplace_back(phi, psi);
    }
  }
  return out;
}

/// Whether some additive bijection A -> B respects multiplication, by
/// enumerating all generator images on the element tables.
inline bool brute_isomorphic(const FdzRing& a, const FdzRing& b) {
  if (a.size() != b.size()) return false;
  const Table ta = make_table(a), tb = make_table(b);
  const std::size_t r = a.rank();
  const int n = tb.size();
  std::vector<int> gen_idx(r);
  for (std::size_t i = 0; i < r; ++i) gen_idx[i] = ta.index.at(a.gen(i));
  std::vector<int> choice(r, 0);
  auto times = [&](int x, long k) {
    int acc = tb.zero;
    for (long i = 0; i < k; ++i) acc = tb.add[acc][x];
    return acc;
  };
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) ok = times(choice[i], to_long(a.order_of(i))) == tb.zero;
    if (ok) {
      // h on every element: x = sum x_i e_i.
      std::vector<int> h(ta.size());
      std::set<int> seen;
      for (int e = 0; e < ta.size(); ++e) {
        int acc = tb.zero;
        for (std::size_t i = 0; i < r; ++i) acc = tb.add[acc][times(choice[i], to_long(ta.elems[e][i]))];
        h[e] = acc;
        seen.insert(acc);
      }
      if (static_cast<int>(seen.size()) == n) {
        bool hom = true;
        for (int x = 0; x < ta.size() && hom; ++x)
          for (int y = 0; y < ta.size() && hom; ++y) hom = h[ta.mul[x][y]] == tb.mul[h[x]][h[y]];
        if (hom) return true;
      }
    }
    std::size_t i = 0;
    while (i < r && ++choice[i] == n) choice[i++] = 0;
    if (i == r) return false;
  }
}

}  // namespace oracle
