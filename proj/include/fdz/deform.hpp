#pragma once

// Abelian deformations at R = Z: the extension L/K of a ring is twisted by a
// symmetric cocycle g on N = L/K with values in D = Ann. Also the six-term
// comparison between a ring and a candidate deformation.

#include "fdz/cocycle.hpp"
#include "fdz/eqcheck.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fdz {

class InvalidDeformation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pieces of A the construction is built from.
struct DeformationData {
  IdealChain chain;
  Vector n_orders;           // cyclic factors e_j of N
  IntMatrix n_lifts;         // a_j in L with e_j a_j + Delta part of a basis of K/Delta
  IntMatrix m_lifts;         // lifts of a basis of M = A/L
  std::size_t addition_rank = 0;  // rank of A_0 = Ann / O
  std::size_t m_rank() const { return m_lifts.rows(); }
};

inline DeformationData deformation_data(const FdzRing& a) {
  DeformationData dd;
  dd.chain = characteristic_ideals(a);
  const IdealChain& c = dd.chain;
  const std::size_t r = a.rank();
  // Basis of the free group L/Delta adapted to K/Delta.
  const IntMatrix& lb = c.l_ideal.lattice();
  IntMatrix rel(0, lb.rows());
  for (std::size_t i = 0; i < c.delta.lattice().rows(); ++i)
    rel.append_row(*lattice_coordinates(lb, c.delta.lattice().row(i)));
  DiagonalForm ld = diagonal_form(lb.rows(), rel);
  for (const auto& o : ld.orders)
    if (o != 0) throw std::logic_error("L/Delta has torsion");
  IntMatrix kc(0, ld.rank());
  for (std::size_t i = 0; i < c.k_ideal.lattice().rows(); ++i)
    kc.append_row(ld.coords(*lattice_coordinates(lb, c.k_ideal.lattice().row(i))));
  dd.n_lifts = IntMatrix(0, r);
  if (ld.rank() > 0) {
    const IntMatrix u = ld.from * lb;  // free basis of L/Delta in A
    const auto sm = smith(kc);
    for (std::size_t j = 0; j < ld.rank(); ++j) {
      Integer e = j < sm.rank ? Integer(sm.D(j, j)) : Integer(0);
      if (e == 0) throw std::logic_error("K/Delta has smaller rank than L/Delta");
      if (e == 1) continue;
      dd.n_orders.push_back(e);
      dd.n_lifts.append_row(a.reduce(sm.V_inv.row(j) * u));
    }
  }
  DiagonalForm md = diagonal_form(r, c.l_ideal.lattice());
  dd.m_lifts = md.from;
  dd.addition_rank = relative_quotient(c.ann, c.o_ideal).free_rank();
  return dd;
}

struct DeformationSpec {
  FdzRing base;
  /// Cocycle on N (source orders = n_orders) with values in A's coordinates,
  /// which must lie in D = Ann(A).
  SymmetricCocycle g;
  /// Cocycles on the free groups M and B_0; at R = Z they are coboundaries.
  std::optional<SymmetricCocycle> f, h;
  long independence_bound = 16;
};

/// g in cyclic normal form from one value per factor of N.
inline SymmetricCocycle n_cocycle(const FdzRing& a, const DeformationData& dd, const std::vector<Vector>& values) {
  if (values.size() != dd.n_orders.size())
    throw InvalidDeformation("expected " + std::to_string(dd.n_orders.size()) + " value(s) for g, one per cyclic factor of N");
  SymmetricCocycle g = zero_cocycle(dd.n_orders, a.orders());
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j].size() != a.rank()) throw InvalidDeformation("g value has the wrong length");
    g.cyclic[j] = a.reduce(values[j]);
  }
  return g;
}

struct DeformationResult {
  RingPresentation pres;   // generators: K basis, M lifts, twisted N lifts
  IntMatrix generators_to_base;  // images in A; additive modulo Ann(A)
  DeformationData data;
  bool annihilator_ok = false;
  std::vector<long> independence_checked;
  const FdzRing& ring() const { return pres.ring; }
};

inline DeformationResult build_deformation(const DeformationSpec& spec) {
  const FdzRing& a = spec.base;
  DeformationResult res;
  res.data = deformation_data(a);
  const DeformationData& dd = res.data;
  const IdealChain& c = dd.chain;
  const std::size_t r = a.rank();

  auto free_source = [](const SymmetricCocycle& s, std::size_t rank, const char* what) {
    if (s.source_orders.size() != rank) throw InvalidDeformation(std::string(what) + " has the wrong source rank");
    for (const auto& e : s.source_orders)
      if (e != 0) throw InvalidDeformation(std::string(what) + " must live on a free group at R = Z");
  };
  if (spec.f) free_source(*spec.f, dd.m_rank(), "f");
  if (spec.h) free_source(*spec.h, dd.addition_rank, "h");

  const SymmetricCocycle& g = spec.g;
  if (g.source_orders != dd.n_orders) throw InvalidDeformation("g is not defined on N");
  if (g.target_orders != a.orders()) throw InvalidDeformation("g must take values in the base ring");
  auto an = cocycle_analyze(g);
  if (!an.is_cocycle || !an.is_symmetric || !an.is_normalized) throw InvalidDeformation("g is not a normalized symmetric cocycle");
  // Values in D keep the class of p + g modulo Ann equal to that of A.
  for (const auto& v : g.form == SymmetricCocycle::Form::cyclic ? g.cyclic : g.table)
    if (!c.ann.contains(v)) throw InvalidDeformation("class constraint violated: g takes a value outside Ann");
  // e_j u_j in the extension defined by g, as an element of A.
  std::vector<Vector> twist;
  for (std::size_t j = 0; j < dd.n_orders.size(); ++j) {
    Vector u(dd.n_orders.size(), Integer(0));
    u[j] = 1;
    Vector acc(r, Integer(0));
    for (long i = 0; i < to_long(dd.n_orders[j]); ++i) acc = acc + g.value(Integer(i) * u, u);
    if (!c.ann.contains(acc)) throw InvalidDeformation("class constraint violated: g takes a value outside Ann");
    twist.push_back(a.reduce(acc));
  }

  // Independence of e_j b_j + Delta in B_0 / d B_0 for d up to the bound.
  const std::size_t q = dd.n_orders.size();
  if (q > 0) {
    const IntMatrix& kl = c.k_ideal.lattice();
    IntMatrix rel(0, kl.rows());
    for (std::size_t i = 0; i < c.delta.lattice().rows(); ++i)
      rel.append_row(*lattice_coordinates(kl, c.delta.lattice().row(i)));
    DiagonalForm kd = diagonal_form(kl.rows(), rel);
    IntMatrix w(0, kd.rank());
    for (std::size_t j = 0; j < q; ++j) {
      Vector v = dd.n_orders[j] * dd.n_lifts.row(j) + twist[j];
      w.append_row(kd.coords(*lattice_coordinates(kl, v)));
    }
    const auto sm = smith(w);
    for (long d = 2; d <= spec.independence_bound; ++d) {
      bool ok = sm.rank == q;
      for (std::size_t i = 0; i < sm.rank && ok; ++i) ok = gcd(Integer(sm.D(i, i)), Integer(d)) == 1;
      if (!ok) throw InvalidDeformation("independence condition fails modulo " + std::to_string(d));
      res.independence_checked.push_back(d);
    }
  }

  // Generators: K basis k_1..k_m, M lifts, twisted N lifts.
  const IntMatrix& kb = c.k_ideal.lattice();
  const std::size_t m = kb.rows(), p = dd.m_rank(), n = m + p + q;
  auto k_coords = [&](const Vector& v) {
    auto x = lattice_coordinates(kb, v);
    if (!x) throw std::logic_error("element expected in K");
    Vector y(n, Integer(0));
    for (std::size_t i = 0; i < m; ++i) y[i] = (*x)[i];
    return y;
  };
  IntMatrix pi(0, r);
  for (std::size_t i = 0; i < m; ++i) pi.append_row(kb.row(i));
  for (std::size_t i = 0; i < p; ++i) pi.append_row(dd.m_lifts.row(i));
  for (std::size_t j = 0; j < q; ++j) pi.append_row(dd.n_lifts.row(j));
  IntMatrix relations(0, n);
  for (std::size_t i = 0; i < a.additive().relations().rows(); ++i)
    relations.append_row(k_coords(a.additive().relations().row(i)));
  for (std::size_t j = 0; j < q; ++j) {
    Vector row = Integer(-1) * k_coords(dd.n_orders[j] * dd.n_lifts.row(j) + twist[j]);
    row[m + p + j] += dd.n_orders[j];
    relations.append_row(row);
  }
  res.pres = present_ring(n, relations, [&](std::size_t i, std::size_t j) {
    return k_coords(a.mul(pi.row(i), pi.row(j)));
  });
  res.generators_to_base = res.pres.from_ring * pi;

  // Every element of D annihilates B.
  const FdzRing& b = res.pres.ring;
  res.annihilator_ok = true;
  for (std::size_t i = 0; i < c.ann.lattice().rows() && res.annihilator_ok; ++i) {
    Vector d = res.pres.to_ring_vec(k_coords(c.ann.lattice().row(i)));
    for (std::size_t j = 0; j < b.rank(); ++j)
      if (b.mul(d, b.gen(j)) != b.zero() || b.mul(b.gen(j), d) != b.zero()) {
        res.annihilator_ok = false;
        break;
      }
  }
  if (!res.annihilator_ok) throw std::logic_error("deformation: D does not annihilate the result");
  return res;
}

struct SixTermReport {
  Verdict commutes = Verdict::unknown;
  std::string reason;
  std::vector<std::pair<std::string, bool>> checks;
  /// Ring isomorphism A -> B inducing all maps, when one was found.
  std::optional<IntMatrix> witness;
  /// Componentwise maps: phi on A/Ann (quotient coordinates) and psi on Delta
  /// (rows: images of Delta(A)'s lattice rows in B).
  std::optional<IntMatrix> phi, psi;
};

struct SixTermOptions {
  long coeff_bound = 5;
  IsoSearchOptions search;
  /// Skip the global isomorphism and build phi and psi separately.
  bool componentwise = false;
};

namespace detail {

inline Subgroup image_subgroup(const FdzRing& b, const Subgroup& s, const std::function<Vector(const Vector&)>& h) {
  IntMatrix rows(0, b.rank());
  for (std::size_t i = 0; i < s.lattice().rows(); ++i) rows.append_row(h(s.lattice().row(i)));
  return Subgroup(b.additive(), rows);
}

/// psi : Delta(A) -> Delta(B) over a fixed phi, searched in the cosets of O(B).
inline std::optional<IntMatrix> search_psi(const FdzRing& a, const FdzRing& b, const IdealChain& ca, const IdealChain& cb,
                                           const RingPresentation& qa, const RingPresentation& qb, const IntMatrix& phi,
                                           long bound, std::size_t node_limit) {
  const IntMatrix& da = ca.delta.lattice();
  const IntMatrix& db = cb.delta.lattice();
  const std::size_t s = da.rows();
  // Base points: beta in Delta(B) with pi_B(beta) = phi(pi_A(delta)).
  const IntMatrix dbt = db * qb.to_ring;  // Delta(B) rows in B/Ann coordinates
  const std::size_t rq = qb.ring.rank();
  std::vector<Vector> base(s);
  for (std::size_t i = 0; i < s; ++i) {
    if (a.additive().is_zero_element(da.row(i))) {
      base[i] = b.zero();
      continue;
    }
    Vector target = qb.ring.reduce(qa.to_ring_vec(da.row(i)) * phi);
    IntMatrix sys(rq, db.rows() + rq);
    for (std::size_t k = 0; k < rq; ++k) {
      for (std::size_t j = 0; j < db.rows(); ++j) sys(k, j) = dbt(j, k);
      sys(k, db.rows() + k) = qb.ring.order_of(k);
    }
    auto sol = solve(sys, target);
    if (!sol) return std::nullopt;
    Vector cdb(sol->particular.begin(), sol->particular.begin() + static_cast<long>(db.rows()));
    base[i] = b.reduce(cdb * db);
  }
  // Offsets in O(B).
  IntMatrix ob = cb.o_ideal.generators();
  std::vector<std::vector<Integer>> offs;
  {
    std::vector<std::vector<Integer>> values;
    bool complete = true;
    for (std::size_t j = 0; j < ob.rows(); ++j)
      values.push_back(coordinate_values(b.additive().element_order(ob.row(j)), bound, complete));
    std::vector<std::size_t> idx(ob.rows(), 0);
    for (;;) {
      std::vector<Integer> c;
      for (std::size_t j = 0; j < ob.rows(); ++j) c.push_back(values[j][idx[j]]);
      offs.push_back(c);
      std::size_t j = 0;
      while (j < ob.rows() && ++idx[j] == values[j].size()) idx[j++] = 0;
      if (j == ob.rows()) break;
    }
  }
  const FgAbelianGroup pa = present(ca.delta);
  IntMatrix img(s, b.rank());
  std::size_t nodes = 0;
  bool done = false, found = false;
  auto psi_of = [&](const Vector& coords) {
    Vector y = b.zero();
    for (std::size_t i = 0; i < s; ++i)
      if (coords[i] != 0) y = y + coords[i] * img.row(i);
    return b.reduce(y);
  };
  auto leaf_ok = [&]() {
    for (std::size_t r = 0; r < pa.relations().rows(); ++r)
      if (psi_of(pa.relations().row(r)) != b.zero()) return false;
    Subgroup im(b.additive(), img);
    if (im != cb.delta) return false;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        auto cij = lattice_coordinates(da, a.mul(da.row(i), da.row(j)));
        if (!cij || psi_of(*cij) != b.mul(img.row(i), img.row(j))) return false;
      }
    return true;
  };
  auto dfs = [&](auto&& self, std::size_t t) -> void {
    if (done) return;
    if (t == s) {
      if (leaf_ok()) found = done = true;
      return;
    }
    const bool zero_row = a.additive().is_zero_element(da.row(t));
    for (const auto& c : offs) {
      if (done) return;
      if (++nodes > node_limit) {
        done = true;
        return;
      }
      Vector v = base[t];
      if (!zero_row)
        for (std::size_t j = 0; j < ob.rows(); ++j) v = v + c[j] * ob.row(j);
      img.set_row(t, b.reduce(v));
      self(self, t + 1);
      if (zero_row) return;
    }
  };
  dfs(dfs, 0);
  if (!found) return std::nullopt;
  return img;
}

}  // namespace detail

/// Compares the sequences 0 -> O -> Delta -> A/Ann -> A/K -> 0 of A and B and
/// the sequence 0 -> Ann(B) -> B -> A/Ann -> 0.
inline SixTermReport verify_sixterm(const FdzRing& a, const FdzRing& b, const SixTermOptions& opt = {}) {
  SixTermReport rep;
  const IdealChain ca = characteristic_ideals(a), cb = characteristic_ideals(b);
  auto check = [&](std::string name, bool ok) {
    rep.checks.emplace_back(std::move(name), ok);
    return ok;
  };
  const std::vector<std::pair<std::string, std::pair<Vector, Vector>>> inv = {
      {"O", {present(ca.o_ideal).invariant_factors(), present(cb.o_ideal).invariant_factors()}},
      {"Δ", {present(ca.delta).invariant_factors(), present(cb.delta).invariant_factors()}},
      {"A/Ann", {quotient_group(a.additive(), ca.ann).invariant_factors(), quotient_group(b.additive(), cb.ann).invariant_factors()}},
      {"A/K", {quotient_group(a.additive(), ca.k_ideal).invariant_factors(), quotient_group(b.additive(), cb.k_ideal).invariant_factors()}},
      {"Ann", {present(ca.ann).invariant_factors(), present(cb.ann).invariant_factors()}},
  };
  for (const auto& [name, v] : inv)
    if (!check(name + " invariants", v.first == v.second)) {
      rep.commutes = Verdict::no;
      rep.reason = name + " invariants differ";
      return rep;
    }

  if (!opt.componentwise) {
    IsoResult iso = iso_search(a, b, opt.coeff_bound, opt.search);
    if (iso.verdict == Verdict::yes) {
      RingMap h{&a, &b, iso.witness->m};
      auto hv = [&](const Vector& x) { return h(x); };
      bool ok = check("eta: O(A) -> O(B)", detail::image_subgroup(b, ca.o_ideal, hv) == cb.o_ideal);
      ok = check("psi: Delta(A) -> Delta(B)", detail::image_subgroup(b, ca.delta, hv) == cb.delta) && ok;
      ok = check("phi: A/Ann(A) -> B/Ann(B)", detail::image_subgroup(b, ca.ann, hv) == cb.ann) && ok;
      ok = check("mu: A/K(A) -> B/K(B)", detail::image_subgroup(b, ca.k_ideal, hv) == cb.k_ideal) && ok;
      ok = check("0 -> Ann(B) -> B -> A/Ann -> 0", h.is_ring_hom() && h.bijective()) && ok;
      rep.witness = iso.witness->m;
      rep.commutes = from_bool(ok);
      rep.reason = ok ? "maps induced by a ring isomorphism" : "induced maps fail";
      return rep;
    }
  }

  // Componentwise: phi from the quotient rings, psi over phi.
  const RingPresentation qa = quotient_ring(a, ca.ann), qb = quotient_ring(b, cb.ann);
  IsoResult iso = iso_search(qa.ring, qb.ring, opt.coeff_bound, opt.search);
  if (iso.verdict != Verdict::yes) {
    rep.commutes = iso.verdict == Verdict::no ? Verdict::no : Verdict::unknown;
    rep.reason = "A/Ann: " + iso.reason;
    return rep;
  }
  const IntMatrix phi = iso.witness->m;
  rep.phi = phi;
  check("0 -> Ann(B) -> B -> A/Ann -> 0", true);
  auto psi = detail::search_psi(a, b, ca, cb, qa, qb, phi, opt.coeff_bound, opt.search.node_limit);
  if (!psi) {
    rep.commutes = Verdict::unknown;
    rep.reason = "no psi compatible with the chosen phi within the bound";
    return rep;
  }
  rep.psi = *psi;
  const IntMatrix& da = ca.delta.lattice();
  auto psi_of = [&](const Vector& x) {
    auto c = lattice_coordinates(da, x);
    return b.reduce(*c * *psi);
  };
  bool ok = check("eta: O(A) -> O(B)", detail::image_subgroup(b, ca.o_ideal, psi_of) == cb.o_ideal);
  bool square = true;
  for (std::size_t i = 0; i < da.rows(); ++i)
    square = square && qb.to_ring_vec(psi_of(da.row(i))) == qb.ring.reduce(qa.to_ring_vec(da.row(i)) * phi);
  ok = check("middle square", square) && ok;
  // mu: phi carries K(A)/Ann(A) onto K(B)/Ann(B).
  IntMatrix ka(0, qb.ring.rank()), kb(0, qb.ring.rank());
  for (std::size_t i = 0; i < ca.k_ideal.lattice().rows(); ++i) ka.append_row(qa.to_ring_vec(ca.k_ideal.lattice().row(i)) * phi);
  for (std::size_t i = 0; i < cb.k_ideal.lattice().rows(); ++i) kb.append_row(qb.to_ring_vec(cb.k_ideal.lattice().row(i)));
  ok = check("mu: A/K(A) -> B/K(B)", Subgroup(qb.ring.additive(), ka) == Subgroup(qb.ring.additive(), kb)) && ok;
  rep.commutes = from_bool(ok);
  rep.reason = ok ? "componentwise maps commute" : "componentwise maps fail";
  return rep;
}

}  // namespace fdz
