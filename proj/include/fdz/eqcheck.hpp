#pragma once

// Invariant profiles, bounded isomorphism search and embedding checks
// between rings.

#include "fdz/ideals.hpp"
#include "fdz/morphism.hpp"
#include "fdz/verdict.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fdz {

/// Named isomorphism invariants of the additive groups attached to a ring.
struct InvariantProfile {
  std::vector<std::pair<std::string, Vector>> fields;

  /// Name of the first differing field, if any.
  std::optional<std::string> first_mismatch(const InvariantProfile& o) const {
    const std::size_t n = std::min(fields.size(), o.fields.size());
    for (std::size_t i = 0; i < n; ++i)
      if (fields[i].first != o.fields[i].first || fields[i].second != o.fields[i].second) return fields[i].first;
    if (fields.size() != o.fields.size()) return std::string("profile length");
    return std::nullopt;
  }
  friend bool operator==(const InvariantProfile& a, const InvariantProfile& b) { return !a.first_mismatch(b); }
};

inline InvariantProfile invariant_profile(const FdzRing& a, const IdealChain& c) {
  InvariantProfile p;
  const FgAbelianGroup& g = a.additive();
  auto add = [&](std::string name, Vector v) { p.fields.emplace_back(std::move(name), std::move(v)); };
  add("A", g.invariant_factors());
  add("Ann", present(c.ann).invariant_factors());
  add("A²", present(c.sq).invariant_factors());
  add("Δ", present(c.delta).invariant_factors());
  add("K", present(c.k_ideal).invariant_factors());
  add("L", present(c.l_ideal).invariant_factors());
  add("M", c.m_quot.invariant_factors());
  add("N", c.n_quot.invariant_factors());
  add("A/A²", quotient_group(g, c.sq).invariant_factors());
  for (long n = 2; n <= 16; ++n) {
    Subgroup na(g, Integer(n) * IntMatrix::identity(a.rank()));
    FgAbelianGroup q = quotient_group(g, na);
    Vector v{q.order()};
    for (const auto& d : q.invariant_factors()) v.push_back(d);
    add("A/" + std::to_string(n) + "A", v);
    FgAbelianGroup sq = relative_quotient(subgroup_sum(c.sq, na), na);
    Vector w{sq.order()};
    for (const auto& d : sq.invariant_factors()) w.push_back(d);
    add("(A²+" + std::to_string(n) + "A)/" + std::to_string(n) + "A", w);
  }
  return p;
}
inline InvariantProfile invariant_profile(const FdzRing& a) { return invariant_profile(a, characteristic_ideals(a)); }

struct IsoWitness {
  IntMatrix m;  // row i is the image of generator i
  bool verified = false;
};

struct IsoResult {
  Verdict verdict = Verdict::unknown;
  std::optional<IsoWitness> witness;
  std::string reason;
  std::size_t nodes = 0;
};

struct IsoSearchOptions {
  std::size_t node_limit = 2'000'000;
  /// Nonzero seeds shuffle candidates of equal size; 0 keeps the canonical order.
  unsigned seed = 0;
};

namespace detail {

/// Values for one coordinate of order d, smallest absolute value first.
inline std::vector<Integer> coordinate_values(const Integer& d, long bound, bool& complete) {
  std::vector<Integer> out{Integer(0)};
  if (d == 0) {
    complete = false;
    for (long v = 1; v <= bound; ++v) {
      out.emplace_back(v);
      out.emplace_back(-v);
    }
    return out;
  }
  if (2 * bound + 1 < d) complete = false;
  for (long v = 1; v <= bound && Integer(out.size()) < d; ++v) {
    out.push_back(reduce_mod(Integer(v), d));
    if (Integer(out.size()) < d) out.push_back(reduce_mod(Integer(-v), d));
  }
  return out;
}

inline Integer symmetric_abs(const Integer& x, const Integer& d) {
  if (d == 0) return abs(x);
  Integer r = reduce_mod(x, d);
  Integer s = d - r;
  return r < s ? r : s;
}

struct IdealMembership {
  std::vector<Subgroup> ideals;
  std::vector<bool> signature(const Vector& x) const {
    std::vector<bool> s;
    for (const auto& i : ideals) s.push_back(i.contains(x));
    return s;
  }
};

inline IdealMembership membership(const IdealChain& c) {
  return {{c.ann, c.sq, c.delta, c.k_ideal, c.l_ideal, c.o_ideal}};
}

}  // namespace detail

/// Searches for a ring isomorphism A -> B with generator images of bounded
/// coefficients. No is returned only when a profile differs or when the
/// search covered every candidate of a finite target.
inline IsoResult iso_search(const FdzRing& a, const FdzRing& b, long coeff_bound = 5, const IsoSearchOptions& opt = {}) {
  IsoResult res;
  const IdealChain ca = characteristic_ideals(a), cb = characteristic_ideals(b);
  if (auto mm = invariant_profile(a, ca).first_mismatch(invariant_profile(b, cb))) {
    res.verdict = Verdict::no;
    res.reason = *mm + " mismatch";
    return res;
  }
  const std::size_t ra = a.rank(), rb = b.rank();
  // Candidate images, ordered by size.
  bool complete = true;
  std::vector<std::vector<Integer>> values(rb);
  for (std::size_t k = 0; k < rb; ++k) values[k] = detail::coordinate_values(b.order_of(k), coeff_bound, complete);
  std::vector<Vector> cands;
  {
    std::vector<std::size_t> idx(rb, 0);
    for (;;) {
      Vector y(rb);
      for (std::size_t k = 0; k < rb; ++k) y[k] = values[k][idx[k]];
      cands.push_back(y);
      std::size_t k = 0;
      while (k < rb && ++idx[k] == values[k].size()) idx[k++] = 0;
      if (k == rb) break;
    }
    auto key = [&](const Vector& y) {
      Integer mx = 0, sum = 0;
      for (std::size_t k = 0; k < rb; ++k) {
        Integer s = detail::symmetric_abs(y[k], b.order_of(k));
        if (s > mx) mx = s;
        sum += s;
      }
      return std::make_pair(mx, sum);
    };
    std::stable_sort(cands.begin(), cands.end(), [&](const Vector& x, const Vector& y) {
      auto kx = key(x), ky = key(y);
      if (kx != ky) return kx < ky;
      return x < y;
    });
    if (opt.seed != 0) {
      std::mt19937 rng(opt.seed);
      std::size_t begin = 0;
      for (std::size_t i = 1; i <= cands.size(); ++i)
        if (i == cands.size() || key(cands[i]) != key(cands[begin])) {
          std::shuffle(cands.begin() + begin, cands.begin() + i, rng);
          begin = i;
        }
    }
  }
  // Per generator: same additive order and same ideal memberships.
  const auto mem_a = detail::membership(ca), mem_b = detail::membership(cb);
  std::vector<std::vector<std::size_t>> allowed(ra);
  std::vector<std::vector<bool>> sig_b(cands.size());
  std::vector<Integer> ord_b(cands.size());
  for (std::size_t c = 0; c < cands.size(); ++c) {
    sig_b[c] = mem_b.signature(cands[c]);
    ord_b[c] = b.additive().element_order(cands[c]);
  }
  for (std::size_t i = 0; i < ra; ++i) {
    const Vector ei = a.gen(i);
    const auto sig = mem_a.signature(ei);
    const Integer ord = a.additive().element_order(ei);
    for (std::size_t c = 0; c < cands.size(); ++c)
      if (ord_b[c] == ord && sig_b[c] == sig) allowed[i].push_back(c);
  }
  // Product checks become decidable once every generator they mention is assigned.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> checks(ra);
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ra; ++j) {
      std::size_t depth = std::max(i, j);
      const Vector& p = a.product(i, j);
      for (std::size_t k = 0; k < ra; ++k)
        if (reduce_mod(p[k], a.order_of(k)) != 0) depth = std::max(depth, k);
      checks[depth].emplace_back(i, j);
    }
  std::vector<Vector> expected_prefix(ra);
  for (std::size_t t = 0; t < ra; ++t) {
    Vector orders;
    for (std::size_t i = 0; i <= t; ++i) orders.push_back(a.order_of(i));
    expected_prefix[t] = FgAbelianGroup::diagonal(orders).invariant_factors();
  }

  IntMatrix img(ra, rb);
  bool limit_hit = false;
  std::optional<IsoWitness> found;
  auto image_of = [&](const Vector& x) {
    Vector y = b.zero();
    for (std::size_t k = 0; k < ra; ++k)
      if (x[k] != 0) y = y + x[k] * img.row(k);
    return b.reduce(y);
  };
  auto dfs = [&](auto&& self, std::size_t t) -> void {
    if (found || limit_hit) return;
    if (t == ra) {
      RingMap h{&a, &b, img};
      if (h.well_defined() && h.is_ring_hom() && h.bijective()) found = IsoWitness{img, true};
      return;
    }
    for (std::size_t c : allowed[t]) {
      if (found || limit_hit) return;
      if (++res.nodes > opt.node_limit) {
        limit_hit = true;
        return;
      }
      img.set_row(t, cands[c]);
      // The images generate a copy of the prefix group.
      Subgroup s(b.additive(), img.select_rows(0, t + 1));
      if (present(s).invariant_factors() != expected_prefix[t]) continue;
      bool ok = true;
      for (const auto& [i, j] : checks[t])
        if (image_of(a.product(i, j)) != b.mul(img.row(i), img.row(j))) {
          ok = false;
          break;
        }
      if (ok) self(self, t + 1);
    }
  };
  if (ra == 0) {
    if (rb == 0 || (b.is_finite() && b.size() == 1)) found = IsoWitness{IntMatrix(0, rb), true};
  } else {
    dfs(dfs, 0);
  }
  if (found) {
    // Independent re-verification of the full tensor.
    RingMap h{&a, &b, found->m};
    found->verified = h.well_defined() && h.is_ring_hom() && h.bijective();
    res.verdict = found->verified ? Verdict::yes : Verdict::unknown;
    res.reason = found->verified ? "witness verified" : "witness failed verification";
    res.witness = found;
  } else if (limit_hit) {
    res.verdict = Verdict::unknown;
    res.reason = "node limit reached";
  } else if (complete) {
    res.verdict = Verdict::no;
    res.reason = "exhaustive search found no isomorphism";
  } else {
    res.verdict = Verdict::unknown;
    res.reason = "bounded search exhausted";
  }
  return res;
}

struct EmbeddingCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct EmbeddingReport {
  bool passed = false;
  Integer index = 0;  // 0 when infinite or not computed
  Integer k = 0;      // |L(B)/K(B)|
  std::vector<EmbeddingCheck> checks;
};

/// Checks that h : A -> B is an embedding of finite index prime to
/// k = |L(B)/K(B)| which is an isomorphism on Is(A^2) and on A/Ann(A).
inline EmbeddingReport verify_embedding(const FdzRing& a, const FdzRing& b, const IntMatrix& m) {
  if (m.rows() != a.rank() || m.cols() != b.rank()) throw std::invalid_argument("verify_embedding: matrix has the wrong shape");
  RingMap h{&a, &b, m};
  if (!h.well_defined()) throw std::invalid_argument("verify_embedding: map is not additively well defined");
  EmbeddingReport rep;
  const IdealChain ca = characteristic_ideals(a), cb = characteristic_ideals(b);
  rep.k = cb.n_quot.order();
  auto check = [&](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
    return ok;
  };
  auto image = [&](const Subgroup& s) {
    IntMatrix rows(0, b.rank());
    for (std::size_t i = 0; i < s.lattice().rows(); ++i) rows.append_row(h(s.lattice().row(i)));
    return Subgroup(b.additive(), rows);
  };
  bool ok = check("ring homomorphism", h.is_ring_hom());
  ok = check("injective", h.injective()) && ok;
  rep.index = h.image_index();
  const bool finite = rep.index != 0;
  ok = check("finite index", finite, finite ? "index " + rep.index.get_str() : "infinite index") && ok;
  const bool coprime = finite && gcd(rep.index, rep.k) == 1;
  ok = check("index prime to k", coprime, "k = " + rep.k.get_str()) && ok;
  ok = check("isomorphism on Is(A^2)", image(ca.delta) == cb.delta) && ok;
  // A/Ann(A) -> B/Ann(B): well defined, injective, surjective.
  const bool ann_into = cb.ann.contains(image(ca.ann));
  const Subgroup pre_ann(a.additive(), preimage_lattice(m, cb.ann.lattice()));
  const bool inj = pre_ann == ca.ann;
  const bool surj = subgroup_sum(h.image(), cb.ann).is_whole();
  ok = check("isomorphism on A/Ann(A)", ann_into && inj && surj) && ok;
  rep.passed = ok;
  return rep;
}

enum class Equivalence { equivalent, not_equivalent, unknown };

inline std::string to_string(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::not_equivalent: return "not_equivalent";
    case Equivalence::unknown: return "unknown";
  }
  return "unknown";
}

struct EquivalenceResult {
  Equivalence verdict = Equivalence::unknown;
  std::optional<IsoWitness> witness;  // Z0 x A -> Z0 x B
  std::string reason;
};

/// Elementary equivalence via an isomorphism Z0 x A = Z0 x B.
inline EquivalenceResult equivalence_verdict(const FdzRing& a, const FdzRing& b, long coeff_bound = 5,
                                             const IsoSearchOptions& opt = {}) {
  EquivalenceResult r;
  if (auto mm = invariant_profile(a).first_mismatch(invariant_profile(b))) {
    r.verdict = Equivalence::not_equivalent;
    r.reason = *mm + " mismatch";
    return r;
  }
  const FdzRing za = direct_product(z0_ring(), a), zb = direct_product(z0_ring(), b);
  IsoResult iso = iso_search(za, zb, coeff_bound, opt);
  r.reason = iso.reason;
  if (iso.verdict == Verdict::yes) {
    r.verdict = Equivalence::equivalent;
    r.witness = iso.witness;
  } else if (iso.verdict == Verdict::no && iso.reason.find("mismatch") != std::string::npos) {
    r.verdict = Equivalence::not_equivalent;
  } else {
    r.verdict = Equivalence::unknown;
  }
  return r;
}

}  // namespace fdz
