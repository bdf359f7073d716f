#pragma once

// JSON reports. Keys keep insertion order so identical inputs give
// byte-identical output.

#include "fdz/classify.hpp"
#include "fdz/deform.hpp"
#include "fdz/eqcheck.hpp"

#include <json.hpp>

namespace fdz::report {

using Json = nlohmann::ordered_json;

/// Machine integers when they fit, decimal strings otherwise.
inline Json integer(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

inline Json vector(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer(x));
  return a;
}

inline Json matrix(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector(m.row(i)));
  return a;
}

inline Json yes_no(bool b) { return to_string(from_bool(b)); }

inline Json ring_summary(const FdzRing& a) {
  Json j;
  j["rank"] = a.rank();
  j["orders"] = vector(a.orders());
  j["finite"] = a.is_finite();
  j["size"] = a.is_finite() ? integer(a.size()) : Json("infinite");
  j["invariant_factors"] = vector(a.additive().invariant_factors());
  return j;
}

inline Json ideal_chain(const FdzRing& a, const IdealChain& c) {
  Json j;
  auto group = [](const FgAbelianGroup& g) { return vector(g.invariant_factors()); };
  j["Ann"] = group(present(c.ann));
  j["A2"] = group(present(c.sq));
  j["Delta"] = group(present(c.delta));
  j["K"] = group(present(c.k_ideal));
  j["L"] = group(present(c.l_ideal));
  j["O"] = group(present(c.o_ideal));
  j["M"] = group(c.m_quot);
  j["N"] = group(c.n_quot);
  j["A/A2"] = group(quotient_group(a.additive(), c.sq));
  j["A/Ann"] = group(quotient_group(a.additive(), c.ann));
  return j;
}

/// Input summary, ideal chain, predicates and the bilinear map's width.
inline Json analysis(const FdzRing& a) {
  const IdealChain c = characteristic_ideals(a);
  const RingPredicates p = predicates(c);
  Json j;
  j["input"] = ring_summary(a);
  j["ideals"] = ideal_chain(a, c);
  j["predicates"] = {{"tame", yes_no(p.tame)},
                     {"regular", yes_no(p.regular)},
                     {"commutative", yes_no(a.is_commutative())},
                     {"associative", yes_no(a.is_associative())}};
  const InducedMap m = induced_bilinear_map(a, c);
  const Width w = width(m.f);
  Json b;
  b["domain"] = vector(m.f.domain_orders);
  b["codomain"] = vector(m.f.codomain_orders);
  b["width"] = w.exact ? Json(*w.exact) : Json("unknown");
  b["width_upper_bound"] = w.upper_bound;
  b["complete_system_size"] = complete_system(m.f).size_bound;
  j["bilinear"] = b;
  return j;
}

inline Json classification(const ClassificationReport& r) {
  Json j;
  j["infinite"] = r.infinite;
  j["tame"] = yes_no(r.tame);
  j["regular"] = yes_no(r.regular);
  j["qfa"] = to_string(r.qfa);
  j["first_order_rigid_hint"] = to_string(r.first_order_rigid_hint);
  j["super_tame"] = to_string(r.super_tame);
  j["bi_interpretable"] = to_string(r.bi_interpretable);
  Json js = Json::array();
  for (const auto& x : r.justifications) js.push_back({{"verdict", x.verdict}, {"tag", x.tag}, {"detail", x.detail}});
  j["justifications"] = js;
  if (r.spectrum) {
    j["spectrum"] = {{"rational_components", r.spectrum->rational_components},
                     {"primitive_idempotents", r.spectrum->primitive.size()},
                     {"infinite_factors", r.spectrum->infinite_factor_count}};
  }
  return j;
}

inline Json scalar_ring(const ScalarRingAction& s) {
  Json j;
  j["ring"] = ring_summary(s.ring);
  j["identity"] = vector(s.identity);
  Json dom = Json::array(), cod = Json::array();
  for (const auto& m : s.action_on_domain) dom.push_back(matrix(m));
  for (const auto& m : s.action_on_codomain) cod.push_back(matrix(m));
  j["action_on_domain"] = dom;
  j["action_on_codomain"] = cod;
  return j;
}

inline Json iso(const IsoResult& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["reason"] = r.reason;
  j["nodes"] = r.nodes;
  if (r.witness) j["witness"] = matrix(r.witness->m);
  return j;
}

inline Json equivalence(const EquivalenceResult& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["reason"] = r.reason;
  if (r.witness) j["witness"] = matrix(r.witness->m);
  return j;
}

inline Json embedding(const EmbeddingReport& r) {
  Json j;
  j["passed"] = r.passed;
  j["index"] = integer(r.index);
  j["k"] = integer(r.k);
  Json cs = Json::array();
  for (const auto& c : r.checks) cs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = cs;
  return j;
}

inline Json sixterm(const SixTermReport& r) {
  Json j;
  j["commutes"] = to_string(r.commutes);
  j["reason"] = r.reason;
  Json cs = Json::array();
  for (const auto& [name, ok] : r.checks) cs.push_back({{"name", name}, {"passed", ok}});
  j["checks"] = cs;
  if (r.witness) j["witness"] = matrix(*r.witness);
  return j;
}

}  // namespace fdz::report
