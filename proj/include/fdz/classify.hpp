#pragma once

// Model-theoretic verdicts for a ring: tame/QFA, regular/rigid, super tame
// and bi-interpretability with Z.

#include "fdz/bilinear.hpp"
#include "fdz/ideals.hpp"
#include "fdz/spectrum.hpp"
#include "fdz/verdict.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fdz {

struct Justification {
  std::string verdict;  // field the tag supports
  std::string tag;
  std::string detail;
};

struct ClassificationReport {
  bool infinite = false;
  bool tame = false;
  bool regular = false;
  Verdict qfa = Verdict::unknown;
  Verdict first_order_rigid_hint = Verdict::unknown;
  Verdict super_tame = Verdict::unknown;
  Verdict bi_interpretable = Verdict::unknown;
  std::vector<Justification> justifications;
  /// Spectrum of the scalar ring used for super tameness, when computed.
  std::optional<SpectrumAnalysis> spectrum;
  bool ann_finite = false;
  bool delta_is_whole = false;

  const Justification* justification(const std::string& verdict) const {
    for (const auto& j : justifications)
      if (j.verdict == verdict) return &j;
    return nullptr;
  }
};

/// Every tag classify_ring can cite.
inline const std::set<std::string>& justification_tags() {
  static const std::set<std::string> tags = {
      "tame-definition", "regular-definition", "regular-implies-rigid", "finite-ring",
      "qfa-iff-tame", "infinite-ann-and-delta-proper", "spec0-rule", "pf-undefined",
      "factorization-incomplete", "super-tame-implies-biint", "biint-implies-qfa", "no-criterion-applies"};
  return tags;
}

struct ClassifyOptions {
  /// Use P(A) instead of P(f_A) for the spectrum condition.
  bool use_pa = false;
};

inline ClassificationReport classify_ring(const FdzRing& a, const ClassifyOptions& opt = {}) {
  ClassificationReport r;
  auto cite = [&](const char* verdict, const char* tag, std::string detail) {
    r.justifications.push_back({verdict, tag, std::move(detail)});
  };
  const IdealChain c = characteristic_ideals(a);
  const RingPredicates pr = predicates(c);
  r.infinite = !a.is_finite();
  r.tame = pr.tame;
  r.regular = pr.regular;
  r.ann_finite = present(c.ann).is_finite();
  r.delta_is_whole = c.delta.is_whole();
  cite("tame", "tame-definition", r.tame ? "Ann is contained in Delta" : "Ann is not contained in Delta");
  cite("regular", "regular-definition", r.regular ? "K = L" : "K is a proper subgroup of L");

  r.first_order_rigid_hint = r.regular ? Verdict::yes : Verdict::unknown;
  cite("first_order_rigid_hint", "regular-implies-rigid",
       r.regular ? "regular rings are first-order rigid" : "not regular; no refutation procedure");

  if (!r.infinite) {
    r.qfa = r.super_tame = r.bi_interpretable = Verdict::not_applicable;
    cite("qfa", "finite-ring", "finite rings are outside the scope of the criterion");
    cite("super_tame", "finite-ring", "finite rings are outside the scope of the criterion");
    cite("bi_interpretable", "finite-ring", "finite rings are outside the scope of the criterion");
    return r;
  }

  r.qfa = from_bool(r.tame);
  cite("qfa", "qfa-iff-tame", r.tame ? "tame infinite ring" : "infinite ring that is not tame");

  // Super tame: connected punctured spectrum of the scalar ring, and either
  // Ann finite or A = Delta.
  if (!r.ann_finite && !r.delta_is_whole) {
    r.super_tame = Verdict::no;
    cite("super_tame", "infinite-ann-and-delta-proper", "Ann is infinite and Delta is proper");
  } else {
    try {
      const InducedMap m = induced_bilinear_map(a, c);
      const ScalarRingAction p = opt.use_pa ? pa_ring(m) : pf_ring(m.f);
      r.spectrum = indecomposable_factors(p.ring);
      r.super_tame = r.spectrum->spec0_connected;
      cite("super_tame", "spec0-rule",
           std::to_string(r.spectrum->rational_components) + " rational component(s) of the scalar ring");
    } catch (const PfUndefined&) {
      r.super_tame = Verdict::no;
      cite("super_tame", "pf-undefined", "the induced bilinear map is degenerate");
    } catch (const FactorizationIncomplete& e) {
      r.super_tame = Verdict::unknown;
      cite("super_tame", "factorization-incomplete", e.what());
    }
  }

  if (r.super_tame == Verdict::yes) {
    r.bi_interpretable = Verdict::yes;
    cite("bi_interpretable", "super-tame-implies-biint", "super tame");
  } else if (!r.ann_finite && !r.delta_is_whole) {
    r.bi_interpretable = Verdict::no;
    cite("bi_interpretable", "infinite-ann-and-delta-proper", "Ann is infinite and Delta is proper");
  } else if (r.qfa == Verdict::no) {
    r.bi_interpretable = Verdict::no;
    cite("bi_interpretable", "biint-implies-qfa", "not QFA");
  } else {
    r.bi_interpretable = Verdict::unknown;
    cite("bi_interpretable", "no-criterion-applies", "neither criterion decides");
  }
  return r;
}

}  // namespace fdz
