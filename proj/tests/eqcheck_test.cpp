#include "fdz/corpus.hpp"
#include "fdz/eqcheck.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fdz;

namespace {

/// The same ring on the basis given by the rows of a unimodular u (free rings only).
FdzRing rebase(const FdzRing& a, const IntMatrix& u) {
  const std::size_t r = a.rank();
  const auto sm = smith(u);
  IntMatrix u_inv = sm.V * sm.U;  // D = I
  StructureTensor t(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) t[i * r + j] = a.mul(u.row(i), u.row(j)) * u_inv;
  return validate_ring(a.orders(), t);
}

}  // namespace

TEST(Profile, Examples) {
  auto z = invariant_profile(corpus::integers());
  EXPECT_EQ(z, invariant_profile(corpus::integers()));
  EXPECT_EQ(*z.first_mismatch(invariant_profile(corpus::even_integers())), "A/A²");
  EXPECT_EQ(*z.first_mismatch(invariant_profile(corpus::null_integers())), "Ann");
}

TEST(IsoSearch, Examples) {
  for (const auto& [name, a] : corpus::named()) {
    auto r = iso_search(a, a);
    EXPECT_EQ(r.verdict, Verdict::yes) << name;
    ASSERT_TRUE(r.witness) << name;
    EXPECT_TRUE(r.witness->verified);
    IsoSearchOptions seeded;
    seeded.seed = 11;
    EXPECT_EQ(iso_search(a, a, 5, seeded).verdict, Verdict::yes) << name;
  }
  auto three = make_ring({0}, {{0, 0, {3}}});
  auto r = iso_search(corpus::even_integers(), three);
  EXPECT_EQ(r.verdict, Verdict::no);
  EXPECT_EQ(r.reason, "A/A² mismatch");
  auto null2 = make_ring({0, 0}, {});
  auto z0z0 = direct_product(corpus::null_integers(), corpus::null_integers());
  EXPECT_EQ(iso_search(z0z0, null2).verdict, Verdict::yes);
}

TEST(IsoSearch, FindsBaseChanges) {
  const IntMatrix u{{1, 1}, {0, 1}};
  const IntMatrix v{{2, 1}, {1, 1}};
  for (const auto& a : {corpus::integers_squared(), corpus::dual_numbers(), corpus::monogenic({1, 0, 1})}) {
    for (const auto& m : {u, v}) {
      auto b = rebase(a, m);
      auto r = iso_search(a, b);
      EXPECT_EQ(r.verdict, Verdict::yes) << b.rank();
      auto back = iso_search(b, a);
      EXPECT_EQ(back.verdict, Verdict::yes);
    }
  }
}

TEST(IsoSearch, NonIsomorphicSameProfileIsNotYes) {
  // Z[i] and Z[sqrt(-2)] are both free of rank 2 with A2 = A.
  auto gi = corpus::monogenic({1, 0, 1});
  auto s2 = corpus::monogenic({2, 0, 1});
  EXPECT_NE(iso_search(gi, s2).verdict, Verdict::yes);
}

TEST(IsoSearch, AgreesWithBruteForceOnFiniteRings) {
  std::mt19937 rng(2024);
  std::vector<FdzRing> rings;
  auto shapes = oracle::small_order_shapes(12);
  for (int i = 0; i < 50; ++i) rings.push_back(oracle::random_ring(rng, shapes[rng() % shapes.size()], 0.4));
  int pairs = 0, iso = 0;
  for (std::size_t i = 0; i < rings.size(); ++i)
    for (std::size_t j = i; j < rings.size(); ++j) {
      if (rings[i].size() != rings[j].size()) continue;
      const bool expected = oracle::brute_isomorphic(rings[i], rings[j]);
      auto r = iso_search(rings[i], rings[j], 6);
      EXPECT_EQ(r.verdict, from_bool(expected)) << i << " " << j << " " << r.reason;
      ++pairs;
      iso += expected;
    }
  EXPECT_GT(pairs, 50);
  EXPECT_GT(iso, 50);
}

TEST(Embedding, Identity) {
  for (const auto& [name, a] : corpus::named()) {
    auto rep = verify_embedding(a, a, IntMatrix::identity(a.rank()));
    EXPECT_TRUE(rep.passed) << name;
    EXPECT_EQ(rep.index, 1);
  }
}

TEST(Embedding, Doubling) {
  auto z = corpus::integers();
  auto rep = verify_embedding(z, z, IntMatrix{{2}});
  EXPECT_FALSE(rep.passed);
  EXPECT_EQ(rep.index, 2);
}

TEST(Embedding, WIndexThree) {
  auto w = corpus::w_ring();
  auto rep = verify_embedding(w, w, IntMatrix{{1, 0, 0}, {0, 3, 0}, {0, 0, 1}});
  EXPECT_TRUE(rep.passed);
  EXPECT_EQ(rep.index, 3);
  EXPECT_EQ(rep.k, 2);
  // Index 2 is not prime to k.
  auto bad = verify_embedding(w, w, IntMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 1}});
  EXPECT_FALSE(bad.passed);
}

TEST(Embedding, MalformedMatrix) {
  auto z = corpus::integers();
  EXPECT_THROW(verify_embedding(z, z, IntMatrix{{1, 0}}), std::invalid_argument);
}

TEST(Equivalence, Examples) {
  auto w = corpus::w_ring();
  EXPECT_EQ(equivalence_verdict(w, w).verdict, Equivalence::equivalent);
  auto r = equivalence_verdict(corpus::integers(), corpus::even_integers());
  EXPECT_EQ(r.verdict, Equivalence::not_equivalent);
  EXPECT_EQ(equivalence_verdict(corpus::null_integers(), corpus::integers()).reason, "Ann mismatch");
}

TEST(Equivalence, SymmetricOnCorpus) {
  auto named = corpus::named();
  for (const auto& [n1, a] : named)
    for (const auto& [n2, b] : named) {
      IsoSearchOptions opt{200000};
      auto ab = equivalence_verdict(a, b, 3, opt), ba = equivalence_verdict(b, a, 3, opt);
      EXPECT_EQ(ab.verdict, ba.verdict) << n1 << " " << n2;
      if (n1 == n2) EXPECT_EQ(ab.verdict, Equivalence::equivalent) << n1;
    }
}
