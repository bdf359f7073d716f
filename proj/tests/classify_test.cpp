#include "fdz/classify.hpp"
#include "fdz/corpus.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace fdz;

namespace {

void expect_consistent(const ClassificationReport& r) {
  for (const char* field : {"tame", "regular", "qfa", "first_order_rigid_hint", "super_tame", "bi_interpretable"}) {
    int n = 0;
    for (const auto& j : r.justifications) n += j.verdict == field;
    EXPECT_EQ(n, 1) << field;
  }
  if (r.super_tame == Verdict::yes) EXPECT_EQ(r.bi_interpretable, Verdict::yes);
  if (r.bi_interpretable == Verdict::yes) EXPECT_EQ(r.qfa, Verdict::yes);
  if (r.qfa == Verdict::yes) EXPECT_TRUE(r.tame);
  if (r.qfa == Verdict::no) EXPECT_EQ(r.bi_interpretable, Verdict::no);
  if (r.infinite) EXPECT_EQ(r.qfa, from_bool(r.tame));
  else EXPECT_EQ(r.qfa, Verdict::not_applicable);
}

std::string tag_of(const ClassificationReport& r, const std::string& field) {
  auto j = r.justification(field);
  return j ? j->tag : "";
}

}  // namespace

TEST(Classify, Integers) {
  auto r = classify_ring(corpus::integers());
  EXPECT_TRUE(r.tame);
  EXPECT_EQ(r.qfa, Verdict::yes);
  EXPECT_EQ(r.super_tame, Verdict::yes);
  EXPECT_EQ(r.bi_interpretable, Verdict::yes);
  EXPECT_EQ(r.first_order_rigid_hint, Verdict::yes);
  expect_consistent(r);
}

TEST(Classify, EvenIntegers) {
  auto r = classify_ring(corpus::even_integers());
  EXPECT_TRUE(r.tame);
  EXPECT_EQ(r.qfa, Verdict::yes);
  EXPECT_EQ(r.super_tame, Verdict::yes);
  EXPECT_EQ(r.bi_interpretable, Verdict::yes);
  EXPECT_EQ(tag_of(r, "super_tame"), "spec0-rule");
}

TEST(Classify, NullIntegers) {
  auto r = classify_ring(corpus::null_integers());
  EXPECT_FALSE(r.tame);
  EXPECT_EQ(r.qfa, Verdict::no);
  EXPECT_EQ(r.bi_interpretable, Verdict::no);
  EXPECT_EQ(tag_of(r, "qfa"), "qfa-iff-tame");
  expect_consistent(r);
}

TEST(Classify, IntegersTimesNull) {
  auto r = classify_ring(corpus::integers_times_null());
  EXPECT_EQ(r.bi_interpretable, Verdict::no);
  EXPECT_EQ(tag_of(r, "bi_interpretable"), "infinite-ann-and-delta-proper");
  EXPECT_FALSE(r.ann_finite);
  EXPECT_FALSE(r.delta_is_whole);
}

TEST(Classify, W) {
  auto r = classify_ring(corpus::w_ring());
  EXPECT_FALSE(r.tame);
  EXPECT_FALSE(r.regular);
  EXPECT_EQ(r.qfa, Verdict::no);
  EXPECT_EQ(r.bi_interpretable, Verdict::no);
  EXPECT_EQ(r.first_order_rigid_hint, Verdict::unknown);
}

TEST(Classify, DualNumbers) {
  auto r = classify_ring(corpus::dual_numbers());
  EXPECT_TRUE(r.tame);
  EXPECT_EQ(r.qfa, Verdict::yes);
  EXPECT_EQ(r.super_tame, Verdict::yes);
  EXPECT_EQ(r.bi_interpretable, Verdict::yes);
}

TEST(Classify, IntegersSquaredIsUndecided) {
  // Tame and regular, but the scalar ring has two rational points.
  auto r = classify_ring(corpus::integers_squared());
  EXPECT_EQ(r.qfa, Verdict::yes);
  EXPECT_EQ(r.super_tame, Verdict::no);
  EXPECT_EQ(r.bi_interpretable, Verdict::unknown);
  EXPECT_EQ(tag_of(r, "super_tame"), "spec0-rule");
  expect_consistent(r);
}

TEST(Classify, FiniteRingsNotApplicable) {
  auto r = classify_ring(corpus::integers_mod(4));
  EXPECT_FALSE(r.infinite);
  EXPECT_EQ(r.qfa, Verdict::not_applicable);
  EXPECT_EQ(r.bi_interpretable, Verdict::not_applicable);
  expect_consistent(r);
}

TEST(Classify, PaFlagAgreesOnCorpus) {
  for (const auto& [name, a] : corpus::named()) {
    auto f = classify_ring(a);
    auto p = classify_ring(a, {true});
    EXPECT_EQ(f.super_tame, p.super_tame) << name;
    EXPECT_EQ(f.bi_interpretable, p.bi_interpretable) << name;
  }
}

TEST(Classify, ConsistencyOnCorpusAndRandomRings) {
  for (const auto& [name, a] : corpus::named()) expect_consistent(classify_ring(a));
  std::mt19937 rng(7);
  const std::vector<std::vector<long>> shapes = {{0}, {0, 0}, {0, 2}, {0, 0, 3}, {0, 2, 2}};
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto& orders = shapes[trial % shapes.size()];
    auto a = oracle::random_ring(rng, orders, 0.5);
    ClassificationReport r;
    try {
      r = classify_ring(a);
    } catch (const std::exception& e) {
      ADD_FAILURE() << e.what();
      continue;
    }
    expect_consistent(r);
    ++checked;
  }
  EXPECT_EQ(checked, 60);
}
