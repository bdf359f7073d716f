#include "fdz/corpus.hpp"
#include "fdz/ideals.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace fdz;

namespace {

Subgroup span(const FdzRing& a, std::initializer_list<std::initializer_list<long>> rows) {
  return Subgroup(a.additive(), IntMatrix(rows));
}

oracle::Set as_set(const oracle::Table& t, const Subgroup& s) {
  oracle::Set out;
  for (int x = 0; x < t.size(); ++x)
    if (s.contains(t.elems[x])) out.insert(x);
  return out;
}

void expect_chain_shape(const FdzRing& a, const IdealChain& c) {
  EXPECT_TRUE(c.ann.contains(c.o_ideal));
  EXPECT_TRUE(c.k_ideal.contains(c.ann));
  EXPECT_TRUE(c.l_ideal.contains(c.k_ideal));
  EXPECT_TRUE(c.delta.contains(c.sq));
  EXPECT_TRUE(c.k_ideal.contains(c.delta));
  EXPECT_TRUE(c.n_quot.is_finite());
  for (const auto& d : c.m_quot.invariant_factors()) EXPECT_EQ(d, 0);
  EXPECT_EQ(saturation(c.delta), c.delta);
  EXPECT_EQ(saturation(c.l_ideal), c.l_ideal);
  for (const Subgroup* s : {&c.ann, &c.sq, &c.delta, &c.k_ideal, &c.l_ideal})
    EXPECT_TRUE(is_two_sided_ideal(a, *s));
}

}  // namespace

TEST(Validate, Examples) {
  EXPECT_NO_THROW(corpus::integers());
  try {
    make_ring({2, 0}, {{0, 0, {0, 1}}});
    FAIL() << "expected InvalidRing";
  } catch (const InvalidRing& e) {
    EXPECT_EQ(e.i, 0u);
    EXPECT_EQ(e.j, 0u);
    EXPECT_EQ(e.k, 1u);
  }
  EXPECT_NO_THROW(make_ring({2, 3, 0}, {}));
  // Constants are reduced modulo the orders.
  EXPECT_EQ(make_ring({3}, {{0, 0, {7}}}).product(0, 0), to_vector({1}));
}

TEST(Ideals, NullIntegers) {
  auto a = corpus::null_integers();
  auto c = characteristic_ideals(a);
  EXPECT_TRUE(c.ann.is_whole());
  EXPECT_TRUE(c.sq.is_zero());
  EXPECT_TRUE(c.delta.is_zero());
  EXPECT_TRUE(c.k_ideal.is_whole());
  EXPECT_TRUE(c.l_ideal.is_whole());
  EXPECT_TRUE(c.o_ideal.is_zero());
  EXPECT_TRUE(c.m_quot.invariant_factors().empty());
  EXPECT_TRUE(c.n_quot.invariant_factors().empty());
  auto p = predicates(c);
  EXPECT_FALSE(p.tame);
  EXPECT_TRUE(p.regular);
}

TEST(Ideals, Integers) {
  auto a = corpus::integers();
  auto c = characteristic_ideals(a);
  EXPECT_TRUE(c.ann.is_zero());
  EXPECT_TRUE(c.sq.is_whole());
  EXPECT_TRUE(c.delta.is_whole());
  EXPECT_TRUE(c.k_ideal.is_whole());
  EXPECT_TRUE(c.l_ideal.is_whole());
  auto p = predicates(c);
  EXPECT_TRUE(p.tame);
  EXPECT_TRUE(p.regular);
}

TEST(Ideals, EvenIntegers) {
  auto a = corpus::even_integers();
  auto c = characteristic_ideals(a);
  EXPECT_EQ(c.sq, span(a, {{2}}));
  EXPECT_TRUE(c.delta.is_whole());
}

TEST(Ideals, WRing) {
  auto a = corpus::w_ring();
  auto c = characteristic_ideals(a);
  EXPECT_EQ(c.ann, span(a, {{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(c.sq, span(a, {{0, 0, 1}}));
  EXPECT_EQ(c.delta, span(a, {{0, 0, 1}}));
  EXPECT_EQ(c.k_ideal, span(a, {{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_TRUE(c.l_ideal.is_whole());
  EXPECT_EQ(c.n_quot.invariant_factors(), to_vector({2}));
  EXPECT_TRUE(c.m_quot.invariant_factors().empty());
  EXPECT_EQ(c.o_ideal, span(a, {{0, 0, 1}}));
  auto p = predicates(c);
  EXPECT_FALSE(p.tame);
  EXPECT_FALSE(p.regular);
  expect_chain_shape(a, c);
}

TEST(Ideals, ChainShapeOnRandomRings) {
  std::mt19937 rng(17);
  const std::vector<std::vector<long>> shapes = {{0}, {0, 0}, {0, 2}, {0, 0, 2}, {0, 3, 0}, {0, 0, 0}, {4, 0}};
  for (int it = 0; it < 60; ++it) {
    auto a = oracle::random_ring(rng, shapes[it % shapes.size()], 0.4);
    expect_chain_shape(a, characteristic_ideals(a));
  }
}

TEST(Ideals, AgreeWithBruteForceOnFiniteRings) {
  std::mt19937 rng(23);
  auto shapes = oracle::small_order_shapes(16);
  for (int it = 0; it < 60; ++it) {
    auto a = oracle::random_ring(rng, shapes[it % shapes.size()], 0.3);
    auto t = oracle::make_table(a);
    auto c = characteristic_ideals(a);
    auto ann = oracle::ann(t);
    auto sq = oracle::square(t);
    auto delta = oracle::isolator(t, sq);
    EXPECT_EQ(as_set(t, c.ann), ann);
    EXPECT_EQ(as_set(t, c.sq), sq);
    EXPECT_EQ(as_set(t, c.delta), delta);
    EXPECT_EQ(as_set(t, c.k_ideal), oracle::sum(t, ann, delta));
    EXPECT_EQ(as_set(t, c.l_ideal), oracle::isolator(t, oracle::sum(t, ann, sq)));
    EXPECT_EQ(as_set(t, c.o_ideal), oracle::intersect(ann, delta));
  }
}

TEST(Ideals, InvariantUnderBaseChange) {
  std::mt19937 rng(29);
  for (int it = 0; it < 25; ++it) {
    auto a = oracle::random_ring(rng, {0, 0, 0}, 0.3);
    IntMatrix p = IntMatrix::identity(3), pinv = IntMatrix::identity(3);
    for (int k = 0; k < 4; ++k) {
      std::size_t i = rng() % 3, j = rng() % 3;
      if (i == j) continue;
      Integer q = static_cast<long>(rng() % 5) - 2;
      p.add_row_multiple(i, j, q);
      pinv.add_col_multiple(j, i, -q);
    }
    ASSERT_EQ(p * pinv, IntMatrix::identity(3));
    // New basis f_i = row i of p; constants (f_a f_b) expressed via p^{-1}.
    StructureTensor t(9, zero_vector(3));
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = 0; y < 3; ++y) t[x * 3 + y] = a.mul(p.row(x), p.row(y)) * pinv;
    auto b = validate_ring(a.orders(), t);
    auto ca = characteristic_ideals(a);
    auto cb = characteristic_ideals(b);
    auto move = [&](const Subgroup& s) { return Subgroup(b.additive(), s.lattice() * pinv); };
    EXPECT_EQ(move(ca.ann), cb.ann);
    EXPECT_EQ(move(ca.sq), cb.sq);
    EXPECT_EQ(move(ca.delta), cb.delta);
    EXPECT_EQ(move(ca.k_ideal), cb.k_ideal);
    EXPECT_EQ(move(ca.l_ideal), cb.l_ideal);
    EXPECT_EQ(move(ca.o_ideal), cb.o_ideal);
  }
}

TEST(Foundation, Integers) {
  auto a = corpus::integers();
  auto af = addition_and_foundation(a);
  ASSERT_TRUE(af.addition);
  EXPECT_TRUE(af.addition->is_zero());
  ASSERT_TRUE(af.foundation_is_subring());
  EXPECT_TRUE(std::get<Subgroup>(af.foundation).is_whole());
}

TEST(Foundation, IntegersTimesNull) {
  auto a = corpus::integers_times_null();
  EXPECT_EQ(annihilator(a), span(a, {{0, 1}}));
  auto af = addition_and_foundation(a);
  ASSERT_TRUE(af.addition);
  EXPECT_EQ(*af.addition, span(a, {{0, 1}}));
  ASSERT_TRUE(af.foundation_is_subring());
  const auto& f = std::get<Subgroup>(af.foundation);
  EXPECT_EQ(f, span(a, {{1, 0}}));
  EXPECT_TRUE(is_closed_under_product(a, f));
}

TEST(Foundation, WRingIsQuotient) {
  auto a = corpus::w_ring();
  auto af = addition_and_foundation(a);
  ASSERT_TRUE(af.addition);
  EXPECT_EQ(*af.addition, span(a, {{2, 0, 0}, {0, 1, 0}}));
  ASSERT_FALSE(af.foundation_is_subring());
  const auto& q = std::get<RingPresentation>(af.foundation);
  EXPECT_EQ(q.ring.size(), 4);
  Vector e1 = q.to_ring_vec(to_vector({1, 0, 0}));
  Vector t = q.to_ring_vec(to_vector({0, 0, 1}));
  EXPECT_EQ(q.ring.mul(e1, e1), t);
  EXPECT_NE(t, q.ring.zero());
}

TEST(Foundation, RandomRingsSatisfyDecomposition) {
  std::mt19937 rng(31);
  const std::vector<std::vector<long>> shapes = {{0, 0}, {0, 2}, {0, 0, 2}, {0, 0, 0}, {0, 0, 3}};
  for (int it = 0; it < 40; ++it) {
    auto a = oracle::random_ring(rng, shapes[it % shapes.size()], 0.3);
    auto c = characteristic_ideals(a);
    auto af = addition_and_foundation(a, c);
    ASSERT_TRUE(af.addition);
    EXPECT_TRUE(subgroup_intersect(*af.addition, c.o_ideal).is_zero());
    EXPECT_EQ(subgroup_sum(*af.addition, c.o_ideal), c.ann);
    if (af.foundation_is_subring()) {
      const auto& f = std::get<Subgroup>(af.foundation);
      EXPECT_TRUE(is_closed_under_product(a, f));
      EXPECT_TRUE(f.contains(c.delta));
      EXPECT_TRUE(subgroup_sum(f, *af.addition).is_whole());
      EXPECT_TRUE(subgroup_intersect(f, *af.addition).is_zero());
    }
  }
}

TEST(NormalPresentation, Examples) {
  auto z = normal_presentation(corpus::integers());
  EXPECT_EQ(z.free_gens.size(), 1u);
  EXPECT_TRUE(z.torsion_gens.empty());
  EXPECT_EQ(z.c[0][0][0], 1);
  auto z0 = normal_presentation(corpus::null_integers());
  EXPECT_EQ(z0.c[0][0][0], 0);
  auto w = normal_presentation(corpus::w_ring());
  ASSERT_EQ(w.free_gens.size(), 2u);
  ASSERT_EQ(w.torsion_gens.size(), 1u);
  EXPECT_EQ(w.free_gens[0], to_vector({1, 0, 0}));
  EXPECT_EQ(w.torsion_orders, to_vector({2}));
  EXPECT_EQ(w.t[0][0][0], 1);
  EXPECT_EQ(w.t[0][1][0], 0);
  EXPECT_EQ(w.t[1][1][0], 0);
  EXPECT_EQ(w.c[0][0], to_vector({0, 0}));
}

TEST(Constructions, ReduceModN) {
  auto z4 = reduce_mod_n(corpus::integers(), 4).ring;
  EXPECT_EQ(z4.orders(), to_vector({4}));
  EXPECT_EQ(z4.product(0, 0), to_vector({1}));
  EXPECT_EQ(reduce_mod_n(corpus::w_ring(), 1).ring.rank(), 0u);
  auto w2 = reduce_mod_n(corpus::w_ring(), 2);
  EXPECT_EQ(w2.ring.size(), 8);
  Vector e1 = w2.to_ring_vec(to_vector({1, 0, 0}));
  EXPECT_EQ(w2.ring.mul(e1, e1), w2.to_ring_vec(to_vector({0, 0, 1})));
}

TEST(Constructions, DirectProduct) {
  auto zz = direct_product(z0_ring(), z0_ring());
  EXPECT_EQ(zz.rank(), 2u);
  EXPECT_TRUE(zz.is_null());
  auto a = corpus::w_ring(), b = corpus::dual_numbers();
  auto ab = direct_product(a, b);
  EXPECT_EQ(ab.rank(), a.rank() + b.rank());
  auto ann = annihilator(ab);
  EXPECT_EQ(ann, Subgroup(ab.additive(), IntMatrix{{2, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}}));
}

TEST(Constructions, NullRing) {
  auto z0 = z0_ring();
  EXPECT_EQ(z0.orders(), to_vector({0}));
  EXPECT_TRUE(z0.is_null());
  EXPECT_FALSE(z0.identity());
  EXPECT_EQ(*corpus::dual_numbers().identity(), to_vector({1, 0}));
}

TEST(Constructions, SubringAndQuotient) {
  auto a = corpus::integers_times_null();
  auto s = subring(a, span(a, {{1, 0}}));
  EXPECT_EQ(s.pres.ring.rank(), 1u);
  EXPECT_EQ(s.pres.ring.product(0, 0), to_vector({1}));
  EXPECT_EQ(s.from_sub(to_vector({1})), to_vector({1, 0}));
  auto q = quotient_ring(corpus::integers(), span(corpus::integers(), {{6}}));
  EXPECT_EQ(q.ring.orders(), to_vector({6}));
}
