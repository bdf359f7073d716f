#include "fdz/bilinear.hpp"
#include "fdz/corpus.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace fdz;

namespace {

void expect_scalar_ring_laws(const BilinearMap& f, const ScalarRingAction& s) {
  const FdzRing& p = s.ring;
  EXPECT_TRUE(p.is_commutative());
  EXPECT_TRUE(p.is_associative());
  for (std::size_t a = 0; a < p.rank(); ++a) EXPECT_TRUE(p.equal(p.mul(s.identity, p.gen(a)), p.gen(a)));
  const std::size_t rd = f.domain_rank();
  for (std::size_t a = 0; a < p.rank(); ++a)
    for (std::size_t i = 0; i < rd; ++i)
      for (std::size_t j = 0; j < rd; ++j) {
        Vector x = unit_vector(rd, i), y = unit_vector(rd, j);
        Vector lhs = f.apply(f.reduce_domain(x * s.action_on_domain[a]), y);
        Vector mid = f.reduce_codomain(f.apply(x, y) * s.action_on_codomain[a]);
        Vector rhs = f.apply(x, f.reduce_domain(y * s.action_on_domain[a]));
        EXPECT_EQ(lhs, mid);
        EXPECT_EQ(rhs, mid);
      }
  // The actions are ring homomorphisms on generators.
  for (std::size_t a = 0; a < p.rank(); ++a)
    for (std::size_t b = 0; b < p.rank(); ++b) {
      auto ab = s.action(p.mul(p.gen(a), p.gen(b)));
      IntMatrix prod = s.action_on_domain[a] * s.action_on_domain[b];
      for (std::size_t i = 0; i < rd; ++i)
        EXPECT_EQ(f.reduce_domain(ab.first.row(i)), f.reduce_domain(prod.row(i)));
    }
}

}  // namespace

TEST(InducedMap, Examples) {
  auto z = induced_bilinear_map(corpus::integers());
  EXPECT_EQ(z.f.domain_orders, to_vector({0}));
  EXPECT_EQ(z.f.codomain_orders, to_vector({0}));
  EXPECT_EQ(abs(z.f.value(0, 0)[0]), 1);
  auto z0 = induced_bilinear_map(corpus::null_integers());
  EXPECT_EQ(z0.f.domain_rank(), 0u);
  EXPECT_EQ(z0.f.codomain_rank(), 0u);
  auto w = induced_bilinear_map(corpus::w_ring());
  EXPECT_EQ(w.f.domain_orders, to_vector({2}));
  EXPECT_EQ(w.f.codomain_orders, to_vector({2}));
  EXPECT_EQ(w.f.value(0, 0), to_vector({1}));
  EXPECT_EQ(w.codomain_lift(to_vector({1})), to_vector({0, 0, 1}));
}

TEST(Width, Examples) {
  auto z0 = induced_bilinear_map(corpus::null_integers()).f;
  EXPECT_EQ(width(z0).exact, std::optional<std::size_t>(0));
  auto w = induced_bilinear_map(corpus::w_ring()).f;
  EXPECT_EQ(width(w).exact, std::optional<std::size_t>(1));
  auto z = width(induced_bilinear_map(corpus::integers()).f);
  EXPECT_EQ(z.upper_bound, 1u);
  EXPECT_EQ(z.exact, std::optional<std::size_t>(1));
}

TEST(Width, FiniteExactAgainstBruteForce) {
  // (Z/2)^3 with e1 e2 = t.
  auto a = make_ring({2, 2, 2}, {{0, 1, {0, 0, 1}}});
  auto f = induced_bilinear_map(a).f;
  auto w = width(f);
  ASSERT_TRUE(w.exact);
  EXPECT_LE(*w.exact, w.upper_bound);
  // e1 e2 = t1 and e3 e4 = t2 on (Z/2)^6.
  auto b = make_ring({2, 2, 2, 2, 2, 2}, {{0, 1, {0, 0, 0, 0, 1, 0}}, {2, 3, {0, 0, 0, 0, 0, 1}}});
  auto fb = induced_bilinear_map(b).f;
  auto wb = width(fb);
  ASSERT_TRUE(wb.exact);
  EXPECT_EQ(*wb.exact, 1u);  // (e1 + e3)(e2 + e4) = t1 + t2
}

TEST(CompleteSystem, Examples) {
  auto z0 = complete_system(induced_bilinear_map(corpus::null_integers()).f);
  EXPECT_TRUE(z0.witness.empty());
  EXPECT_EQ(z0.size_bound, 0u);
  auto z = complete_system(induced_bilinear_map(corpus::integers()).f);
  EXPECT_EQ(z.size_bound, 1u);
  auto w = complete_system(induced_bilinear_map(corpus::w_ring()).f);
  EXPECT_EQ(w.size_bound, 1u);
  EXPECT_EQ(w.witness[0], to_vector({1}));
}

TEST(Pf, Integers) {
  auto f = induced_bilinear_map(corpus::integers()).f;
  auto p = pf_ring(f);
  EXPECT_EQ(p.ring.orders(), to_vector({0}));
  expect_scalar_ring_laws(f, p);
  // Scalar matrices only.
  EXPECT_TRUE(p.contains(IntMatrix{{3}}, IntMatrix{{3}}));
  EXPECT_FALSE(p.contains(IntMatrix{{3}}, IntMatrix{{9}}));
}

TEST(Pf, DualNumbers) {
  auto m = induced_bilinear_map(corpus::dual_numbers());
  auto p = pf_ring(m.f);
  expect_scalar_ring_laws(m.f, p);
  EXPECT_EQ(p.ring.orders(), to_vector({0, 0}));
  // P(f) has a nonzero nilpotent and no nontrivial idempotent, like Z[x]/(x^2).
  bool has_nilpotent = false;
  for (long u = -2; u <= 2; ++u)
    for (long v = -2; v <= 2; ++v) {
      Vector x = to_vector({u, v});
      if (x != p.ring.zero() && p.ring.mul(x, x) == p.ring.zero()) has_nilpotent = true;
    }
  EXPECT_TRUE(has_nilpotent);
}

TEST(Pf, WRing) {
  auto m = induced_bilinear_map(corpus::w_ring());
  auto p = pf_ring(m.f);
  expect_scalar_ring_laws(m.f, p);
  EXPECT_EQ(p.ring.size(), 2);
  EXPECT_EQ(oracle::brute_force_pairs(m.f).size(), 2u);
  auto pa = pa_ring(m);
  EXPECT_EQ(pa.ring.size(), 2);
}

TEST(Pf, UndefinedForNullRing) {
  auto f = induced_bilinear_map(corpus::null_integers()).f;
  EXPECT_THROW(pf_ring(f), PfUndefined);
}

TEST(Pf, MatchesBruteForceOnFiniteRings) {
  std::mt19937 rng(41);
  auto shapes = oracle::small_order_shapes(16);
  int checked = 0;
  for (int it = 0; it < 80 && checked < 25; ++it) {
    auto a = oracle::random_ring(rng, shapes[it % shapes.size()], 0.5);
    auto m = induced_bilinear_map(a);
    if (m.f.domain_rank() == 0 || m.f.codomain_rank() == 0) continue;
    Integer dsize = 1, csize = 1;
    for (const auto& d : m.f.domain_orders) dsize *= d;
    for (const auto& d : m.f.codomain_orders) csize *= d;
    if (dsize > 8 || csize > 8) continue;
    auto p = pf_ring(m.f);
    expect_scalar_ring_laws(m.f, p);
    auto pairs = oracle::brute_force_pairs(m.f);
    EXPECT_EQ(Integer(static_cast<long>(pairs.size())), p.ring.size());
    for (const auto& pr : pairs) EXPECT_TRUE(p.contains(pr.first, pr.second));
    auto pa = pa_ring(m);
    EXPECT_TRUE(lattice_contains(p.solutions, pa.solutions.row(0)));
    for (std::size_t i = 0; i < pa.solutions.rows(); ++i)
      EXPECT_TRUE(lattice_contains(p.solutions, pa.solutions.row(i)));
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

TEST(Pf, ContainsMultiplicationAction) {
  for (auto a : {corpus::integers(), corpus::dual_numbers(), corpus::w_ring(), corpus::integers_mod(4)}) {
    auto m = induced_bilinear_map(a);
    auto p = pf_ring(m.f);
    for (std::size_t g = 0; g < a.rank(); ++g) {
      // Left multiplication by e_g on A/Ann and on A^2.
      const std::size_t rd = m.f.domain_rank(), rc = m.f.codomain_rank();
      IntMatrix phi(rd, rd), psi(rc, rc);
      for (std::size_t i = 0; i < rd; ++i) phi.set_row(i, m.domain.coords(a.mul(a.gen(g), m.domain_lift(unit_vector(rd, i)))));
      for (std::size_t i = 0; i < rc; ++i) psi.set_row(i, m.to_codomain(a.mul(a.gen(g), m.codomain_lift(unit_vector(rc, i)))));
      EXPECT_TRUE(p.contains(phi, psi));
    }
  }
}

TEST(Pf, RandomSolutionsAreMembers) {
  // Sample integer combinations of solution rows; each must satisfy the
  // defining congruences directly.
  auto m = induced_bilinear_map(corpus::dual_numbers());
  auto p = pf_ring(m.f);
  auto pc = pf_conditions(m.f);
  std::mt19937 rng(2);
  for (int it = 0; it < 20; ++it) {
    Vector z(p.solutions.cols(), Integer(0));
    for (std::size_t i = 0; i < p.solutions.rows(); ++i)
      z = z + Integer(static_cast<long>(rng() % 11) - 5) * p.solutions.row(i);
    for (std::size_t e = 0; e < pc.eqs.rows(); ++e) {
      Integer dot = 0;
      for (std::size_t k = 0; k < z.size(); ++k) dot += pc.eqs(e, k) * z[k];
      EXPECT_EQ(reduce_mod(dot, pc.moduli[e]), 0);
    }
  }
}
