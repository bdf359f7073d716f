#include "fdz/poly.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace fdz;
using namespace fdz::poly;

namespace {

ZPoly zp(std::initializer_list<long> c) {
  ZPoly p;
  for (long x : c) p.emplace_back(x);
  return p;
}

ZPoly product(const std::vector<ZPoly>& fs) {
  ZPoly p = zp({1});
  for (const auto& f : fs) p = zmul(p, f);
  return p;
}

std::vector<ZPoly> sorted(std::vector<ZPoly> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Poly, RationalArithmetic) {
  QPoly a = to_qpoly(zp({-1, 0, 1}));  // x^2 - 1
  QPoly b = to_qpoly(zp({-1, 1}));     // x - 1
  auto [q, r] = divmod(a, b);
  EXPECT_EQ(to_zpoly(q), zp({1, 1}));
  EXPECT_TRUE(r.empty());
  EXPECT_EQ(to_zpoly(gcd(a, to_qpoly(zp({1, 2, 1})))), zp({1, 1}));
  auto e = ext_gcd(to_qpoly(zp({0, 1})), to_qpoly(zp({-2, 1})));
  EXPECT_EQ(add(mul(e.s, to_qpoly(zp({0, 1}))), mul(e.t, to_qpoly(zp({-2, 1})))), QPoly{Rational(1)});
  // (x - 1)^2 (x + 2) -> (x - 1)(x + 2)
  QPoly c = to_qpoly(zmul(zmul(zp({-1, 1}), zp({-1, 1})), zp({2, 1})));
  EXPECT_EQ(to_zpoly(squarefree_part(c)), zp({-2, 1, 1}));
}

TEST(Poly, BerlekampSmall) {
  // x^2 + 1 splits mod 5 as (x - 2)(x - 3).
  auto f = berlekamp(FpPoly{1, 0, 1}, 5);
  ASSERT_EQ(f.size(), 2u);
  // x^2 + 1 is irreducible mod 3.
  EXPECT_EQ(berlekamp(FpPoly{1, 0, 1}, 3).size(), 1u);
  // x^4 - 1 mod 5 has four linear factors.
  EXPECT_EQ(berlekamp(FpPoly{4, 0, 0, 0, 1}, 5).size(), 4u);
}

TEST(Poly, FactorKnownProducts) {
  std::vector<ZPoly> irr = {zp({1, 0, 1}), zp({-3, 1}), zp({-2, 0, 1}), zp({-1, -1, 0, 1}), zp({1, 2}),
                            zp({1, 0, -10, 0, 1})};
  for (std::size_t mask = 1; mask < (1u << irr.size()); ++mask) {
    std::vector<ZPoly> pick;
    for (std::size_t i = 0; i < irr.size(); ++i)
      if (mask & (1u << i)) pick.push_back(irr[i]);
    ZPoly f = product(pick);
    if (degree(f) > kMaxDegree) continue;
    auto got = factor_squarefree(to_qpoly(f));
    EXPECT_EQ(sorted(got), sorted(pick)) << "mask " << mask;
  }
}

TEST(Poly, SwinnertonDyerIsIrreducible) {
  // x^4 - 10x^2 + 1 splits modulo every prime but is irreducible over Q.
  auto got = factor_squarefree(to_qpoly(zp({1, 0, -10, 0, 1})));
  ASSERT_EQ(got.size(), 1u);
}

TEST(Poly, RandomProductsRoundTrip) {
  std::mt19937 rng(13);
  for (int it = 0; it < 40; ++it) {
    // Random product of distinct linear and quadratic factors.
    std::vector<ZPoly> pick;
    std::set<long> roots;
    int deg = 0;
    while (deg < 6) {
      long a = static_cast<long>(rng() % 13) - 6;
      if (rng() % 2 == 0) {
        if (!roots.insert(a).second) continue;
        pick.push_back(zp({-a, 1}));
        deg += 1;
      } else {
        long b = static_cast<long>(rng() % 5) + 1;  // x^2 + a x + b with a^2 < 4b
        if (a * a >= 4 * b) continue;
        ZPoly q = zp({b, a, 1});
        if (std::find(pick.begin(), pick.end(), q) != pick.end()) continue;
        pick.push_back(q);
        deg += 2;
      }
    }
    auto got = factor_squarefree(to_qpoly(product(pick)));
    EXPECT_EQ(sorted(got), sorted(pick));
  }
}

TEST(Poly, DegreeBound) {
  ZPoly big(kMaxDegree + 2, Integer(0));
  big[0] = -1;
  big.back() = 1;
  EXPECT_THROW(factor_squarefree(to_qpoly(big)), FactorizationIncomplete);
}
