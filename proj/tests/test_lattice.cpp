#include <gtest/gtest.h>

#include <numeric>

#include "helpers.hpp"
#include "sphan/errors.hpp"

using namespace testing_support;

namespace {

bool isRowHermite(const IntMatrix& h) {
  std::size_t lastPivot = 0;
  bool first = true;
  bool zeroSeen = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t j = 0;
    while (j < h.cols() && h(i, j) == 0) ++j;
    if (j == h.cols()) {
      zeroSeen = true;
      continue;
    }
    if (zeroSeen) return false;
    if (!first && j <= lastPivot) return false;
    if (h(i, j) <= 0) return false;
    for (std::size_t r = 0; r < i; ++r)
      if (h(r, j) < 0 || h(r, j) >= h(i, j)) return false;
    lastPivot = j;
    first = false;
  }
  return true;
}

}  // namespace

TEST(Hermite, IdentityIsFixed) {
  auto hf = hermiteNormalForm(IntMatrix::identity(2));
  EXPECT_EQ(hf.h, IntMatrix::identity(2));
  EXPECT_EQ(hf.u, IntMatrix::identity(2));
}

TEST(Hermite, TwoByTwoExample) {
  IntMatrix m{{2, 4}, {1, 3}};
  auto hf = hermiteNormalForm(m);
  EXPECT_EQ(hf.u * m, hf.h);
  EXPECT_TRUE(isRowHermite(hf.h));
  EXPECT_EQ(abs(determinant(hf.u)), 1);
  EXPECT_EQ(abs(determinant(hf.h)), 2);
}

TEST(Hermite, ZeroMatrix) {
  IntMatrix z(2, 2);
  auto hf = hermiteNormalForm(z);
  EXPECT_EQ(hf.h, z);
  EXPECT_EQ(hf.u, IntMatrix::identity(2));
}

TEST(Hermite, RandomMatricesSatisfyDefinition) {
  std::mt19937_64 rng(oracle::seed(11));
  std::uniform_int_distribution<long> entry(-9, 9);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    auto hf = hermiteNormalForm(m);
    ASSERT_EQ(hf.u * m, hf.h);
    ASSERT_EQ(abs(determinant(hf.u)), 1);
    ASSERT_TRUE(isRowHermite(hf.h)) << m.toString();
  }
}

TEST(Smith, InvariantFactors) {
  EXPECT_EQ(smithInvariants(IntMatrix{{2, 4}, {1, 3}}), (std::vector<Integer>{1, 2}));
  EXPECT_EQ(smithInvariants(IntMatrix{{2, 0}, {0, 3}}), (std::vector<Integer>{1, 6}));
  EXPECT_EQ(smithInvariants(IntMatrix{{4, 0}, {0, 6}}), (std::vector<Integer>{2, 12}));
}

TEST(Surjective, Examples) {
  EXPECT_TRUE(isSurjectiveLatticeMap(IntMatrix::identity(3)));
  EXPECT_FALSE(isSurjectiveLatticeMap(IntMatrix{{2, 0}}));
  EXPECT_TRUE(isSurjectiveLatticeMap(IntMatrix{{2, 3}}));
}

TEST(Surjective, RowVectorsAgreeWithGcd) {
  std::mt19937_64 rng(oracle::seed(12));
  std::uniform_int_distribution<long> entry(-12, 12);
  for (int t = 0; t < 300; ++t) {
    long a = entry(rng), b = entry(rng), c = entry(rng);
    bool expected = std::gcd(std::gcd(a, b), c) == 1;
    ASSERT_EQ(isSurjectiveLatticeMap(IntMatrix{{a, b, c}}), expected) << a << " " << b << " " << c;
  }
}

TEST(Kernel, IsSaturatedAndAnnihilated) {
  IntMatrix m{{2, 4, 6}};
  auto k = integerKernel(m);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_TRUE(isZero(m.apply(v)));
  EXPECT_EQ(smithInvariants(IntMatrix::fromRows(k, 3)), (std::vector<Integer>{1, 1}));
}

TEST(Unimodular, RejectsNonUnimodular) {
  EXPECT_THROW(UnimodularMap(IntMatrix{{2, 0}, {0, 1}}), Error);
  UnimodularMap g(IntMatrix{{2, 1}, {1, 1}});
  EXPECT_EQ(g.compose(g.inverse()).matrix(), IntMatrix::identity(2));
}

TEST(QuotientMapTest, RejectsNonSurjective) {
  EXPECT_THROW(QuotientMap(IntMatrix{{2, 0}}), Error);
  QuotientMap pi(IntMatrix{{1, 0}});
  ASSERT_EQ(pi.kernelBasis().size(), 1u);
  EXPECT_TRUE(isZero(pi.apply(pi.kernelBasis()[0])));
}

TEST(AutNPi, Examples) {
  QuotientMap pi(IntMatrix{{1, 0}});
  EXPECT_TRUE(autNPiMembership(UnimodularMap::identity(2), pi));
  EXPECT_TRUE(autNPiMembership(UnimodularMap(IntMatrix{{1, 0}, {0, -1}}), pi));
  EXPECT_FALSE(autNPiMembership(UnimodularMap(IntMatrix{{-1, 0}, {0, 1}}), pi));
}

TEST(AutNPi, ClosedUnderCompositionAndInverse) {
  std::mt19937_64 rng(oracle::seed(13));
  std::uniform_int_distribution<long> shear(-5, 5);
  std::uniform_int_distribution<int> sign(0, 1);
  // π = (1,0)·C for a fixed C; members are C⁻¹·[[1,0],[c,±1]]·C.
  UnimodularMap c(IntMatrix{{2, 1}, {1, 1}});
  QuotientMap pi(IntMatrix{{2, 1}});
  auto member = [&] {
    long s = sign(rng) ? 1 : -1;
    return c.compose(UnimodularMap(IntMatrix{{1, 0}, {shear(rng), s}})).compose(c.inverse());
  };
  for (int t = 0; t < 100; ++t) {
    UnimodularMap g1 = member(), g2 = member();
    ASSERT_TRUE(autNPiMembership(g1, pi));
    ASSERT_TRUE(autNPiMembership(g1.compose(g2), pi));
    ASSERT_TRUE(autNPiMembership(g1.inverse(), pi));
  }
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(parseRational("3/6"), q(1, 2));
  EXPECT_EQ(parseRational("-4"), q(-4));
  EXPECT_EQ(ratString(q(2)), "2/1");
  EXPECT_THROW(parseRational("0.5"), Error);
  EXPECT_THROW(parseRational("1/0"), Error);
}

TEST(Solve, IntegralSolutions) {
  auto rows = pts({{1, 0}, {0, 1}});
  EXPECT_EQ(solveIntegral(rows, rpt({1, 2}), 2), pt({1, 2}));
  auto rows2 = pts({{2, 0}});
  EXPECT_FALSE(solveIntegral(rows2, rpt({1}), 2));
  EXPECT_TRUE(solveLinear({rpt({2, 0})}, rpt({1}), 2));
  EXPECT_FALSE(solveLinear({rpt({1, 1}), rpt({2, 2})}, rpt({1, 1}), 2));
}
