#include <gtest/gtest.h>

#include "helpers.hpp"
#include "sphan/fano_invariant.hpp"

using namespace testing_support;

namespace {

ColoredSkeleton rank1Skeleton() {
  return {1, RationalCone::fromInequalities(1, pts({{-1}})), {{"D", pt({1}), 1}}};
}

// 𝒱 = {y ≥ 0} with two colors below the axis.
ColoredSkeleton rank2Skeleton() {
  return {2, RationalCone::fromInequalities(2, pts({{0, 1}})), {{"D", pt({1, -1}), 1}, {"E", pt({-1, -1}), 2}}};
}

void expectToricWitness(const FanoSearchResult& r) {
  ASSERT_TRUE(r.bestMld);
  ASSERT_TRUE(r.fanWitness);
  ASSERT_TRUE(isComplete(*r.fanWitness));
  ASSERT_TRUE(isFano(*r.fanWitness).isFano);
  EXPECT_EQ(mldOfFanoCompactification(*r.fanWitness), *r.bestMld);
  EXPECT_LE(*r.bestMld, 2);
  EXPECT_GT(*r.bestMld, 0);
}

void expectColoredWitness(const FanoSearchResult& r) {
  ASSERT_TRUE(r.bestMld);
  ASSERT_TRUE(r.coloredWitness);
  const ColoredFan& cf = *r.coloredWitness;
  ASSERT_TRUE(validateColoredFan(cf).valid());
  ASSERT_TRUE(isCompleteColored(cf));
  FanoBodies b = fanoBodies(cf);
  EXPECT_EQ(coloredMld(cf, b, MldVariant::Exceptional), *r.bestMld);
  EXPECT_EQ(mldOfFanoCompactification(cf), *r.bestMld);
}

}  // namespace

TEST(ToricSearch, RankTwoHeightOne) {
  FanoSearchResult r = fanoInvariantSearch(2, 1);
  expectToricWitness(r);
  EXPECT_EQ(*r.bestMld, 2);
  EXPECT_TRUE(r.optimal);
}

TEST(ToricSearch, RankOneHeightOne) {
  FanoSearchResult r = fanoInvariantSearch(1, 1);
  expectToricWitness(r);
  EXPECT_EQ(*r.bestMld, 2);
  EXPECT_EQ(r.fanWitness->rays(), pts({{-1}, {1}}));
}

TEST(ToricSearch, RankThreeHeightOne) {
  FanoSearchResult r = fanoInvariantSearch(3, 1);
  expectToricWitness(r);
  EXPECT_EQ(*r.bestMld, 2);
}

TEST(ToricSearch, HeightZeroFindsNothing) {
  FanoSearchResult r = fanoInvariantSearch(2, 0);
  EXPECT_FALSE(r.bestMld);
  EXPECT_FALSE(r.fanWitness);
  EXPECT_TRUE(r.exhaustive);
}

TEST(ToricSearch, RankTooLarge) {
  EXPECT_EQ(errorKindOf([] { fanoInvariantSearch(4, 1); }), ErrorKind::RankTooLarge);
}

TEST(ToricSearch, SmoothPolygonInBoxGivesTwo) {
  // hull{(1,0),(0,1),(−1,−1)} is smooth and lies in every box of height ≥ 1
  for (int h = 1; h <= 3; ++h) EXPECT_EQ(*fanoInvariantSearch(2, h).bestMld, 2);
}

TEST(ToricSearch, ParallelSearchAgrees) {
  FanoSearchResult a = fanoInvariantSearch(2, 2, 1);
  FanoSearchResult b = fanoInvariantSearch(2, 2, 4);
  EXPECT_EQ(a.bestMld, b.bestMld);
  ASSERT_TRUE(a.fanWitness && b.fanWitness);
  EXPECT_EQ(a.fanWitness->rays(), b.fanWitness->rays());
  EXPECT_EQ(a.fanWitness->cones(), b.fanWitness->cones());
}

TEST(MldOfCompactification, Examples) {
  EXPECT_EQ(mldOfFanoCompactification(p2Fan()), 2);
  Polytope p112 = hull({{1, 0}, {0, 1}, {-1, -2}});
  oracle::Polygon poly{{1, 0}, {0, 1}, {-1, -2}};
  Rational expected(oracle::exceptionalMld(oracle::convexHull(poly)));
  EXPECT_EQ(expected, 1);
  EXPECT_EQ(mldOfFanoCompactification(faceFan(p112)), expected);
  EXPECT_EQ(mldOfFanoCompactification(faceFan(hull({{1}, {-1}}))), 2);
  EXPECT_EQ(errorKindOf([] { mldOfFanoCompactification(completeFan(pts({{1, 0}, {2, 1}, {1, 1}, {0, 1}, {-1, -1}}))); }),
            ErrorKind::NotFano);
}

TEST(MldOfCompactification, ColoredFixture) {
  ColoredFan cf(1, RationalCone::fromInequalities(1, pts({{-1}})), {{"D", pt({1}), 1}}, {{pts({{-1}}), {}}});
  EXPECT_EQ(mldOfFanoCompactification(cf), 2);
  ColoredFan notFano(1, RationalCone::fromInequalities(1, pts({{-1}})), {{"D", pt({-1}), 1}, {"E", pt({1}), 1}},
                     {{pts({{-1}}), {}}});
  EXPECT_EQ(errorKindOf([&] { mldOfFanoCompactification(notFano); }), ErrorKind::NotFano);
}

TEST(ColoredSearch, RankOneSkeleton) {
  // Over 𝒱 = {x ≤ 0} the only primitive 𝒱-point is −1. Adding D to ⟨−1⟩
  // gives the whole line, and ⟨ρ(D)⟩ alone misses the interior of 𝒱, so
  // ⟨−1⟩ is the only colored fan; it has no exceptional points.
  FanoSearchResult r = fanoInvariantSearch(rank1Skeleton(), 2);
  expectColoredWitness(r);
  EXPECT_EQ(*r.bestMld, 2);
  EXPECT_EQ(r.coloredWitness->cones().size(), 1u);
  EXPECT_EQ(r.coloredWitness->cones()[0].generators, pts({{-1}}));
}

TEST(ColoredSearch, RankOneHeightZero) {
  FanoSearchResult r = fanoInvariantSearch(rank1Skeleton(), 0);
  EXPECT_FALSE(r.bestMld);
}

TEST(ColoredSearch, RankTwoSkeletonMonotone) {
  std::optional<Rational> previous;
  for (int h = 1; h <= 2; ++h) {
    FanoSearchResult r = fanoInvariantSearch(rank2Skeleton(), h);
    if (r.bestMld) expectColoredWitness(r);
    if (previous) {
      ASSERT_TRUE(r.bestMld);
      EXPECT_GE(*r.bestMld, *previous);
    }
    previous = r.bestMld;
  }
  EXPECT_TRUE(previous);
}

TEST(ColoredSearch, ToricSkeletonMatchesToricSearch) {
  ColoredSkeleton whole{2, RationalCone::wholeSpace(2), {}};
  FanoSearchResult colored = fanoInvariantSearch(whole, 1);
  expectColoredWitness(colored);
  EXPECT_EQ(colored.bestMld, fanoInvariantSearch(2, 1).bestMld);
}

TEST(ColoredSearch, RankTooLarge) {
  ColoredSkeleton s{3, RationalCone::wholeSpace(3), {}};
  EXPECT_EQ(errorKindOf([&] { fanoInvariantSearch(s, 1); }), ErrorKind::RankTooLarge);
}
