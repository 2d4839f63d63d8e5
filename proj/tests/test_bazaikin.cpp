#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pcurv13/bazaikin.hpp"

namespace {

using namespace pcurv13::bazaikin;
using oracle::e3_by_expansion;
using oracle::free_by_permutations;
using oracle::mod_p_by_cochains;

QTuple random_tuple(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return QTuple(d(rng), d(rng), d(rng), d(rng), d(rng));
}

TEST(BazaikinFreeness, FifteenCombinationsMatchAllPermutations) {
  std::mt19937_64 rng(20240607);
  int agree = 0, free_count = 0;
  for (int i = 0; i < 5000; ++i) {
    const QTuple q = random_tuple(rng, -15, 15);
    const bool fast = check_free(q).verdict;
    EXPECT_EQ(fast, free_by_permutations(q)) << q[0] << "," << q[1] << "," << q[2] << "," << q[3] << "," << q[4];
    agree += fast == free_by_permutations(q);
    free_count += fast;
  }
  EXPECT_EQ(agree, 5000);
  EXPECT_GT(free_count, 0);
}

TEST(BazaikinFreeness, OddOnlySamplesHitBothVerdicts) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-8, 7);
  int yes = 0, no = 0;
  for (int i = 0; i < 3000; ++i) {
    const QTuple q(2 * d(rng) + 1, 2 * d(rng) + 1, 2 * d(rng) + 1, 2 * d(rng) + 1, 2 * d(rng) + 1);
    const bool v = check_free(q).verdict;
    ASSERT_EQ(v, free_by_permutations(q));
    (v ? yes : no)++;
  }
  EXPECT_GT(yes, 100);
  EXPECT_GT(no, 100);
}

TEST(BazaikinFreeness, FifteenDistinctCombinations) {
  const auto& combos = disjoint_pair_combinations();
  ASSERT_EQ(combos.size(), 15u);
  std::set<std::set<std::set<int>>> seen;
  for (const auto& [a, b] : combos) {
    std::set<int> all{a.first, a.second, b.first, b.second};
    EXPECT_EQ(all.size(), 4u);
    seen.insert(std::set<std::set<int>>{std::set<int>{a.first, a.second}, std::set<int>{b.first, b.second}});
  }
  EXPECT_EQ(seen.size(), 15u);
}

TEST(BazaikinFreeness, EvenEntryFails) {
  const auto r = check_free(QTuple(1, 1, 1, 1, 2));
  EXPECT_FALSE(r.all_odd);
  EXPECT_FALSE(r.verdict);
}

TEST(BazaikinFreeness, AllOnesIsFree) {
  const auto r = check_free(QTuple(1, 1, 1, 1, 1));
  EXPECT_TRUE(r.verdict);
  EXPECT_TRUE(r.failing_pairs.empty());
}

TEST(BazaikinFreeness, FailingPairsReportTheGcd) {
  // 1+1 = 2 and 3+3 = 6, gcd 2; 1+3 = 4 and 1+3 = 4, gcd 4 fails.
  const auto r = check_free(QTuple(1, 1, 3, 3, 5));
  EXPECT_FALSE(r.verdict);
  ASSERT_FALSE(r.failing_pairs.empty());
  for (const auto& f : r.failing_pairs) EXPECT_NE(f.gcd, 2);
}

TEST(BazaikinCurvature, SignPatterns) {
  EXPECT_EQ(check_curvature(QTuple(1, 1, 1, 1, 1)), Curvature::PositiveAll);
  EXPECT_EQ(check_curvature(QTuple(-1, -1, -1, -1, -1)), Curvature::NegativeAll);
  EXPECT_EQ(check_curvature(QTuple(1, 1, 1, 1, -3)), Curvature::Mixed);
  EXPECT_EQ(check_curvature(QTuple(5, 3, 3, 3, -1)), Curvature::PositiveAll);
  EXPECT_EQ(check_curvature(QTuple(3, 1, 1, 1, -1)), Curvature::Mixed);  // 1 + (-1) = 0
}

TEST(BazaikinCanonical, PermutationAndSignInvariant) {
  const QTuple a(3, -1, 5, 1, 1);
  const QTuple b(-1, -5, 1, -3, -1);  // negated permutation
  EXPECT_EQ(canonicalize(a), canonicalize(b));
  EXPECT_TRUE(is_canonical(canonicalize(a)));
  EXPECT_EQ(canonicalize(a).weights(), (Weights{5, 3, 1, 1, -1}));
  EXPECT_FALSE(is_canonical(a));
}

TEST(BazaikinCanonical, RawWeightsAreKept) {
  const QTuple a(3, -1, 5, 1, 1);
  EXPECT_EQ(a.weights(), (Weights{3, -1, 5, 1, 1}));
  EXPECT_EQ(a.q0(), 9);
}

TEST(BazaikinE3, MatchesPolynomialExpansion) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) {
    const QTuple q = random_tuple(rng, -15, 15);
    ASSERT_EQ(e3(q), e3_by_expansion(q));
  }
}

TEST(BazaikinE3, KnownValues) {
  EXPECT_EQ(e3(QTuple(1, 1, 1, 1, 1)), 10);
  EXPECT_EQ(e3(QTuple(1, 1, 1, 1, -1)), -2);
  const auto h = h6_order(QTuple(1, 1, 1, 1, 1));
  EXPECT_FALSE(h.integral);
  EXPECT_EQ(h.m.str(), "5/4");
}

TEST(BazaikinE3, ExactRationalReduction) {
  EXPECT_EQ(Rational::make(16, 8).str(), "2");
  EXPECT_EQ(Rational::make(-6, 8).str(), "-3/4");
  EXPECT_EQ(Rational::make(6, -8).str(), "-3/4");
  EXPECT_THROW(Rational::make(1, 0), std::domain_error);
}

TEST(BazaikinCohomology, Mod3ProfilesMatchCochainOracle) {
  for (std::int64_t m : {1, 2, 3, 5, 6, 9, 10, 27, 35}) {
    const auto prof = bazaikin_profile(m);
    for (std::int64_t p : {2, 3, 5, 7}) EXPECT_EQ(mod_p_betti(prof, p), mod_p_by_cochains(prof, p)) << m << " " << p;
  }
}

TEST(BazaikinCohomology, Mod3SupportWhenThreeDividesM) {
  const auto b = mod_p_betti(bazaikin_profile(3), 3);
  std::set<int> support;
  for (int k = 0; k <= kTopDegree; ++k)
    if (b[k]) support.insert(k);
  EXPECT_EQ(std::accumulate(b.begin(), b.end(), std::int64_t{0}), 10);
  EXPECT_EQ(support, (std::set<int>{0, 2, 4, 5, 6, 7, 8, 9, 11, 13}));
  EXPECT_EQ(mod3_type(bazaikin_profile(3)), Mod3Type::CP4xS5);
}

TEST(BazaikinCohomology, Mod3SupportWhenThreeDoesNotDivideM) {
  const auto b = mod_p_betti(bazaikin_profile(5), 3);
  std::set<int> support;
  for (int k = 0; k <= kTopDegree; ++k)
    if (b[k]) support.insert(k);
  EXPECT_EQ(std::accumulate(b.begin(), b.end(), std::int64_t{0}), 6);
  EXPECT_EQ(support, (std::set<int>{0, 2, 4, 9, 11, 13}));
  EXPECT_EQ(mod3_type(bazaikin_profile(5)), Mod3Type::CP2xS9);
}

TEST(BazaikinCohomology, IntegralCohomologyRejectsBadInput) {
  EXPECT_THROW(integral_cohomology(QTuple(1, 1, 1, 1, 2)), std::invalid_argument);
  EXPECT_THROW(integral_cohomology(QTuple(1, 1, 1, 1, 1)), std::invalid_argument);  // m = 5/4
  EXPECT_THROW(bazaikin_profile(0), std::invalid_argument);
  EXPECT_THROW(mod_p_betti(bazaikin_profile(3), 4), std::invalid_argument);
}

TEST(BazaikinEnumerate, ResultsAreCanonicalFreeAndPositive) {
  const auto spaces = enumerate_spaces(7);
  ASSERT_FALSE(spaces.empty());
  EXPECT_TRUE(std::is_sorted(spaces.begin(), spaces.end()));
  std::set<Weights> seen;
  for (const auto& q : spaces) {
    EXPECT_TRUE(is_canonical(q));
    EXPECT_TRUE(free_by_permutations(q));
    EXPECT_EQ(check_curvature(q), Curvature::PositiveAll);
    EXPECT_TRUE(seen.insert(q.weights()).second);
  }
}

TEST(BazaikinEnumerate, MatchesBruteForceOverAllTuples) {
  // Brute force over all odd 5-tuples in [-5, 5], canonicalized.
  std::set<Weights> expect;
  const std::vector<std::int64_t> odd{-5, -3, -1, 1, 3, 5};
  for (auto a : odd)
    for (auto b : odd)
      for (auto c : odd)
        for (auto d : odd)
          for (auto e : odd) {
            const QTuple q(a, b, c, d, e);
            if (free_by_permutations(q) && check_curvature(q) == Curvature::PositiveAll) expect.insert(canonicalize(q).weights());
          }
  std::set<Weights> got;
  for (const auto& q : enumerate_spaces(5)) got.insert(q.weights());
  EXPECT_EQ(got, expect);
}

}  // namespace
