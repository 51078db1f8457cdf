#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "teamalloc/error.hpp"
#include "teamalloc/oracle.hpp"
#include "test_support.hpp"

using namespace teamalloc;
using namespace teamalloc::oracle;
using teamalloc::test::sqrt_teams;

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(0, 0), 1u);
  EXPECT_EQ(binomial(3, 4), 0u);
  EXPECT_EQ(binomial(30, 15), 155117520u);
}

TEST(Enumerate, TwoTeamsThreeAgents) {
  const auto all = enumerate_allocations({2, 3, 1});
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0], Allocation({1, 2}));
  EXPECT_EQ(all[1], Allocation({2, 1}));
}

TEST(Enumerate, ThreeTeamsSixAgentsHasTen) {
  const AllocationSpace s{3, 6, 1};
  EXPECT_EQ(enumerate_allocations(s).size(), 10u);
  EXPECT_EQ(s.size(), 10u);
}

TEST(Enumerate, SingleTeam) {
  const auto all = enumerate_allocations({1, 7, 1});
  ASSERT_EQ(all.size(), 1u);
  EXPECT_EQ(all[0], Allocation({7}));
}

TEST(Enumerate, InfeasibleIsEmpty) {
  EXPECT_TRUE(enumerate_allocations({4, 3, 1}).empty());
  EXPECT_EQ(AllocationSpace({4, 3, 1}).size(), 0u);
}

TEST(Enumerate, CountMatchesClosedFormAndIsLexicographic) {
  for (int m = 1; m <= 4; ++m) {
    for (int min = 0; min <= 2; ++min) {
      for (int n = m * min; n <= 10; ++n) {
        const AllocationSpace s{m, n, min};
        const auto all = enumerate_allocations(s);
        ASSERT_EQ(all.size(), s.size()) << m << " " << n << " " << min;
        ASSERT_EQ(all.size(), binomial(n - m * min + m - 1, m - 1));
        std::set<std::vector<int>> unique;
        for (std::size_t i = 0; i < all.size(); ++i) {
          EXPECT_EQ(all[i].total(), n);
          for (int c : all[i].counts()) EXPECT_GE(c, min);
          if (i > 0) EXPECT_LT(all[i - 1], all[i]);
          unique.insert(all[i].counts());
        }
        EXPECT_EQ(unique.size(), all.size());
      }
    }
  }
}

TEST(Enumerate, VisitorCanStopEarly) {
  int seen = 0;
  for_each_allocation({3, 6, 1}, [&](std::span<const int>) { return ++seen < 4; });
  EXPECT_EQ(seen, 4);
}

TEST(BruteForce, EvenSplitOfSix) {
  const auto teams = sqrt_teams({1, 1, 1});
  const OptimalAllocation best = brute_force_optimal(teams, {3, 6, 1});
  EXPECT_EQ(best.allocation, Allocation({2, 2, 2}));
  EXPECT_NEAR(best.value, 4.242640687119286, 1e-14);
}

TEST(BruteForce, WeightedPair) {
  const auto teams = sqrt_teams({1, 4});
  const OptimalAllocation best = brute_force_optimal(teams, {2, 4, 1});
  EXPECT_EQ(best.allocation, Allocation({1, 3}));
  // Candidates: 1 + 4*sqrt3, sqrt2 + 4*sqrt2, sqrt3 + 4.
  EXPECT_NEAR(best.value, 7.928203230275509, 1e-14);
  EXPECT_GT(best.value, 7.0710678118654755);
  EXPECT_GT(best.value, 5.732050807568877);
}

TEST(BruteForce, IdenticalTeamsSplitEvenly) {
  for (int m = 2; m <= 4; ++m) {
    std::vector<double> w(static_cast<std::size_t>(m), 1.5);
    const auto teams = sqrt_teams(w);
    const OptimalAllocation best = brute_force_optimal(teams, {m, 3 * m, 1});
    for (int c : best.allocation.counts()) EXPECT_EQ(c, 3);
  }
}

TEST(BruteForce, TiesResolveToLexicographicallySmallest) {
  // Linear evaluators make every allocation optimal.
  std::vector<TeamSpec> teams{{1, 1.0, test::linear_table(10)}, {2, 1.0, test::linear_table(10)}};
  const OptimalAllocation best = brute_force_optimal(teams, {2, 6, 1});
  EXPECT_EQ(best.allocation, Allocation({1, 5}));
}

TEST(BruteForce, EmptyTeamsAllowedWithZeroMinimum) {
  std::vector<TeamSpec> teams{{1, 1.0, test::linear_table(10)}, {2, 2.0, test::linear_table(10)}};
  const OptimalAllocation best = brute_force_optimal(teams, {2, 6, 0});
  EXPECT_EQ(best.allocation, Allocation({0, 6}));
  EXPECT_EQ(best.value, 12.0);
}

TEST(BruteForce, RefusesLargeSpaces) {
  EXPECT_THROW(brute_force_optimal(sqrt_teams({1, 1}), {2, 21, 1}), OracleLimitExceeded);
  EXPECT_THROW(brute_force_optimal(sqrt_teams({1, 1, 1, 1, 1, 1}), {6, 12, 1}), OracleLimitExceeded);
  EXPECT_NO_THROW(brute_force_optimal(sqrt_teams({1, 1}), {2, 21, 1}, {30, 5}));
}

TEST(BruteForce, RejectsMismatchAndInfeasible) {
  EXPECT_THROW(brute_force_optimal(sqrt_teams({1, 1}), {3, 6, 1}), std::invalid_argument);
  EXPECT_THROW(brute_force_optimal(sqrt_teams({1, 1}), {2, 1, 1}), std::invalid_argument);
}
