#include <gtest/gtest.h>

#include <cmath>

#include "teamalloc/allocation.hpp"
#include "teamalloc/error.hpp"
#include "test_support.hpp"

using namespace teamalloc;
using teamalloc::test::sqrt_teams;

namespace {

const auto kSqrt = make_analytic(AnalyticKind::sqrt);
const auto kLog1p = make_analytic(AnalyticKind::log1p);

}  // namespace

TEST(Marginals, SqrtBenefitAtOne) {
  EXPECT_NEAR(marginal_benefit(*kSqrt, 1), 0.41421356237309515, 1e-15);
  EXPECT_NEAR(marginal_benefit(*kSqrt, 1), std::sqrt(2.0) - 1.0, 1e-15);
}

TEST(Marginals, SqrtCostAtNine) {
  EXPECT_NEAR(marginal_cost(*kSqrt, 9), 0.1715728752538097, 1e-15);
  EXPECT_NEAR(marginal_cost(*kSqrt, 9), 3.0 - std::sqrt(8.0), 1e-15);
}

TEST(Marginals, Log1p) {
  EXPECT_NEAR(marginal_benefit(*kLog1p, 3), 0.22314355131420976, 1e-15);
  EXPECT_NEAR(marginal_cost(*kLog1p, 1), 0.6931471805599453, 1e-15);
}

TEST(Marginals, LinearIsOne) {
  const auto lin = test::linear_table(10);
  EXPECT_EQ(marginal_benefit(*lin, 5), 1.0);
  EXPECT_EQ(marginal_cost(*lin, 5), 1.0);
}

TEST(Marginals, CostAtZeroThrows) {
  EXPECT_THROW(marginal_cost(*kSqrt, 0), std::invalid_argument);
}

TEST(Marginals, BenefitNeverExceedsCost) {
  for (const auto& ev : {kSqrt, kLog1p, make_analytic(AnalyticKind::saturating_exp, {1.0, 4.0})}) {
    for (int n = 1; n < std::min(ev->domain_max(), 500); ++n) {
      EXPECT_LE(marginal_benefit(*ev, n), marginal_cost(*ev, n)) << ev->describe() << " n=" << n;
    }
  }
}

TEST(HamiltonRule, LargeDonorToSmallRecipient) {
  const auto teams = sqrt_teams({1, 1});
  EXPECT_TRUE(hamilton_allows(teams[0], 9, teams[1], 1));
}

TEST(HamiltonRule, SwappedRolesRejected) {
  const auto teams = sqrt_teams({1, 1});
  // A single-agent donor is only legal when teams may be emptied.
  EXPECT_FALSE(hamilton_allows(teams[0], 1, teams[1], 9, 0));
  EXPECT_FALSE(hamilton_allows(teams[0], 2, teams[1], 9));
}

TEST(HamiltonRule, IdenticalTeamsRejected) {
  const auto teams = sqrt_teams({1, 1});
  for (int n = 2; n < 30; ++n) EXPECT_FALSE(hamilton_allows(teams[0], n, teams[1], n));
}

TEST(HamiltonRule, WeightTipsTheBalance) {
  // Equal counts: only a heavier recipient makes the transfer pay.
  const auto teams = sqrt_teams({1, 3});
  EXPECT_TRUE(hamilton_allows(teams[0], 4, teams[1], 4));
  EXPECT_FALSE(hamilton_allows(teams[1], 4, teams[0], 4));
}

TEST(HamiltonRule, DonorAtMinimumIsAContractViolation) {
  const auto teams = sqrt_teams({1, 1});
  EXPECT_THROW(hamilton_allows(teams[0], 1, teams[1], 1), ContractViolation);
  EXPECT_NO_THROW(hamilton_allows(teams[0], 1, teams[1], 1, 0));
}

TEST(TeamGraph, NormalizesEdges) {
  const TeamGraph g(3, {{2, 1}, {1, 2}, {3, 2}});
  ASSERT_EQ(g.edges().size(), 2u);
  EXPECT_TRUE(g.has_edge(1, 2));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(1, 3));
  EXPECT_FALSE(g.is_complete());
  EXPECT_TRUE(TeamGraph::complete(4).is_complete());
  EXPECT_EQ(TeamGraph::complete(4).edges().size(), 6u);
}

TEST(TeamGraph, RejectsBadEdges) {
  EXPECT_THROW(TeamGraph(3, {{1, 1}}), std::invalid_argument);
  EXPECT_THROW(TeamGraph(3, {{1, 4}}), std::invalid_argument);
}

TEST(Allocation, RejectsNegativeCounts) {
  EXPECT_THROW(Allocation({3, -1}), std::invalid_argument);
  EXPECT_EQ(Allocation({3, 1, 2}).total(), 6);
  EXPECT_EQ(Allocation({3, 1, 2}).count(2), 1);
}

TEST(ValidateTeams, EnforcesIdsWeightsAndEvaluators) {
  auto teams = sqrt_teams({1, 1});
  EXPECT_NO_THROW(validate_teams(teams));
  teams[1].id = 3;
  EXPECT_THROW(validate_teams(teams), std::invalid_argument);
  teams = sqrt_teams({1, 0});
  EXPECT_THROW(validate_teams(teams), std::invalid_argument);
  teams = sqrt_teams({1, 1});
  teams[0].evaluator = nullptr;
  EXPECT_THROW(validate_teams(teams), std::invalid_argument);
}

TEST(FilterGraph, IdenticalTeamsGiveEmptyGraph) {
  const auto teams = sqrt_teams({1, 1});
  EXPECT_TRUE(filter_graph(TeamGraph::complete(2), teams, Allocation({5, 5})).empty());
}

TEST(FilterGraph, PathGraphPointsIntoTheSmallTeam) {
  const auto teams = sqrt_teams({1, 1, 1});
  const FilteredGraph f = filter_graph(TeamGraph(3, {{1, 2}, {2, 3}}), teams, Allocation({9, 1, 9}));
  ASSERT_EQ(f.edges().size(), 2u);
  EXPECT_EQ(f.edges()[0].donor, 1);
  EXPECT_EQ(f.edges()[0].recipient, 2);
  EXPECT_EQ(f.edges()[1].donor, 3);
  EXPECT_EQ(f.edges()[1].recipient, 2);
  EXPECT_NEAR(f.edges()[0].benefit, std::sqrt(2.0) - 1.0, 1e-15);
  EXPECT_NEAR(f.edges()[0].cost, 3.0 - std::sqrt(8.0), 1e-15);
  EXPECT_NEAR(f.edges()[0].net_gain, 0.24264068711928544, 1e-15);
}

TEST(FilterGraph, OnlyGraphEdgesAreConsidered) {
  const auto teams = sqrt_teams({1, 1, 1});
  const FilteredGraph f = filter_graph(TeamGraph(3, {{1, 2}}), teams, Allocation({1, 1, 9}));
  EXPECT_TRUE(f.empty());
}

TEST(FilterGraph, MinimumSizeTeamsNeverDonate) {
  const auto teams = sqrt_teams({1, 5});
  const FilteredGraph f = filter_graph(TeamGraph::complete(2), teams, Allocation({1, 1}));
  EXPECT_TRUE(f.empty());
  const FilteredGraph f0 = filter_graph(TeamGraph::complete(2), teams, Allocation({1, 1}), 0);
  ASSERT_EQ(f0.edges().size(), 1u);
  EXPECT_EQ(f0.edges()[0].donor, 1);
}

TEST(Bids, NetGainOfTransfer) {
  const auto teams = sqrt_teams({1, 1});
  const Allocation a({9, 1});
  const FilteredGraph f = filter_graph(TeamGraph::complete(2), teams, a);
  EXPECT_NEAR(outgoing_bid(teams, a, f, 1, 2), 0.24264068711928544, 1e-15);
  EXPECT_NEAR(incoming_bid(teams, a, f, 1, 2), 0.24264068711928544, 1e-15);
  EXPECT_EQ(outgoing_bid(teams, a, f, 1, 2), incoming_bid(teams, a, f, 1, 2));
}

TEST(Bids, HeavierRecipientBidsMore) {
  const auto teams = sqrt_teams({1, 2});
  const Allocation a({9, 1});
  const FilteredGraph f = filter_graph(TeamGraph::complete(2), teams, a);
  EXPECT_NEAR(outgoing_bid(teams, a, f, 1, 2), 0.6568542494923806, 1e-15);
  EXPECT_NEAR(outgoing_bid(teams, a, f, 1, 2), 2.0 * (std::sqrt(2.0) - 1.0) - (3.0 - std::sqrt(8.0)),
              1e-15);
}

TEST(Bids, AbsentEdgeIsAContractViolation) {
  const auto teams = sqrt_teams({1, 1});
  const Allocation a({9, 1});
  const FilteredGraph f = filter_graph(TeamGraph::complete(2), teams, a);
  EXPECT_THROW(outgoing_bid(teams, a, f, 2, 1), ContractViolation);
  EXPECT_THROW(incoming_bid(teams, a, f, 2, 1), ContractViolation);
}

TEST(Bids, PositiveOnEveryFilteredEdge) {
  const auto teams = sqrt_teams({1, 2, 0.5, 4});
  const Allocation a({7, 1, 9, 3});
  const FilteredGraph f = filter_graph(TeamGraph::complete(4), teams, a);
  ASSERT_FALSE(f.empty());
  for (const FilteredEdge& e : f.edges()) {
    EXPECT_GT(e.net_gain, 0.0);
    EXPECT_GT(outgoing_bid(teams, a, f, e.donor, e.recipient), 0.0);
  }
}

TEST(Selection, SingleCandidate) {
  const std::vector<Bid> one{{3, 0.2}};
  EXPECT_EQ(select_outgoing(one), 3);
  EXPECT_EQ(select_incoming(one), 3);
  EXPECT_FALSE(select_outgoing(std::vector<Bid>{}).has_value());
}

TEST(Selection, StrictArgmax) {
  EXPECT_EQ(select_outgoing(std::vector<Bid>{{2, 0.1}, {3, 0.3}}), 3);
  EXPECT_EQ(select_incoming(std::vector<Bid>{{1, 0.5}, {4, 0.2}}), 1);
}

TEST(Selection, TiesGoToLowestId) {
  EXPECT_EQ(select_outgoing(std::vector<Bid>{{3, 0.3}, {2, 0.3}}), 2);
  EXPECT_EQ(select_incoming(std::vector<Bid>{{4, 0.5}, {1, 0.5}}), 1);
}

TEST(BuildPlan, SingleEdge) {
  const FilteredGraph f(2, {{1, 2, 0.4, 0.1, 0.3}});
  const CollaborationPlan p = build_plan(f);
  ASSERT_EQ(p.transfers.size(), 1u);
  EXPECT_EQ(p.transfers[0], (Transfer{1, 2}));
}

TEST(BuildPlan, EmptyGraphEmptyPlan) {
  EXPECT_TRUE(build_plan(FilteredGraph(3, {})).empty());
}

TEST(BuildPlan, StarKeepsOnlyTheMutualChoice) {
  const auto teams = sqrt_teams({1, 1, 1, 1});
  const Allocation a({9, 9, 9, 1});
  const FilteredGraph f = filter_graph(TeamGraph(4, {{1, 4}, {2, 4}, {3, 4}}), teams, a);
  EXPECT_EQ(f.edges().size(), 3u);
  const CollaborationPlan p = build_plan(f);
  ASSERT_EQ(p.transfers.size(), 1u);
  EXPECT_EQ(p.transfers[0], (Transfer{1, 4}));
}

TEST(BuildPlan, ChainedTransfersCanCoexist) {
  // 1 -> 2 and 2 -> 3 are each mutual best choices.
  const FilteredGraph f(3, {{1, 2, 1.0, 0.1, 0.9}, {2, 3, 1.0, 0.5, 0.5}});
  const CollaborationPlan p = build_plan(f);
  ASSERT_EQ(p.transfers.size(), 2u);
  EXPECT_EQ(p.transfers[0], (Transfer{1, 2}));
  EXPECT_EQ(p.transfers[1], (Transfer{2, 3}));
}

TEST(GlobalObjective, EvenSplitOfSix) {
  const auto teams = sqrt_teams({1, 1, 1});
  EXPECT_NEAR(global_objective(teams, Allocation({2, 2, 2})), 4.242640687119286, 1e-14);
  EXPECT_NEAR(global_objective(teams, Allocation({2, 2, 2})), 3.0 * std::sqrt(2.0), 1e-14);
}

TEST(GlobalObjective, SingleTeam) {
  std::vector<TeamSpec> one{{1, 2.5, kLog1p}};
  EXPECT_DOUBLE_EQ(global_objective(one, Allocation({7})), 2.5 * std::log1p(7.0));
}

TEST(ApplyPlan, MovesOneAgentPerTransfer) {
  EXPECT_EQ(apply_plan(Allocation({9, 1}), {{{1, 2}}}), Allocation({8, 2}));
  EXPECT_EQ(apply_plan(Allocation({9, 1}), {}), Allocation({9, 1}));
}

TEST(ApplyPlan, TeamMayGiveAndReceive) {
  EXPECT_EQ(apply_plan(Allocation({5, 5, 6}), {{{1, 2}, {3, 1}}}), Allocation({5, 6, 5}));
}

TEST(ApplyPlan, RejectsDoubleDonationAndDonorAtMinimum) {
  EXPECT_THROW(apply_plan(Allocation({5, 5, 6}), {{{1, 2}, {1, 3}}}), ContractViolation);
  EXPECT_THROW(apply_plan(Allocation({5, 5, 6}), {{{1, 3}, {2, 3}}}), ContractViolation);
  EXPECT_THROW(apply_plan(Allocation({1, 5}), {{{1, 2}}}), ContractViolation);
  EXPECT_NO_THROW(apply_plan(Allocation({1, 5}), {{{1, 2}}}, 0));
}
