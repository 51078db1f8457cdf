#include <gtest/gtest.h>

#include <cmath>

#include "teamalloc/collaboration.hpp"
#include "teamalloc/error.hpp"
#include "test_support.hpp"

using namespace teamalloc;
using teamalloc::test::sqrt_teams;

namespace {

// sqrt evaluator that records every commit it receives.
class CommitSpy final : public MissionEvaluator {
 public:
  double evaluate(int n) const override { return std::sqrt(static_cast<double>(n)); }
  int domain_min() const override { return 0; }
  int domain_max() const override { return 1000; }
  std::string describe() const override { return "spy"; }
  void commit(int n) override { commits.push_back(n); }

  std::vector<int> commits;
};

}  // namespace

TEST(CollaborationStep, ConvergedStateIsRejected) {
  const auto teams = sqrt_teams({1, 1});
  const StepResult r = collaboration_step(teams, TeamGraph::complete(2), Allocation({3, 3}), {});
  EXPECT_FALSE(r.accepted);
  EXPECT_TRUE(r.record.plan.empty());
  EXPECT_EQ(r.allocation, Allocation({3, 3}));
}

TEST(CollaborationStep, AcceptsImprovingTransfer) {
  const auto teams = sqrt_teams({1, 1});
  const StepResult r = collaboration_step(teams, TeamGraph::complete(2), Allocation({9, 1}), {});
  ASSERT_TRUE(r.accepted);
  EXPECT_EQ(r.allocation, Allocation({8, 2}));
  EXPECT_NEAR(r.record.objective_candidate - r.record.objective_before, 0.24264068711928544, 1e-14);
  EXPECT_GT(r.record.objective_candidate, r.record.objective_before);
}

TEST(CollaborationStep, GainBelowToleranceIsRejected) {
  // Linear teams with nearly equal weights: the transfer passes Hamilton's
  // rule but gains only ~1e-12.
  std::vector<TeamSpec> teams{{1, 1.0, test::linear_table(10)}, {2, 1.0 + 1e-12, test::linear_table(10)}};
  const StepResult r = collaboration_step(teams, TeamGraph::complete(2), Allocation({5, 5}), {});
  EXPECT_FALSE(r.record.plan.empty());
  EXPECT_FALSE(r.accepted);
  EXPECT_EQ(r.allocation, Allocation({5, 5}));
}

TEST(CollaborationStep, CommitsOnlyChangedTeamsOnAcceptance) {
  auto a = std::make_shared<CommitSpy>();
  auto b = std::make_shared<CommitSpy>();
  auto c = std::make_shared<CommitSpy>();
  std::vector<TeamSpec> teams{{1, 1.0, a}, {2, 1.0, b}, {3, 1.0, c}};
  const StepResult r = collaboration_step(teams, TeamGraph(3, {{1, 2}}), Allocation({9, 1, 4}), {});
  ASSERT_TRUE(r.accepted);
  EXPECT_EQ(a->commits, std::vector<int>{8});
  EXPECT_EQ(b->commits, std::vector<int>{2});
  EXPECT_TRUE(c->commits.empty());

  const StepResult none = collaboration_step(teams, TeamGraph(3, {{1, 2}}), Allocation({5, 5, 4}), {});
  EXPECT_FALSE(none.accepted);
  EXPECT_EQ(a->commits.size(), 1u);
}

TEST(RunCollaboration, LopsidedStartReachesEvenSplit) {
  const auto teams = sqrt_teams({1, 1, 1});
  const RunTrace tr = run_collaboration(teams, TeamGraph::complete(3), Allocation({4, 1, 1}));
  EXPECT_TRUE(tr.converged());
  EXPECT_EQ(tr.final_allocation, Allocation({2, 2, 2}));
  EXPECT_NEAR(tr.final_objective, 3.0 * std::sqrt(2.0), 1e-14);
  EXPECT_EQ(tr.termination, Termination::no_transfers);
  EXPECT_NO_THROW(check_trace_invariants(tr));
}

TEST(RunCollaboration, OptimalStartTakesNoSteps) {
  const auto teams = sqrt_teams({1, 1, 1});
  const RunTrace tr = run_collaboration(teams, TeamGraph::complete(3), Allocation({2, 2, 2}));
  EXPECT_EQ(tr.accepted_steps(), 0);
  EXPECT_EQ(tr.steps.size(), 1u);
  EXPECT_EQ(tr.final_allocation, Allocation({2, 2, 2}));
}

TEST(RunCollaboration, WeightedPairMatchesOptimum) {
  const auto teams = sqrt_teams({1, 4});
  const RunTrace tr = run_collaboration(teams, TeamGraph::complete(2), Allocation({3, 1}));
  EXPECT_EQ(tr.final_allocation, Allocation({1, 3}));
  EXPECT_NEAR(tr.final_objective, 1.0 + 4.0 * std::sqrt(3.0), 1e-14);
}

TEST(RunCollaboration, SingleTeamIsTrivial) {
  std::vector<TeamSpec> one{{1, 2.0, make_analytic(AnalyticKind::sqrt)}};
  const RunTrace tr = run_collaboration(one, TeamGraph::complete(1), Allocation({9}));
  EXPECT_EQ(tr.final_allocation, Allocation({9}));
  EXPECT_DOUBLE_EQ(tr.final_objective, 6.0);
}

TEST(RunCollaboration, IterationLimitStopsEarly) {
  const auto teams = sqrt_teams({1, 1, 1});
  CollaborationOptions opts;
  opts.iteration_limit = 1;
  const RunTrace tr = run_collaboration(teams, TeamGraph::complete(3), Allocation({4, 1, 1}), opts);
  EXPECT_FALSE(tr.converged());
  EXPECT_EQ(tr.termination, Termination::iteration_limit);
  EXPECT_EQ(tr.final_allocation, Allocation({3, 2, 1}));
}

TEST(RunCollaboration, ToleranceStopReportsNoImprovement) {
  std::vector<TeamSpec> teams{{1, 1.0, test::linear_table(10)}, {2, 1.0 + 1e-12, test::linear_table(10)}};
  const RunTrace tr = run_collaboration(teams, TeamGraph::complete(2), Allocation({5, 5}));
  EXPECT_EQ(tr.termination, Termination::no_improvement);
  EXPECT_TRUE(tr.converged());
}

TEST(RunCollaboration, ObserverSeesEveryStep) {
  const auto teams = sqrt_teams({1, 1, 1});
  CollaborationOptions opts;
  std::vector<int> seen;
  opts.on_step = [&](const StepRecord& s) { seen.push_back(s.iteration); };
  const RunTrace tr = run_collaboration(teams, TeamGraph::complete(3), Allocation({4, 1, 1}), opts);
  ASSERT_EQ(seen.size(), tr.steps.size());
  for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], static_cast<int>(i) + 1);
}

TEST(RunCollaboration, RejectsInvalidInputs) {
  const auto teams = sqrt_teams({1, 1});
  EXPECT_THROW(run_collaboration(teams, TeamGraph::complete(3), Allocation({3, 3})),
               std::invalid_argument);
  EXPECT_THROW(run_collaboration(teams, TeamGraph::complete(2), Allocation({0, 6})),
               std::invalid_argument);
  EXPECT_THROW(run_collaboration(teams, TeamGraph::complete(2), Allocation({3, 3, 1})),
               std::invalid_argument);
}

TEST(RunCollaboration, ObjectiveHistoryStrictlyIncreases) {
  const auto teams = sqrt_teams({1, 2, 3, 4});
  const RunTrace tr = run_collaboration(teams, TeamGraph::complete(4), Allocation({9, 1, 1, 1}));
  const auto h = tr.objective_history();
  ASSERT_GE(h.size(), 2u);
  for (std::size_t i = 1; i < h.size(); ++i) EXPECT_GT(h[i], h[i - 1]);
  EXPECT_EQ(h.back(), tr.final_objective);
}

TEST(TraceInvariants, DetectsLostAgent) {
  const auto teams = sqrt_teams({1, 1, 1});
  RunTrace tr = run_collaboration(teams, TeamGraph::complete(3), Allocation({4, 1, 1}));
  tr.steps[0].allocation = Allocation({3, 1, 1});
  EXPECT_THROW(check_trace_invariants(tr), InvariantBreach);
}

TEST(TraceInvariants, DetectsObjectiveDrop) {
  const auto teams = sqrt_teams({1, 1, 1});
  RunTrace tr = run_collaboration(teams, TeamGraph::complete(3), Allocation({4, 1, 1}));
  tr.steps[1].objective_candidate = tr.initial_objective;
  EXPECT_THROW(check_trace_invariants(tr), InvariantBreach);
}

TEST(Termination, Names) {
  EXPECT_EQ(to_string(Termination::no_transfers), "no_transfers");
  EXPECT_EQ(to_string(Termination::no_improvement), "no_improvement");
  EXPECT_EQ(to_string(Termination::iteration_limit), "iteration_limit");
}
