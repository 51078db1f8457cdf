#include <gtest/gtest.h>

#include <map>

#include "teamalloc/collaboration.hpp"
#include "teamalloc/harness.hpp"
#include "teamalloc/oracle.hpp"
#include "teamalloc/random.hpp"

using namespace teamalloc;

namespace {

Allocation random_allocation(Rng& rng, int m, int total, int min) {
  std::vector<int> c(static_cast<std::size_t>(m), min);
  for (int left = total - m * min; left > 0; --left) ++c[static_cast<std::size_t>(uniform_int(rng, 0, m - 1))];
  return Allocation(c);
}

TeamGraph random_connected_graph(Rng& rng, int m) {
  std::vector<std::pair<int, int>> edges;
  for (int k = 2; k <= m; ++k) edges.emplace_back(static_cast<int>(uniform_int(rng, 1, k - 1)), k);
  for (int a = 1; a <= m; ++a) {
    for (int b = a + 1; b <= m; ++b) {
      if (uniform01(rng) < 0.3) edges.emplace_back(a, b);
    }
  }
  return TeamGraph(m, edges);
}

// Independent restatement of the mutual-agreement rule.
CollaborationPlan reference_plan(const FilteredGraph& f) {
  std::map<int, FilteredEdge> best_out;
  std::map<int, FilteredEdge> best_in;
  for (const FilteredEdge& e : f.edges()) {
    auto o = best_out.find(e.donor);
    if (o == best_out.end() || e.net_gain > o->second.net_gain ||
        (e.net_gain == o->second.net_gain && e.recipient < o->second.recipient)) {
      best_out[e.donor] = e;
    }
    auto i = best_in.find(e.recipient);
    if (i == best_in.end() || e.net_gain > i->second.net_gain ||
        (e.net_gain == i->second.net_gain && e.donor < i->second.donor)) {
      best_in[e.recipient] = e;
    }
  }
  CollaborationPlan p;
  for (const auto& [donor, e] : best_out) {
    if (best_in.at(e.recipient).donor == donor) p.transfers.push_back({donor, e.recipient});
  }
  return p;
}

}  // namespace

TEST(Properties, HamiltonRuleNeverHoldsBothWays) {
  Rng rng = make_rng(11);
  for (int trial = 0; trial < 10'000; ++trial) {
    const auto teams = oracle::random_teams(rng, 2, 51);
    const int ni = static_cast<int>(uniform_int(rng, 1, 50));
    const int nj = static_cast<int>(uniform_int(rng, 1, 50));
    const bool ij = hamilton_allows(teams[0], ni, teams[1], nj, 0);
    const bool ji = hamilton_allows(teams[1], nj, teams[0], ni, 0);
    ASSERT_FALSE(ij && ji) << "trial " << trial << " counts " << ni << "," << nj;
  }
}

TEST(Properties, BenefitNeverExceedsCostForRandomEvaluators) {
  Rng rng = make_rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const EvaluatorPtr ev = oracle::random_concave_evaluator(rng, 60);
    for (int n = 1; n < 60; ++n) {
      ASSERT_LE(marginal_benefit(*ev, n), marginal_cost(*ev, n)) << ev->describe() << " n=" << n;
    }
    ASSERT_TRUE(validate_diminishing_returns(*ev, 60, 0.0, 0).ok()) << ev->describe();
  }
}

TEST(Properties, FilteredGraphAndPlanStructure) {
  Rng rng = make_rng(13);
  for (int trial = 0; trial < 2'000; ++trial) {
    const int m = static_cast<int>(uniform_int(rng, 2, 6));
    const int min = static_cast<int>(uniform_int(rng, 0, 1));
    const int total = static_cast<int>(uniform_int(rng, m * min, 30));
    const auto teams = oracle::random_teams(rng, m, total + 1);
    const TeamGraph g = uniform01(rng) < 0.5 ? TeamGraph::complete(m) : random_connected_graph(rng, m);
    const Allocation a = random_allocation(rng, m, total, min);
    const FilteredGraph f = filter_graph(g, teams, a, min);
    for (const FilteredEdge& e : f.edges()) {
      ASSERT_TRUE(g.has_edge(e.donor, e.recipient));
      ASSERT_EQ(f.find(e.recipient, e.donor), nullptr);
      ASSERT_GT(e.net_gain, 0.0);
      ASSERT_GT(a.count(e.donor), min);
    }
    const CollaborationPlan p = build_plan(f);
    ASSERT_EQ(p, reference_plan(f));
    ASSERT_EQ(p.empty(), f.empty());
    std::map<int, int> out_deg, in_deg;
    for (const Transfer& t : p.transfers) {
      ASSERT_LE(++out_deg[t.donor], 1);
      ASSERT_LE(++in_deg[t.recipient], 1);
    }
    if (!p.empty()) {
      const Allocation next = apply_plan(a, p, min);
      ASSERT_EQ(next.total(), a.total());
      ASSERT_GT(global_objective(teams, next), global_objective(teams, a));
    }
  }
}

TEST(Properties, RunsConserveAgentsAndClimb) {
  Rng rng = make_rng(14);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = static_cast<int>(uniform_int(rng, 2, 5));
    const int total = static_cast<int>(uniform_int(rng, m, 14));
    const auto teams = oracle::random_teams(rng, m, total + 1);
    const TeamGraph g = uniform01(rng) < 0.5 ? TeamGraph::complete(m) : random_connected_graph(rng, m);
    const Allocation start = random_allocation(rng, m, total, 1);
    const RunTrace tr = run_collaboration(teams, g, start);
    ASSERT_TRUE(tr.converged());
    ASSERT_NO_THROW(check_trace_invariants(tr));
    ASSERT_LE(tr.steps.size(), (oracle::AllocationSpace{m, total, 1}.size()));
    for (const StepRecord& s : tr.steps) ASSERT_EQ(s.allocation.total(), total);
  }
}

TEST(Properties, CompleteGraphRunsReachTheOracleOptimum) {
  Rng rng = make_rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const int total = static_cast<int>(uniform_int(rng, 3, 8));
    const auto teams = oracle::random_teams(rng, 3, total + 1);
    const oracle::AllocationSpace space{3, total, 1};
    const double best = oracle::brute_force_optimal(teams, space).value;
    oracle::for_each_allocation(space, [&](std::span<const int> counts) {
      const Allocation start(std::vector<int>(counts.begin(), counts.end()));
      const RunTrace tr = run_collaboration(teams, TeamGraph::complete(3), start);
      EXPECT_NEAR(tr.final_objective, best, 1e-12) << "trial " << trial;
      return !::testing::Test::HasFailure();
    });
    ASSERT_FALSE(::testing::Test::HasFailure());
  }
}

TEST(Properties, RunsAreDeterministic) {
  Rng rng = make_rng(16);
  for (int trial = 0; trial < 50; ++trial) {
    const auto teams = oracle::random_teams(rng, 4, 21);
    const Allocation start = random_allocation(rng, 4, 20, 1);
    const RunTrace a = run_collaboration(teams, TeamGraph::complete(4), start);
    const RunTrace b = run_collaboration(teams, TeamGraph::complete(4), start);
    ASSERT_EQ(a.steps.size(), b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
      ASSERT_EQ(a.steps[i].plan, b.steps[i].plan);
      ASSERT_EQ(a.steps[i].objective_candidate, b.steps[i].objective_candidate);
    }
    ASSERT_EQ(a.final_allocation, b.final_allocation);
  }
}
