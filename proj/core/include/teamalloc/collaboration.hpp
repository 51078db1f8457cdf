#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "teamalloc/allocation.hpp"

namespace teamalloc {

/// Objective-improvement thresholds: a plan is accepted only if it raises the
/// global objective by more than the tolerance.
inline constexpr double kAnalyticObjectiveTolerance = 1e-9;
inline constexpr double kCoverageObjectiveTolerance = 1e-6;

struct CollaborationOptions {
  int min_team_size = 1;
  double objective_tolerance = kAnalyticObjectiveTolerance;
  /// Maximum number of steps evaluated, counting the final rejected one that
  /// detects convergence; 0 selects N * m + 1.
  int iteration_limit = 0;
  /// Recorded in the trace only; the core loop itself draws no random numbers.
  std::uint64_t seed = 0;
  /// Called by run_collaboration after every step, once evaluators have been committed.
  std::function<void(const struct StepRecord&)> on_step;
};

/// One pass of filtering, bidding, planning and gating.
struct StepRecord {
  int iteration = 0;  // 1-based
  double objective_before = 0.0;
  double objective_candidate = 0.0;  // objective if the plan were executed
  FilteredGraph filtered;
  CollaborationPlan plan;
  bool accepted = false;
  Allocation allocation;  // state after the step (unchanged when rejected)
};

struct StepResult {
  Allocation allocation;
  StepRecord record;
  bool accepted = false;
};

/// Evaluates the whole plan all-or-nothing. On acceptance each team whose count
/// changed is notified through MissionEvaluator::commit.
StepResult collaboration_step(std::span<const TeamSpec> teams, const TeamGraph& graph,
                              const Allocation& alloc, const CollaborationOptions& options,
                              int iteration = 1);

enum class Termination {
  no_transfers,    // filtered graph (hence plan) empty
  no_improvement,  // plan did not clear the objective tolerance
  iteration_limit,
};

std::string_view to_string(Termination t);

struct RunTrace {
  Allocation initial;
  double initial_objective = 0.0;
  std::vector<StepRecord> steps;  // every step, including the final rejected one
  Allocation final_allocation;
  double final_objective = 0.0;
  Termination termination = Termination::no_transfers;
  std::uint64_t seed = 0;

  bool converged() const { return termination != Termination::iteration_limit; }
  int accepted_steps() const;
  /// Objective after the initial state and each accepted step.
  std::vector<double> objective_history() const;
};

/// Repeats collaboration_step until a step is rejected or the iteration limit
/// is reached. Validates teams and the initial allocation first.
RunTrace run_collaboration(std::span<const TeamSpec> teams, const TeamGraph& graph,
                           const Allocation& initial, const CollaborationOptions& options = {});

/// Throws InvariantBreach if agents were not conserved or the accepted
/// objective sequence is not strictly increasing.
void check_trace_invariants(const RunTrace& trace);

}  // namespace teamalloc
