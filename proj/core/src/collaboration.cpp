#include "teamalloc/collaboration.hpp"

#include <stdexcept>
#include <string>

#include "teamalloc/error.hpp"

namespace teamalloc {

StepResult collaboration_step(std::span<const TeamSpec> teams, const TeamGraph& graph,
                              const Allocation& alloc, const CollaborationOptions& options,
                              int iteration) {
  StepRecord record;
  record.iteration = iteration;
  record.objective_before = global_objective(teams, alloc);
  record.filtered = filter_graph(graph, teams, alloc, options.min_team_size);
  record.plan = build_plan(record.filtered);
  record.objective_candidate = record.objective_before;

  Allocation next = alloc;
  if (!record.plan.empty()) {
    Allocation candidate = apply_plan(alloc, record.plan, options.min_team_size);
    record.objective_candidate = global_objective(teams, candidate);
    if (record.objective_candidate > record.objective_before + options.objective_tolerance) {
      record.accepted = true;
      next = std::move(candidate);
      for (const TeamSpec& t : teams) {
        if (next.count(t.id) != alloc.count(t.id)) t.evaluator->commit(next.count(t.id));
      }
    }
  }
  record.allocation = next;
  const bool accepted = record.accepted;
  return StepResult{std::move(next), std::move(record), accepted};
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::no_transfers:
      return "no_transfers";
    case Termination::no_improvement:
      return "no_improvement";
    case Termination::iteration_limit:
      return "iteration_limit";
  }
  return "unknown";
}

int RunTrace::accepted_steps() const {
  int n = 0;
  for (const StepRecord& s : steps) n += s.accepted ? 1 : 0;
  return n;
}

std::vector<double> RunTrace::objective_history() const {
  std::vector<double> out{initial_objective};
  for (const StepRecord& s : steps) {
    if (s.accepted) out.push_back(s.objective_candidate);
  }
  return out;
}

RunTrace run_collaboration(std::span<const TeamSpec> teams, const TeamGraph& graph,
                           const Allocation& initial, const CollaborationOptions& options) {
  validate_teams(teams);
  validate_allocation(teams, initial, options.min_team_size);
  if (graph.teams() != static_cast<int>(teams.size())) {
    throw std::invalid_argument("graph has " + std::to_string(graph.teams()) + " nodes for " +
                                std::to_string(teams.size()) + " teams");
  }
  if (options.iteration_limit < 0) throw std::invalid_argument("iteration limit must be >= 0");
  const int limit = options.iteration_limit > 0
                        ? options.iteration_limit
                        : initial.total() * static_cast<int>(teams.size()) + 1;

  RunTrace trace;
  trace.seed = options.seed;
  trace.initial = initial;
  trace.initial_objective = global_objective(teams, initial);

  Allocation current = initial;
  trace.termination = Termination::iteration_limit;
  for (int t = 1; t <= limit; ++t) {
    StepResult step = collaboration_step(teams, graph, current, options, t);
    const bool empty_plan = step.record.plan.empty();
    trace.steps.push_back(std::move(step.record));
    if (options.on_step) options.on_step(trace.steps.back());
    if (!step.accepted) {
      trace.termination = empty_plan ? Termination::no_transfers : Termination::no_improvement;
      break;
    }
    current = std::move(step.allocation);
  }
  trace.final_allocation = current;
  trace.final_objective = global_objective(teams, current);
  return trace;
}

void check_trace_invariants(const RunTrace& trace) {
  const int total = trace.initial.total();
  double last = trace.initial_objective;
  for (const StepRecord& s : trace.steps) {
    if (s.allocation.total() != total) {
      throw InvariantBreach("agent total changed from " + std::to_string(total) + " to " +
                            std::to_string(s.allocation.total()) + " at iteration " +
                            std::to_string(s.iteration));
    }
    if (s.accepted) {
      if (!(s.objective_candidate > last)) {
        throw InvariantBreach("objective did not increase at iteration " +
                              std::to_string(s.iteration));
      }
      last = s.objective_candidate;
    }
  }
  if (trace.final_allocation.total() != total) throw InvariantBreach("final total differs");
}

}  // namespace teamalloc
