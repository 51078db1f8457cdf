#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "teamalloc/allocation.hpp"
#include "teamalloc/collaboration.hpp"
#include "teamalloc/coverage/evaluator.hpp"
#include "teamalloc/scenario.hpp"

namespace teamalloc::io {

/// Everything needed to run a scenario, with evaluators constructed.
struct BuiltScenario {
  std::vector<TeamSpec> teams;
  TeamGraph graph{1, {}};
  Allocation initial;
  CollaborationOptions options;
  /// Domain shared by every coverage team; empty for purely analytic scenarios.
  std::optional<coverage::Domain> domain;
};

/// Constructs evaluators. Coverage teams in tabulated mode share one table per
/// distinct density, tabulated up to config.max_team_size(). When `tables_dir`
/// is given, coverage tables are read from `<tables_dir>/team<id>.tbl` instead.
BuiltScenario build_scenario(const ScenarioConfig& config,
                             const std::optional<std::filesystem::path>& tables_dir = {});

/// Robot positions of every team at one point of the run (empty for analytic teams).
struct Snapshot {
  int t = 0;
  Allocation allocation;
  std::vector<std::vector<coverage::Point>> positions;
};

struct ScenarioRun {
  ScenarioConfig config;
  BuiltScenario built;
  RunTrace trace;
  /// t = 0 and every accepted step.
  std::vector<Snapshot> snapshots;
};

/// Builds and runs the scenario, then checks the trace invariants (throws InvariantBreach).
ScenarioRun run_scenario(const ScenarioConfig& config);

/// Writes iterations.csv, final_allocation.csv and trace.json into `out_dir`,
/// plus positions.csv and rasters/t<NNN>_team<K>.csv for coverage scenarios.
/// Returns the paths written.
std::vector<std::filesystem::path> write_run(const ScenarioRun& run,
                                             const std::filesystem::path& out_dir);

/// Writes one table file per coverage team, team<id>.tbl, tabulated up to
/// config.max_team_size(). Returns the paths written.
std::vector<std::filesystem::path> write_coverage_tables(const ScenarioConfig& config,
                                                         const std::filesystem::path& out_dir);

}  // namespace teamalloc::io
