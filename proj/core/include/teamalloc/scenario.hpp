#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teamalloc/coverage/geometry.hpp"
#include "teamalloc/mission.hpp"

namespace teamalloc::io {

inline constexpr int kScenarioSchemaVersion = 1;

enum class EvaluatorKind { analytic, coverage, table };

struct EvaluatorSpec {
  EvaluatorKind kind = EvaluatorKind::analytic;
  AnalyticKind analytic = AnalyticKind::sqrt;
  AnalyticParams params;
  double sigma_x = 0.5;  // coverage density
  double sigma_y = 0.5;
  std::filesystem::path table;  // resolved against the scenario's directory
};

struct TeamConfig {
  int id = 0;
  double weight = 1.0;
  EvaluatorSpec evaluator;
};

enum class CoverageMode {
  tabulated,  // F(n) precomputed from best-of-restarts CVTs
  transfer,   // benefit and cost priced by re-running Lloyd around each transfer
};

struct CoverageSettings {
  coverage::Bounds bounds;
  int grid = 100;
  double lloyd_tolerance = 1e-6;
  int lloyd_max_iterations = 500;
  int restarts = 5;
  CoverageMode mode = CoverageMode::tabulated;
};

struct InitialAllocation {
  bool random = false;
  /// Seed for a random allocation; the run seed is used when absent.
  std::optional<std::uint64_t> seed;
  std::vector<int> counts;
};

/// A fully validated scenario with every default filled in.
struct ScenarioConfig {
  int schema_version = kScenarioSchemaVersion;
  std::string name;
  int total_agents = 0;
  std::vector<TeamConfig> teams;
  bool complete_graph = true;
  std::vector<std::pair<int, int>> edges;
  InitialAllocation initial;
  std::uint64_t seed = 0;
  int min_team_size = 1;
  double objective_tolerance = 0.0;
  int iteration_limit = 0;
  CoverageSettings coverage;
  std::filesystem::path base_dir;

  bool uses_coverage() const;
  /// Largest count any team can reach: N - (m - 1) * min_team_size.
  int max_team_size() const;
};

/// Parses and validates YAML scenario text. Throws ConfigError naming the
/// offending field and constraint. Tabulated evaluator files are loaded and
/// rejected unless strictly increasing and concave, reporting the first violating n.
ScenarioConfig parse_scenario(const std::string& text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
};

/// Applies command-line overrides and re-validates.
void apply_overrides(ScenarioConfig& config, const Overrides& overrides);

/// The resolved configuration as "key = value" lines, in a fixed order.
std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& config);

/// The allocation the run starts from (drawing it if the scenario asks for a random one).
std::vector<int> resolve_initial_counts(const ScenarioConfig& config);

}  // namespace teamalloc::io
