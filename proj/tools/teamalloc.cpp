// teamalloc: run, validate, tabulate, oracle, plot and harness subcommands.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 run hit its
// iteration limit without converging, 3 invariant breach or internal error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "teamalloc/error.hpp"
#include "teamalloc/harness.hpp"
#include "teamalloc/oracle.hpp"
#include "teamalloc/runner.hpp"
#include "teamalloc/scenario.hpp"
#include "teamalloc/svg.hpp"

namespace fs = std::filesystem;
using namespace teamalloc;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNotConverged = 2;
constexpr int kInternalError = 3;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<int> grid;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Override the scenario seed");
  cmd->add_option("--grid", flags.grid, "Override the coverage grid resolution (cells per axis)")
      ->check(CLI::PositiveNumber);
}

io::ScenarioConfig load(const std::string& path, const CommonFlags& flags) {
  io::ScenarioConfig config = io::load_scenario(path);
  io::apply_overrides(config, {flags.seed, flags.grid});
  return config;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string counts_string(const std::vector<int>& counts) {
  std::string s = "(";
  for (std::size_t i = 0; i < counts.size(); ++i) s += (i ? "," : "") + std::to_string(counts[i]);
  return s + ")";
}

void print_config(const io::ScenarioConfig& config) {
  for (const auto& [key, value] : io::describe(config)) std::cout << "# " << key << " = " << value << '\n';
}

int cmd_run(const std::string& path, const CommonFlags& flags, const fs::path& out, bool plots) {
  const io::ScenarioConfig config = load(path, flags);
  const io::ScenarioRun run = io::run_scenario(config);
  const auto written = io::write_run(run, out);
  if (plots) io::plot_trace(out / "trace.json", out / "plots");
  const RunTrace& tr = run.trace;
  std::cout << "scenario " << config.name << ": " << counts_string(tr.initial.counts()) << " -> "
            << counts_string(tr.final_allocation.counts()) << ", G " << num(tr.initial_objective)
            << " -> " << num(tr.final_objective) << ", " << tr.accepted_steps() << " accepted step(s), "
            << to_string(tr.termination) << '\n';
  std::cout << "wrote " << written.size() << " file(s) to " << out.string() << '\n';
  if (!tr.converged()) {
    std::cerr << "error: iteration limit reached before convergence\n";
    return kNotConverged;
  }
  return kOk;
}

int cmd_validate(const std::vector<std::string>& paths, const CommonFlags& flags) {
  int status = kOk;
  for (const std::string& path : paths) {
    try {
      const io::ScenarioConfig config = load(path, flags);
      std::cout << path << ": ok\n";
      print_config(config);
      const int top = config.max_team_size();
      for (const io::TeamConfig& t : config.teams) {
        if (t.evaluator.kind == io::EvaluatorKind::coverage) {
          std::cout << "  team " << t.id << ": coverage, checked when tabulated\n";
          continue;
        }
        const EvaluatorPtr ev = t.evaluator.kind == io::EvaluatorKind::analytic
                                    ? make_analytic(t.evaluator.analytic, t.evaluator.params)
                                    : std::make_shared<TabulatedEvaluator>(load_table(t.evaluator.table));
        const ReturnsReport r = validate_diminishing_returns(*ev, top, 0.0, config.min_team_size);
        std::cout << "  team " << t.id << ": increasing and concave on n=" << r.checked_from << ".."
                  << r.checked_to << ": " << (r.ok() ? "yes" : "no") << '\n';
      }
    } catch (const ConfigError& e) {
      std::cerr << path << ": error: " << e.what() << '\n';
      status = kConfigError;
    }
  }
  return status;
}

int cmd_tabulate(const std::string& path, const CommonFlags& flags, const fs::path& out) {
  const io::ScenarioConfig config = load(path, flags);
  if (!config.uses_coverage()) throw ConfigError("scenario has no coverage teams", "teams");
  const auto written = io::write_coverage_tables(config, out);
  for (const fs::path& p : written) {
    const TabulatedEvaluator table = load_table(p);
    const double tol = coverage::coverage_concavity_tolerance(table);
    const ReturnsReport strict = validate_diminishing_returns(table, table.domain_max(), 0.0, 1);
    const ReturnsReport loose = validate_diminishing_returns(table, table.domain_max(), tol, 1);
    std::cout << p.string() << '\n';
    for (int n = table.domain_min(); n <= table.domain_max(); ++n) {
      std::cout << "  F(" << n << ") = " << num(table.evaluate(n)) << '\n';
    }
    std::cout << "  strictly increasing: " << (strict.increasing_ok ? "yes" : "no")
              << "; concave: " << (strict.concave_ok ? "yes" : "no")
              << "; concave within " << num(tol) << ": " << (loose.concave_ok ? "yes" : "no") << '\n';
    if (!loose.ok()) std::cerr << "warning: " << p.string() << " breaks diminishing returns\n";
  }
  return kOk;
}

int cmd_oracle(const std::string& path, const CommonFlags& flags,
               const std::optional<fs::path>& tables) {
  const io::ScenarioConfig config = load(path, flags);
  if (config.uses_coverage() && !tables) {
    throw ConfigError("coverage teams need pre-tabulated F; run 'tabulate' and pass --tables DIR",
                      "--tables");
  }
  const io::BuiltScenario built = io::build_scenario(config, tables);
  const oracle::AllocationSpace space{static_cast<int>(built.teams.size()), config.total_agents,
                                      config.min_team_size};
  oracle::OptimalAllocation best;
  try {
    best = oracle::brute_force_optimal(built.teams, space);
  } catch (const OracleLimitExceeded& e) {
    throw ConfigError(e.what(), "total_agents");
  }
  print_config(config);
  std::cout << "|Omega| = " << space.size() << '\n';
  std::cout << "optimal allocation " << counts_string(best.allocation.counts()) << ", G = "
            << num(best.value) << '\n';
  return kOk;
}

int cmd_plot(const fs::path& trace, const std::optional<fs::path>& out) {
  const fs::path dir = out ? *out : trace.parent_path() / "plots";
  const auto written = io::plot_trace(trace, dir);
  for (const fs::path& p : written) std::cout << p.string() << '\n';
  return kOk;
}

int cmd_harness(oracle::HarnessConfig config, const std::vector<std::string>& suites) {
  if (!suites.empty()) {
    config.suites.clear();
    for (const std::string& s : suites) {
      try {
        config.suites.push_back(oracle::parse_suite(s));
      } catch (const std::invalid_argument&) {
        throw ConfigError("unknown suite '" + s + "'", "--suite");
      }
    }
  }
  const oracle::HarnessReport report = oracle::property_harness(config);
  std::cout << oracle::to_json(report) << '\n';
  return report.ok() ? kOk : kInternalError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Team-level agent reallocation by pairwise transfers"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string scenario;
  std::vector<std::string> scenarios;
  fs::path out = "out";
  bool plots = false;
  std::optional<fs::path> tables;
  std::optional<fs::path> plot_out;
  fs::path trace;
  oracle::HarnessConfig harness;
  std::vector<std::string> suites;

  auto* run = app.add_subcommand("run", "Run a scenario and write its trace");
  run->add_option("scenario", scenario, "Scenario file")->required();
  run->add_option("--out", out, "Output directory")->capture_default_str();
  run->add_flag("--plots", plots, "Also write SVG plots to <out>/plots");
  add_common(run, flags);

  auto* validate = app.add_subcommand("validate", "Check scenario files");
  validate->add_option("scenarios", scenarios, "Scenario files")->required();
  add_common(validate, flags);

  auto* tabulate = app.add_subcommand("tabulate", "Tabulate coverage F(n) for each coverage team");
  tabulate->add_option("scenario", scenario, "Scenario file")->required();
  tabulate->add_option("--out", out, "Output directory for team<id>.tbl files")->capture_default_str();
  add_common(tabulate, flags);

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimal allocation of a scenario");
  oracle_cmd->add_option("scenario", scenario, "Scenario file")->required();
  oracle_cmd->add_option("--tables", tables, "Directory of team<id>.tbl files for coverage teams");
  add_common(oracle_cmd, flags);

  auto* plot = app.add_subcommand("plot", "Regenerate SVG plots from a trace.json");
  plot->add_option("trace", trace, "trace.json written by run")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "Output directory (default: <trace dir>/plots)");

  auto* harness_cmd = app.add_subcommand("harness", "Run the randomized property suites");
  harness_cmd->add_option("--seed", harness.seed, "Harness seed")->capture_default_str();
  harness_cmd->add_option("--suite", suites,
                          "unidirectional, oracle_equivalence or coverage_monotonicity (repeatable)");
  harness_cmd->add_option("--unidirectional-trials", harness.unidirectional_trials)->capture_default_str();
  harness_cmd->add_option("--sampled-trials", harness.sampled_trials)->capture_default_str();
  harness_cmd->add_option("--coverage-trials", harness.coverage_trials)->capture_default_str();
  harness_cmd->add_option("--grid", harness.coverage_grid)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(scenario, flags, out, plots);
    if (*validate) return cmd_validate(scenarios, flags);
    if (*tabulate) return cmd_tabulate(scenario, flags, out);
    if (*oracle_cmd) return cmd_oracle(scenario, flags, tables);
    if (*plot) return cmd_plot(trace, plot_out);
    if (*harness_cmd) return cmd_harness(harness, suites);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvariantBreach& e) {
    std::cerr << "invariant breach: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}
