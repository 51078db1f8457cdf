#include "teamalloc/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "teamalloc/collaboration.hpp"
#include "teamalloc/error.hpp"
#include "teamalloc/random.hpp"

namespace teamalloc::io {
namespace {

// Shortest text that reads back to the same double.
std::string fmt_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void reject_unknown_keys(const YAML::Node& node, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError("unknown key", where.empty() ? key : where + "." + key);
    }
  }
}

template <class T>
T read(const YAML::Node& node, const std::string& field) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("has the wrong type", field);
  }
}

template <class T>
T read_or(const YAML::Node& parent, const char* key, const std::string& field, T fallback) {
  const YAML::Node node = parent[key];
  if (!node) return fallback;
  return read<T>(node, field);
}

void require(bool condition, const std::string& field, const std::string& constraint) {
  if (!condition) throw ConfigError("must satisfy " + constraint, field);
}

std::uint64_t parse_seed(const std::string& text, const std::string& field) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ConfigError("must be a non-negative integer seed", field);
  return value;
}

EvaluatorSpec parse_evaluator(const YAML::Node& node, const std::string& field,
                              const std::filesystem::path& base_dir, double& table_tolerance) {
  require(node.IsMap(), field, "a mapping with a 'kind' key");
  const auto kind = read_or<std::string>(node, "kind", field + ".kind", "");
  require(!kind.empty(), field + ".kind", "one of sqrt, log1p, saturating_exp, coverage, table");
  EvaluatorSpec parsed;
  if (kind == "coverage") {
    reject_unknown_keys(node, field, {"kind", "sigma_x", "sigma_y"});
    parsed.kind = EvaluatorKind::coverage;
    parsed.sigma_x = read_or<double>(node, "sigma_x", field + ".sigma_x", 0.5);
    parsed.sigma_y = read_or<double>(node, "sigma_y", field + ".sigma_y", parsed.sigma_x);
    require(parsed.sigma_x > 0.0 && std::isfinite(parsed.sigma_x), field + ".sigma_x", "sigma_x > 0");
    require(parsed.sigma_y > 0.0 && std::isfinite(parsed.sigma_y), field + ".sigma_y", "sigma_y > 0");
  } else if (kind == "table") {
    reject_unknown_keys(node, field, {"kind", "path", "concavity_tolerance"});
    parsed.kind = EvaluatorKind::table;
    const auto path = read_or<std::string>(node, "path", field + ".path", "");
    require(!path.empty(), field + ".path", "a table file path");
    parsed.table = base_dir / path;
    require(std::filesystem::exists(parsed.table), field + ".path",
            "an existing file (" + parsed.table.string() + ")");
    table_tolerance = read_or<double>(node, "concavity_tolerance", field + ".concavity_tolerance", 0.0);
    require(table_tolerance >= 0.0, field + ".concavity_tolerance", ">= 0");
  } else {
    reject_unknown_keys(node, field, {"kind", "scale", "tau"});
    parsed.kind = EvaluatorKind::analytic;
    try {
      parsed.analytic = parse_analytic_kind(kind);
    } catch (const std::invalid_argument&) {
      throw ConfigError("must be one of sqrt, log1p, saturating_exp, coverage, table", field + ".kind");
    }
    parsed.params.scale = read_or<double>(node, "scale", field + ".scale", 1.0);
    parsed.params.tau = read_or<double>(node, "tau", field + ".tau", 1.0);
    require(parsed.params.scale > 0.0 && std::isfinite(parsed.params.scale), field + ".scale", "scale > 0");
    require(parsed.params.tau > 0.0 && std::isfinite(parsed.params.tau), field + ".tau", "tau > 0");
  }
  return parsed;
}

InitialAllocation parse_initial(const YAML::Node& node) {
  InitialAllocation init;
  if (!node) {
    init.random = true;
    return init;
  }
  if (node.IsSequence()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      init.counts.push_back(read<int>(node[i], "initial_allocation[" + std::to_string(i) + "]"));
    }
    return init;
  }
  const auto text = read<std::string>(node, "initial_allocation");
  if (text == "random") {
    init.random = true;
    return init;
  }
  if (text.rfind("random(", 0) == 0 && text.back() == ')') {
    init.random = true;
    init.seed = parse_seed(text.substr(7, text.size() - 8), "initial_allocation");
    return init;
  }
  throw ConfigError("must be a list of counts, 'random', or 'random(<seed>)'", "initial_allocation");
}

void validate(ScenarioConfig& c, const std::vector<double>& table_tolerances) {
  require(c.schema_version == kScenarioSchemaVersion, "schema_version",
          "== " + std::to_string(kScenarioSchemaVersion));
  const int m = static_cast<int>(c.teams.size());
  require(m >= 1, "teams", "at least one team");
  require(c.total_agents >= 1, "total_agents", ">= 1");
  require(c.min_team_size >= 0, "algorithm.min_team_size", ">= 0");
  require(c.total_agents >= m * c.min_team_size, "total_agents",
          ">= teams * min_team_size (" + std::to_string(m * c.min_team_size) + ")");
  require(c.objective_tolerance >= 0.0 && std::isfinite(c.objective_tolerance),
          "algorithm.objective_tolerance", ">= 0");
  require(c.iteration_limit >= 0, "algorithm.iteration_limit", ">= 0");

  for (int i = 0; i < m; ++i) {
    const TeamConfig& t = c.teams[static_cast<std::size_t>(i)];
    const std::string f = "teams[" + std::to_string(i) + "]";
    require(t.id == i + 1, f + ".id", "ids contiguous 1..m in listed order");
    require(t.weight > 0.0 && std::isfinite(t.weight), f + ".weight", "weight > 0");
  }
  for (const auto& [a, b] : c.edges) {
    require(a != b, "graph", "no self-loops");
    require(a >= 1 && b >= 1 && a <= m && b <= m, "graph", "edges between team ids 1.." + std::to_string(m));
  }
  if (!c.initial.random) {
    require(static_cast<int>(c.initial.counts.size()) == m, "initial_allocation",
            "one count per team (" + std::to_string(m) + ")");
    const int sum = std::accumulate(c.initial.counts.begin(), c.initial.counts.end(), 0);
    require(sum == c.total_agents, "initial_allocation",
            "counts summing to total_agents (" + std::to_string(c.total_agents) + ", got " +
                std::to_string(sum) + ")");
    for (int n : c.initial.counts) {
      require(n >= c.min_team_size, "initial_allocation",
              "every count >= min_team_size (" + std::to_string(c.min_team_size) + ")");
    }
  }

  const CoverageSettings& cov = c.coverage;
  require(cov.grid >= 2, "coverage.grid", ">= 2");
  require(cov.bounds.x_max > cov.bounds.x_min && cov.bounds.y_max > cov.bounds.y_min,
          "coverage.bounds", "x_max > x_min and y_max > y_min");
  require(cov.lloyd_tolerance > 0.0, "coverage.lloyd_tolerance", "> 0");
  require(cov.lloyd_max_iterations >= 1, "coverage.lloyd_max_iterations", ">= 1");
  require(cov.restarts >= 1, "coverage.restarts", ">= 1");

  const int top = c.max_team_size();
  for (int i = 0; i < m; ++i) {
    const EvaluatorSpec& e = c.teams[static_cast<std::size_t>(i)].evaluator;
    const std::string f = "teams[" + std::to_string(i) + "].evaluator";
    if (e.kind == EvaluatorKind::analytic) {
      const AnalyticEvaluator probe(e.analytic, e.params);
      require(probe.domain_max() >= top, f + ".tau",
              "a domain reaching n=" + std::to_string(top) + " (domain ends at n=" +
                  std::to_string(probe.domain_max()) + ")");
    } else if (e.kind == EvaluatorKind::table) {
      const TabulatedEvaluator table = load_table(e.table);
      require(table.domain_min() <= c.min_team_size && table.domain_max() >= top, f + ".path",
              "a table covering n=" + std::to_string(c.min_team_size) + ".." + std::to_string(top));
      const double tol = table_tolerances[static_cast<std::size_t>(i)] * std::abs(table.evaluate(std::max(1, table.domain_min())));
      const ReturnsReport report = validate_diminishing_returns(table, top, tol, c.min_team_size);
      if (!report.ok()) {
        throw ConfigError(std::string("table breaks ") +
                              (report.increasing_ok ? "discrete concavity" : "strict increase") +
                              " at n=" + std::to_string(*report.first_violation()),
                          f + ".path");
      }
    }
  }
}

}  // namespace

bool ScenarioConfig::uses_coverage() const {
  return std::any_of(teams.begin(), teams.end(), [](const TeamConfig& t) {
    return t.evaluator.kind == EvaluatorKind::coverage;
  });
}

int ScenarioConfig::max_team_size() const {
  return total_agents - (static_cast<int>(teams.size()) - 1) * min_team_size;
}

ScenarioConfig parse_scenario(const std::string& text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("scenario must be a YAML mapping");
  reject_unknown_keys(root, "", {"schema_version", "name", "total_agents", "seed", "graph",
                                 "initial_allocation", "algorithm", "coverage", "teams"});

  ScenarioConfig c;
  c.base_dir = base_dir;
  require(static_cast<bool>(root["schema_version"]), "schema_version", "present");
  c.schema_version = read<int>(root["schema_version"], "schema_version");
  c.name = read_or<std::string>(root, "name", "name", "unnamed");
  require(static_cast<bool>(root["total_agents"]), "total_agents", "present");
  c.total_agents = read<int>(root["total_agents"], "total_agents");
  if (root["seed"]) c.seed = parse_seed(read<std::string>(root["seed"], "seed"), "seed");

  const YAML::Node teams = root["teams"];
  require(teams && teams.IsSequence() && teams.size() > 0, "teams", "a non-empty list");
  std::vector<double> table_tolerances;
  for (std::size_t i = 0; i < teams.size(); ++i) {
    const std::string f = "teams[" + std::to_string(i) + "]";
    const YAML::Node t = teams[i];
    require(t.IsMap(), f, "a mapping");
    reject_unknown_keys(t, f, {"id", "weight", "evaluator"});
    TeamConfig team;
    team.id = read_or<int>(t, "id", f + ".id", static_cast<int>(i) + 1);
    team.weight = read_or<double>(t, "weight", f + ".weight", 1.0);
    require(static_cast<bool>(t["evaluator"]), f + ".evaluator", "present");
    double tol = 0.0;
    team.evaluator = parse_evaluator(t["evaluator"], f + ".evaluator", base_dir, tol);
    table_tolerances.push_back(tol);
    c.teams.push_back(std::move(team));
  }

  const YAML::Node graph = root["graph"];
  if (!graph || (graph.IsScalar() && graph.as<std::string>() == "complete")) {
    c.complete_graph = true;
  } else if (graph.IsSequence()) {
    c.complete_graph = false;
    for (std::size_t i = 0; i < graph.size(); ++i) {
      const std::string f = "graph[" + std::to_string(i) + "]";
      require(graph[i].IsSequence() && graph[i].size() == 2, f, "a pair [a, b]");
      c.edges.emplace_back(read<int>(graph[i][0], f), read<int>(graph[i][1], f));
    }
  } else {
    throw ConfigError("must be 'complete' or a list of [a, b] pairs", "graph");
  }

  c.initial = parse_initial(root["initial_allocation"]);

  if (const YAML::Node alg = root["algorithm"]) {
    require(alg.IsMap(), "algorithm", "a mapping");
    reject_unknown_keys(alg, "algorithm", {"min_team_size", "objective_tolerance", "iteration_limit"});
    c.min_team_size = read_or<int>(alg, "min_team_size", "algorithm.min_team_size", 1);
    c.iteration_limit = read_or<int>(alg, "iteration_limit", "algorithm.iteration_limit", 0);
    c.objective_tolerance = read_or<double>(alg, "objective_tolerance",
                                            "algorithm.objective_tolerance", -1.0);
  } else {
    c.objective_tolerance = -1.0;
  }
  if (c.objective_tolerance == -1.0) {
    c.objective_tolerance = c.uses_coverage() ? kCoverageObjectiveTolerance : kAnalyticObjectiveTolerance;
  }

  if (const YAML::Node cov = root["coverage"]) {
    require(cov.IsMap(), "coverage", "a mapping");
    reject_unknown_keys(cov, "coverage", {"mode", "grid", "bounds", "lloyd_tolerance",
                                          "lloyd_max_iterations", "restarts"});
    CoverageSettings& s = c.coverage;
    const auto mode = read_or<std::string>(cov, "mode", "coverage.mode", "tabulated");
    if (mode == "tabulated") {
      s.mode = CoverageMode::tabulated;
    } else if (mode == "transfer") {
      s.mode = CoverageMode::transfer;
    } else {
      throw ConfigError("must be 'tabulated' or 'transfer'", "coverage.mode");
    }
    s.grid = read_or<int>(cov, "grid", "coverage.grid", 100);
    if (const YAML::Node b = cov["bounds"]) {
      require(b.IsSequence() && b.size() == 4, "coverage.bounds", "[x_min, x_max, y_min, y_max]");
      s.bounds = {read<double>(b[0], "coverage.bounds"), read<double>(b[1], "coverage.bounds"),
                  read<double>(b[2], "coverage.bounds"), read<double>(b[3], "coverage.bounds")};
    }
    s.lloyd_tolerance = read_or<double>(cov, "lloyd_tolerance", "coverage.lloyd_tolerance", 1e-6);
    s.lloyd_max_iterations =
        read_or<int>(cov, "lloyd_max_iterations", "coverage.lloyd_max_iterations", 500);
    s.restarts = read_or<int>(cov, "restarts", "coverage.restarts", 5);
  }

  validate(c, table_tolerances);
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file", path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.parent_path());
}

void apply_overrides(ScenarioConfig& config, const Overrides& overrides) {
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.grid) {
    require(*overrides.grid >= 2, "--grid", ">= 2");
    config.coverage.grid = *overrides.grid;
  }
}

std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  const int m = static_cast<int>(c.teams.size());
  out.emplace_back("schema_version", std::to_string(c.schema_version));
  out.emplace_back("name", c.name);
  out.emplace_back("total_agents", std::to_string(c.total_agents));
  out.emplace_back("teams", std::to_string(m));
  out.emplace_back("seed", std::to_string(c.seed));
  if (c.complete_graph) {
    out.emplace_back("graph", "complete");
  } else {
    std::string edges;
    for (const auto& [a, b] : c.edges) {
      if (!edges.empty()) edges += ' ';
      edges += std::to_string(a) + "-" + std::to_string(b);
    }
    out.emplace_back("graph", edges);
  }
  if (c.initial.random) {
    out.emplace_back("initial_allocation",
                     "random(" + std::to_string(c.initial.seed.value_or(c.seed)) + ")");
  } else {
    std::string counts;
    for (int n : c.initial.counts) counts += (counts.empty() ? "" : " ") + std::to_string(n);
    out.emplace_back("initial_allocation", counts);
  }
  out.emplace_back("algorithm.min_team_size", std::to_string(c.min_team_size));
  out.emplace_back("algorithm.objective_tolerance", fmt_double(c.objective_tolerance));
  out.emplace_back("algorithm.iteration_limit",
                   std::to_string(c.iteration_limit > 0 ? c.iteration_limit : c.total_agents * m + 1));
  if (c.uses_coverage()) {
    const CoverageSettings& s = c.coverage;
    out.emplace_back("coverage.mode", s.mode == CoverageMode::tabulated ? "tabulated" : "transfer");
    out.emplace_back("coverage.grid", std::to_string(s.grid));
    out.emplace_back("coverage.bounds", fmt_double(s.bounds.x_min) + " " + fmt_double(s.bounds.x_max) +
                                            " " + fmt_double(s.bounds.y_min) + " " +
                                            fmt_double(s.bounds.y_max));
    out.emplace_back("coverage.lloyd_tolerance", fmt_double(s.lloyd_tolerance));
    out.emplace_back("coverage.lloyd_max_iterations", std::to_string(s.lloyd_max_iterations));
    out.emplace_back("coverage.restarts", std::to_string(s.restarts));
  }
  for (const TeamConfig& t : c.teams) {
    const std::string p = "team." + std::to_string(t.id);
    out.emplace_back(p + ".weight", fmt_double(t.weight));
    const EvaluatorSpec& e = t.evaluator;
    switch (e.kind) {
      case EvaluatorKind::analytic:
        out.emplace_back(p + ".evaluator", AnalyticEvaluator(e.analytic, e.params).describe());
        break;
      case EvaluatorKind::coverage:
        out.emplace_back(p + ".evaluator", "coverage(sigma_x=" + fmt_double(e.sigma_x) +
                                               ", sigma_y=" + fmt_double(e.sigma_y) + ")");
        break;
      case EvaluatorKind::table:
        out.emplace_back(p + ".evaluator", "table(" + e.table.filename().string() + ")");
        break;
    }
  }
  return out;
}

std::vector<int> resolve_initial_counts(const ScenarioConfig& c) {
  if (!c.initial.random) return c.initial.counts;
  const int m = static_cast<int>(c.teams.size());
  Rng rng = make_rng(c.initial.seed.value_or(c.seed), {0x616c6c6fULL});
  std::vector<int> counts(static_cast<std::size_t>(m), c.min_team_size);
  for (int left = c.total_agents - m * c.min_team_size; left > 0; --left) {
    ++counts[static_cast<std::size_t>(uniform_int(rng, 0, m - 1))];
  }
  return counts;
}

}  // namespace teamalloc::io
