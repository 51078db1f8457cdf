#include "teamalloc/runner.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "teamalloc/coverage/voronoi.hpp"
#include "teamalloc/error.hpp"
#include "teamalloc/random.hpp"

namespace teamalloc::io {
namespace {

using coverage::CoverageField;
using coverage::CoverageTable;
using coverage::Point;
using SigmaKey = std::pair<double, double>;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

coverage::Domain make_domain(const ScenarioConfig& c) {
  return coverage::Domain(c.coverage.bounds, c.coverage.grid, c.coverage.grid);
}

coverage::LloydOptions lloyd_options(const ScenarioConfig& c) {
  return {c.coverage.lloyd_tolerance, c.coverage.lloyd_max_iterations};
}

std::uint64_t tabulation_seed(const ScenarioConfig& c) {
  Rng rng = make_rng(c.seed, {0x7461626cULL});
  return rng();
}

class FieldCache {
 public:
  explicit FieldCache(const ScenarioConfig& c) : config_(c) {}

  std::shared_ptr<const CoverageField> field(const EvaluatorSpec& e) {
    auto& slot = fields_[{e.sigma_x, e.sigma_y}];
    if (!slot) {
      slot = std::make_shared<const CoverageField>(
          make_domain(config_), coverage::DensityField::gaussian(e.sigma_x, e.sigma_y));
    }
    return slot;
  }

  const CoverageTable& table(const EvaluatorSpec& e) {
    const SigmaKey key{e.sigma_x, e.sigma_y};
    auto it = tables_.find(key);
    if (it == tables_.end()) {
      coverage::TabulationOptions opts;
      opts.max_agents = config_.max_team_size();
      opts.restarts = config_.coverage.restarts;
      opts.seed = tabulation_seed(config_);
      opts.lloyd = lloyd_options(config_);
      opts.include_empty = config_.min_team_size == 0;
      it = tables_.emplace(key, coverage::tabulate_coverage_F(*field(e), opts)).first;
    }
    return it->second;
  }

 private:
  const ScenarioConfig& config_;
  std::map<SigmaKey, std::shared_ptr<const CoverageField>> fields_;
  std::map<SigmaKey, CoverageTable> tables_;
};

std::filesystem::path table_path(const std::filesystem::path& dir, int id) {
  return dir / ("team" + std::to_string(id) + ".tbl");
}

std::vector<std::vector<Point>> positions_of(const BuiltScenario& built, const Allocation& alloc) {
  std::vector<std::vector<Point>> out(built.teams.size());
  for (std::size_t i = 0; i < built.teams.size(); ++i) {
    const auto* cov =
        dynamic_cast<const coverage::CoverageEvaluator*>(built.teams[i].evaluator.get());
    const int n = alloc.count(built.teams[i].id);
    if (cov != nullptr && n > 0) out[i] = cov->configuration(n);
  }
  return out;
}

std::string plan_string(const CollaborationPlan& plan) {
  std::string s;
  for (const Transfer& t : plan.transfers) {
    if (!s.empty()) s += ';';
    s += std::to_string(t.donor) + ">" + std::to_string(t.recipient);
  }
  return s;
}

void write_header(std::ostream& os, const ScenarioRun& run) {
  for (const auto& [key, value] : describe(run.config)) os << "# " << key << " = " << value << '\n';
  os << "# termination = " << to_string(run.trace.termination) << '\n';
  os << "# converged = " << (run.trace.converged() ? "true" : "false") << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

void write_iterations(const ScenarioRun& run, const std::filesystem::path& path) {
  std::ofstream os = open_out(path);
  write_header(os, run);
  const int m = static_cast<int>(run.built.teams.size());
  os << "t,G,G_candidate,accepted";
  for (int k = 1; k <= m; ++k) os << ",n_" << k;
  os << ",plan\n";
  auto row = [&](int t, double g, double cand, bool accepted, const Allocation& a,
                 const std::string& plan) {
    os << t << ',' << num(g) << ',' << num(cand) << ',' << (accepted ? 1 : 0);
    for (int n : a.counts()) os << ',' << n;
    os << ',' << plan << '\n';
  };
  const RunTrace& tr = run.trace;
  row(0, tr.initial_objective, tr.initial_objective, false, tr.initial, "");
  for (const StepRecord& s : tr.steps) {
    const double after = s.accepted ? s.objective_candidate : s.objective_before;
    row(s.iteration, after, s.objective_candidate, s.accepted, s.allocation, plan_string(s.plan));
  }
}

void write_final(const ScenarioRun& run, const std::filesystem::path& path) {
  std::ofstream os = open_out(path);
  write_header(os, run);
  os << "# G = " << num(run.trace.final_objective) << '\n';
  os << "team,weight,n,F,wF\n";
  for (const TeamSpec& t : run.built.teams) {
    const int n = run.trace.final_allocation.count(t.id);
    const double f = t.evaluator->evaluate(n);
    os << t.id << ',' << num(t.weight) << ',' << n << ',' << num(f) << ',' << num(t.weight * f)
       << '\n';
  }
}

void write_positions(const ScenarioRun& run, const std::filesystem::path& path) {
  std::ofstream os = open_out(path);
  write_header(os, run);
  os << "t,team,robot,x,y\n";
  for (const Snapshot& s : run.snapshots) {
    for (std::size_t i = 0; i < s.positions.size(); ++i) {
      for (std::size_t r = 0; r < s.positions[i].size(); ++r) {
        os << s.t << ',' << run.built.teams[i].id << ',' << r + 1 << ',' << num(s.positions[i][r].x)
           << ',' << num(s.positions[i][r].y) << '\n';
      }
    }
  }
}

void write_raster(const coverage::Domain& domain, const std::vector<Point>& robots,
                  const std::filesystem::path& path) {
  std::ofstream os = open_out(path);
  const coverage::VoronoiAssignment a = coverage::assign_voronoi(robots, domain);
  for (int iy = 0; iy < domain.ny(); ++iy) {
    for (int ix = 0; ix < domain.nx(); ++ix) {
      if (ix > 0) os << ',';
      os << (robots.empty() ? 0 : a.owner[static_cast<std::size_t>(iy * domain.nx() + ix)] + 1);
    }
    os << '\n';
  }
}

nlohmann::ordered_json trace_json(const ScenarioRun& run) {
  using nlohmann::ordered_json;
  const RunTrace& tr = run.trace;
  ordered_json j;
  j["format"] = "teamalloc-trace";
  j["version"] = 1;
  ordered_json cfg = ordered_json::object();
  for (const auto& [key, value] : describe(run.config)) cfg[key] = value;
  j["config"] = cfg;
  j["termination"] = std::string(to_string(tr.termination));
  j["converged"] = tr.converged();
  j["seed"] = tr.seed;
  ordered_json teams = ordered_json::array();
  for (const TeamSpec& t : run.built.teams) {
    teams.push_back({{"id", t.id}, {"weight", t.weight}, {"evaluator", t.evaluator->describe()}});
  }
  j["teams"] = teams;
  j["initial"] = tr.initial.counts();
  j["initial_objective"] = tr.initial_objective;
  ordered_json steps = ordered_json::array();
  for (const StepRecord& s : tr.steps) {
    ordered_json plan = ordered_json::array();
    for (const Transfer& t : s.plan.transfers) plan.push_back({t.donor, t.recipient});
    steps.push_back({{"t", s.iteration},
                     {"objective_before", s.objective_before},
                     {"objective_candidate", s.objective_candidate},
                     {"accepted", s.accepted},
                     {"counts", s.allocation.counts()},
                     {"plan", plan}});
  }
  j["steps"] = steps;
  j["final"] = tr.final_allocation.counts();
  j["final_objective"] = tr.final_objective;
  if (run.built.domain) {
    const coverage::Domain& d = *run.built.domain;
    j["domain"] = {{"bounds", {d.bounds().x_min, d.bounds().x_max, d.bounds().y_min, d.bounds().y_max}},
                   {"nx", d.nx()},
                   {"ny", d.ny()}};
    ordered_json snaps = ordered_json::array();
    for (const Snapshot& s : run.snapshots) {
      ordered_json teams_pos = ordered_json::array();
      for (const auto& robots : s.positions) {
        ordered_json pts = ordered_json::array();
        for (const Point& p : robots) pts.push_back({p.x, p.y});
        teams_pos.push_back(pts);
      }
      snaps.push_back({{"t", s.t}, {"counts", s.allocation.counts()}, {"positions", teams_pos}});
    }
    j["snapshots"] = snaps;
  } else {
    j["domain"] = nullptr;
    j["snapshots"] = ordered_json::array();
  }
  return j;
}

}  // namespace

BuiltScenario build_scenario(const ScenarioConfig& config,
                             const std::optional<std::filesystem::path>& tables_dir) {
  BuiltScenario built;
  const std::vector<int> counts = resolve_initial_counts(config);
  const int m = static_cast<int>(config.teams.size());
  FieldCache cache(config);
  if (config.uses_coverage()) built.domain = make_domain(config);

  for (int i = 0; i < m; ++i) {
    const TeamConfig& tc = config.teams[static_cast<std::size_t>(i)];
    const EvaluatorSpec& e = tc.evaluator;
    EvaluatorPtr ev;
    switch (e.kind) {
      case EvaluatorKind::analytic:
        ev = make_analytic(e.analytic, e.params);
        break;
      case EvaluatorKind::table:
        ev = std::make_shared<TabulatedEvaluator>(load_table(e.table));
        break;
      case EvaluatorKind::coverage:
        if (tables_dir) {
          const auto path = table_path(*tables_dir, tc.id);
          if (!std::filesystem::exists(path)) {
            throw ConfigError("missing coverage table " + path.string(), "--tables");
          }
          auto table = std::make_shared<TabulatedEvaluator>(load_table(path));
          if (table->domain_min() > config.min_team_size ||
              table->domain_max() < config.max_team_size()) {
            throw ConfigError("table " + path.string() + " does not cover n=" +
                                  std::to_string(config.min_team_size) + ".." +
                                  std::to_string(config.max_team_size()),
                              "--tables");
          }
          ev = table;
        } else if (config.coverage.mode == CoverageMode::tabulated) {
          ev = std::make_shared<coverage::TabulatedCoverageEvaluator>(cache.field(e), cache.table(e));
        } else {
          Rng rng = make_rng(config.seed, {static_cast<std::uint64_t>(tc.id)});
          ev = std::make_shared<coverage::TransferCoverageEvaluator>(
              cache.field(e), counts[static_cast<std::size_t>(i)], rng(), config.coverage.restarts,
              lloyd_options(config));
        }
        break;
    }
    built.teams.push_back(TeamSpec{tc.id, tc.weight, std::move(ev)});
  }

  built.graph = config.complete_graph ? TeamGraph::complete(m) : TeamGraph(m, config.edges);
  built.initial = Allocation(counts);
  built.options.min_team_size = config.min_team_size;
  built.options.objective_tolerance = config.objective_tolerance;
  built.options.iteration_limit = config.iteration_limit;
  built.options.seed = config.seed;
  return built;
}

ScenarioRun run_scenario(const ScenarioConfig& config) {
  ScenarioRun run;
  run.config = config;
  run.built = build_scenario(config);
  BuiltScenario& b = run.built;
  run.snapshots.push_back(Snapshot{0, b.initial, positions_of(b, b.initial)});
  CollaborationOptions options = b.options;
  options.on_step = [&](const StepRecord& s) {
    if (s.accepted) {
      run.snapshots.push_back(Snapshot{s.iteration, s.allocation, positions_of(b, s.allocation)});
    }
  };
  run.trace = run_collaboration(b.teams, b.graph, b.initial, options);
  check_trace_invariants(run.trace);
  return run;
}

std::vector<std::filesystem::path> write_run(const ScenarioRun& run,
                                             const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  written.push_back(out_dir / "iterations.csv");
  write_iterations(run, written.back());
  written.push_back(out_dir / "final_allocation.csv");
  write_final(run, written.back());

  if (run.built.domain) {
    written.push_back(out_dir / "positions.csv");
    write_positions(run, written.back());
    const auto raster_dir = out_dir / "rasters";
    std::filesystem::create_directories(raster_dir);
    for (const Snapshot& s : run.snapshots) {
      for (std::size_t i = 0; i < run.built.teams.size(); ++i) {
        if (run.config.teams[i].evaluator.kind != EvaluatorKind::coverage) continue;
        char name[64];
        std::snprintf(name, sizeof name, "t%03d_team%d.csv", s.t, run.built.teams[i].id);
        written.push_back(raster_dir / name);
        write_raster(*run.built.domain, s.positions[i], written.back());
      }
    }
  }

  written.push_back(out_dir / "trace.json");
  std::ofstream os = open_out(written.back());
  os << trace_json(run).dump(2) << '\n';
  return written;
}

std::vector<std::filesystem::path> write_coverage_tables(const ScenarioConfig& config,
                                                         const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  FieldCache cache(config);
  std::vector<std::filesystem::path> written;
  for (const TeamConfig& tc : config.teams) {
    if (tc.evaluator.kind != EvaluatorKind::coverage) continue;
    written.push_back(table_path(out_dir, tc.id));
    save_table(written.back(), cache.table(tc.evaluator).evaluator);
  }
  return written;
}

}  // namespace teamalloc::io
