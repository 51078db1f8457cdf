#include "teamalloc/harness.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "teamalloc/collaboration.hpp"
#include "teamalloc/coverage/voronoi.hpp"
#include "teamalloc/oracle.hpp"

namespace teamalloc::oracle {
namespace {

constexpr std::size_t kMaxCounterexamples = 10;

void record_failure(SuiteReport& report, std::string what) {
  if (report.counterexamples.size() < kMaxCounterexamples) {
    report.counterexamples.push_back(std::move(what));
  }
}

std::string describe_pair(const TeamSpec& a, int na, const TeamSpec& b, int nb) {
  std::ostringstream os;
  os.precision(17);
  os << "team A {" << a.evaluator->describe() << ", w=" << a.weight << ", n=" << na << "} "
     << "team B {" << b.evaluator->describe() << ", w=" << b.weight << ", n=" << nb << "}";
  return os.str();
}

std::string describe_teams(std::span<const TeamSpec> teams, const Allocation& start) {
  std::ostringstream os;
  os.precision(17);
  for (const TeamSpec& t : teams) {
    os << "[" << t.id << ": " << t.evaluator->describe() << ", w=" << t.weight
       << ", n0=" << start.count(t.id) << "] ";
  }
  return os.str();
}

bool both_directions(const TeamSpec& a, int na, const TeamSpec& b, int nb) {
  return hamilton_allows(a, na, b, nb, 0) && hamilton_allows(b, nb, a, na, 0);
}

// Fixed evaluator families for the exhaustive m = 3 comparison.
std::vector<std::vector<TeamSpec>> fixed_families() {
  auto team = [](int id, double w, EvaluatorPtr f) { return TeamSpec{id, w, std::move(f)}; };
  using K = AnalyticKind;
  return {
      {team(1, 1.0, make_analytic(K::sqrt)), team(2, 1.0, make_analytic(K::sqrt)),
       team(3, 1.0, make_analytic(K::sqrt))},
      {team(1, 1.0, make_analytic(K::log1p)), team(2, 2.0, make_analytic(K::log1p)),
       team(3, 3.0, make_analytic(K::log1p))},
      {team(1, 1.0, make_analytic(K::sqrt)), team(2, 2.5, make_analytic(K::log1p)),
       team(3, 4.0, make_analytic(K::sqrt, {0.5, 1.0}))},
      {team(1, 1.0, make_analytic(K::saturating_exp, {1.0, 3.0})),
       team(2, 0.7, make_analytic(K::sqrt)), team(3, 1.3, make_analytic(K::log1p))},
  };
}

void compare_with_oracle(SuiteReport& report, std::span<const TeamSpec> teams, int total,
                         const HarnessConfig& config, const Allocation& start) {
  const AllocationSpace space{static_cast<int>(teams.size()), total, 1};
  const OptimalAllocation best = brute_force_optimal(teams, space);
  const TeamGraph graph = TeamGraph::complete(static_cast<int>(teams.size()));
  ++report.trials;
  const RunTrace trace = run_collaboration(teams, graph, start);
  std::string problem;
  if (!trace.converged()) problem = "did not converge";
  try {
    check_trace_invariants(trace);
  } catch (const std::exception& e) {
    problem = e.what();
  }
  if (static_cast<std::uint64_t>(trace.accepted_steps()) > space.size()) {
    problem = "more accepted steps than allocations";
  }
  if (std::abs(trace.final_objective - best.value) > config.objective_tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "terminal objective " << trace.final_objective << " vs optimum " << best.value;
    problem = os.str();
  }
  if (problem.empty()) {
    ++report.passed;
  } else {
    record_failure(report, problem + ": " + describe_teams(teams, start));
  }
}

Allocation random_allocation(Rng& rng, int m, int total, int min_per_team) {
  std::vector<int> counts(static_cast<std::size_t>(m), min_per_team);
  for (int left = total - m * min_per_team; left > 0; --left) {
    ++counts[static_cast<std::size_t>(uniform_int(rng, 0, m - 1))];
  }
  return Allocation(std::move(counts));
}

}  // namespace

EvaluatorPtr random_concave_evaluator(Rng& rng, int max_n) {
  switch (uniform_int(rng, 0, 3)) {
    case 0:
      return make_analytic(AnalyticKind::sqrt, {uniform_real(rng, 0.1, 10.0), 1.0});
    case 1:
      return make_analytic(AnalyticKind::log1p, {uniform_real(rng, 0.1, 10.0), 1.0});
    case 2: {
      // tau >= max_n / 15 keeps 0..max_n inside the evaluator's domain
      const double tau_lo = std::max(0.5, max_n / 15.0);
      return make_analytic(AnalyticKind::saturating_exp,
                           {uniform_real(rng, 0.1, 10.0), uniform_real(rng, tau_lo, tau_lo + 20.0)});
    }
    default: {
      std::vector<double> values{uniform_real(rng, -5.0, 5.0)};
      double step = uniform_real(rng, 0.5, 5.0);
      for (int n = 1; n <= max_n; ++n) {
        values.push_back(values.back() + step);
        step *= uniform_real(rng, 0.85, 1.0);
      }
      return std::make_shared<TabulatedEvaluator>(0, std::move(values));
    }
  }
}

std::vector<TeamSpec> random_teams(Rng& rng, int m, int max_n, double w_lo, double w_hi) {
  std::vector<TeamSpec> teams;
  for (int id = 1; id <= m; ++id) {
    const double w = uniform_real(rng, w_lo, w_hi);
    teams.push_back({id, w, random_concave_evaluator(rng, max_n)});
  }
  return teams;
}

std::string_view to_string(Suite suite) {
  switch (suite) {
    case Suite::unidirectional:
      return "unidirectional";
    case Suite::oracle_equivalence:
      return "oracle_equivalence";
    case Suite::coverage_monotonicity:
      return "coverage_monotonicity";
  }
  return "unknown";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::unidirectional, Suite::oracle_equivalence, Suite::coverage_monotonicity}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

bool HarnessReport::ok() const {
  for (const SuiteReport& s : suites) {
    if (!s.ok()) return false;
  }
  return true;
}

SuiteReport run_unidirectional_suite(const HarnessConfig& config) {
  SuiteReport report;
  report.suite = Suite::unidirectional;
  Rng rng = make_rng(config.seed, {1});
  constexpr int kMaxCount = 50;
  for (int trial = 0; trial < config.unidirectional_trials; ++trial) {
    std::vector<TeamSpec> teams = random_teams(rng, 2, kMaxCount + 1);
    int na = static_cast<int>(uniform_int(rng, 1, kMaxCount));
    int nb = static_cast<int>(uniform_int(rng, 1, kMaxCount));
    ++report.trials;
    if (!both_directions(teams[0], na, teams[1], nb)) {
      ++report.passed;
      continue;
    }
    // Shrink the counts while the violation persists.
    for (bool progress = true; progress;) {
      progress = false;
      if (na > 1 && both_directions(teams[0], na - 1, teams[1], nb)) {
        --na;
        progress = true;
      }
      if (nb > 1 && both_directions(teams[0], na, teams[1], nb - 1)) {
        --nb;
        progress = true;
      }
    }
    record_failure(report, describe_pair(teams[0], na, teams[1], nb));
  }
  return report;
}

SuiteReport run_oracle_equivalence_suite(const HarnessConfig& config) {
  SuiteReport report;
  report.suite = Suite::oracle_equivalence;
  Rng rng = make_rng(config.seed, {2});

  std::vector<std::vector<TeamSpec>> families = fixed_families();
  for (int i = 0; i < 4; ++i) families.push_back(random_teams(rng, 3, config.exhaustive_max_total));
  for (const auto& teams : families) {
    for (int total = 3; total <= config.exhaustive_max_total; ++total) {
      for (const Allocation& start : enumerate_allocations({3, total, 1})) {
        compare_with_oracle(report, teams, total, config, start);
      }
    }
  }

  constexpr int kTeams = 4;
  constexpr int kTotal = 12;
  for (int trial = 0; trial < config.sampled_trials; ++trial) {
    const std::vector<TeamSpec> teams = random_teams(rng, kTeams, kTotal);
    compare_with_oracle(report, teams, kTotal, config, random_allocation(rng, kTeams, kTotal, 1));
  }
  return report;
}

SuiteReport run_coverage_monotonicity_suite(const HarnessConfig& config) {
  using namespace coverage;
  SuiteReport report;
  report.suite = Suite::coverage_monotonicity;
  Rng rng = make_rng(config.seed, {3});
  const Domain domain({}, config.coverage_grid, config.coverage_grid);
  for (int trial = 0; trial < config.coverage_trials; ++trial) {
    const double sx = uniform_real(rng, 0.2, 1.0);
    const double sy = uniform_real(rng, 0.2, 1.0);
    const CoverageField field(domain, DensityField::gaussian(sx, sy));
    const int n = static_cast<int>(uniform_int(rng, 1, 9));
    std::vector<Point> robots;
    auto fresh = [&] {
      while (true) {
        const Point p{uniform_real(rng, -1.0, 1.0), uniform_real(rng, -1.0, 1.0)};
        bool distinct = true;
        for (const Point& r : robots) distinct = distinct && !(r == p);
        if (distinct) return p;
      }
    };
    for (int i = 0; i < n; ++i) robots.push_back(fresh());
    const double before = locational_cost(robots, field);
    robots.push_back(fresh());
    const double after = locational_cost(robots, field);
    ++report.trials;
    if (after < before) {
      ++report.passed;
    } else {
      std::ostringstream os;
      os.precision(17);
      os << "N=" << n << " sigma=(" << sx << "," << sy << ") cost " << before << " -> " << after
         << " after adding (" << robots.back().x << "," << robots.back().y << ")";
      record_failure(report, os.str());
    }
  }
  return report;
}

HarnessReport property_harness(const HarnessConfig& config) {
  HarnessReport report;
  report.seed = config.seed;
  for (Suite s : config.suites) {
    switch (s) {
      case Suite::unidirectional:
        report.suites.push_back(run_unidirectional_suite(config));
        break;
      case Suite::oracle_equivalence:
        report.suites.push_back(run_oracle_equivalence_suite(config));
        break;
      case Suite::coverage_monotonicity:
        report.suites.push_back(run_coverage_monotonicity_suite(config));
        break;
    }
  }
  return report;
}

std::string to_json(const HarnessReport& report) {
  nlohmann::ordered_json doc;
  doc["report"] = "harness";
  doc["seed"] = report.seed;
  doc["ok"] = report.ok();
  doc["suites"] = nlohmann::ordered_json::array();
  for (const SuiteReport& s : report.suites) {
    nlohmann::ordered_json j;
    j["name"] = std::string(to_string(s.suite));
    j["trials"] = s.trials;
    j["passed"] = s.passed;
    j["failed"] = s.trials - s.passed;
    j["counterexamples"] = s.counterexamples;
    doc["suites"].push_back(std::move(j));
  }
  return doc.dump(2);
}

}  // namespace teamalloc::oracle
