#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "teamalloc/allocation.hpp"
#include "teamalloc/random.hpp"

namespace teamalloc::oracle {

// Random generators shared by the property suites and the tests.

/// A random strictly increasing, concave evaluator defined at least on 0..max_n: one of the
/// analytic kinds with random scale, or a table with random decreasing
/// positive increments.
EvaluatorPtr random_concave_evaluator(Rng& rng, int max_n);

/// Teams 1..m with random evaluators (defined on 0..max_n) and weights in [w_lo, w_hi].
std::vector<TeamSpec> random_teams(Rng& rng, int m, int max_n, double w_lo = 0.1,
                                   double w_hi = 20.0);

enum class Suite { unidirectional, oracle_equivalence, coverage_monotonicity };

std::string_view to_string(Suite suite);
/// Throws std::invalid_argument for unknown names.
Suite parse_suite(std::string_view name);

struct HarnessConfig {
  std::uint64_t seed = 1;
  std::vector<Suite> suites{Suite::unidirectional, Suite::oracle_equivalence,
                            Suite::coverage_monotonicity};
  /// Team pairs drawn by the uni-directionality suite.
  int unidirectional_trials = 10'000;
  /// Exhaustive oracle comparison runs m = 3 with N in [3, exhaustive_max_total].
  int exhaustive_max_total = 9;
  /// Random (teams, start) draws at m = 4, N = 12.
  int sampled_trials = 500;
  int coverage_trials = 200;
  int coverage_grid = 100;
  /// |terminal objective - brute-force optimum| allowed by the oracle suite.
  double objective_tolerance = 1e-12;
};

struct SuiteReport {
  Suite suite = Suite::unidirectional;
  int trials = 0;
  int passed = 0;
  /// Human-readable failing inputs, shrunk where the suite supports it. At most 10.
  std::vector<std::string> counterexamples;

  bool ok() const { return passed == trials; }
};

struct HarnessReport {
  std::uint64_t seed = 0;
  std::vector<SuiteReport> suites;

  bool ok() const;
};

SuiteReport run_unidirectional_suite(const HarnessConfig& config);
SuiteReport run_oracle_equivalence_suite(const HarnessConfig& config);
SuiteReport run_coverage_monotonicity_suite(const HarnessConfig& config);

HarnessReport property_harness(const HarnessConfig& config);

/// JSON document in the same report layout the CLI prints.
std::string to_json(const HarnessReport& report);

}  // namespace teamalloc::oracle
