#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "teamalloc/allocation.hpp"

namespace teamalloc::oracle {

/// Compositions of `total` agents into `teams` parts, each at least `min_per_team`.
struct AllocationSpace {
  int teams = 1;
  int total = 0;
  int min_per_team = 1;

  bool feasible() const { return teams >= 1 && min_per_team >= 0 && total >= teams * min_per_team; }
  /// C(total - teams*min + teams - 1, teams - 1); 0 when infeasible.
  std::uint64_t size() const;
};

std::uint64_t binomial(int n, int k);

/// Visits every allocation once in lexicographic order. Nothing is visited for
/// an infeasible space. Return false from `visit` to stop early.
void for_each_allocation(const AllocationSpace& space,
                         const std::function<bool(std::span<const int>)>& visit);

std::vector<Allocation> enumerate_allocations(const AllocationSpace& space);

struct OracleLimits {
  int max_total = 20;
  int max_teams = 5;
};

struct OptimalAllocation {
  Allocation allocation;
  double value = 0.0;
};

/// Exhaustive maximum of sum w_k F_k(n_k) over the space. Among exact value
/// ties the lexicographically smallest allocation wins. Throws
/// OracleLimitExceeded above `limits` and std::invalid_argument for an
/// infeasible space or a team-count mismatch.
OptimalAllocation brute_force_optimal(std::span<const TeamSpec> teams,
                                      const AllocationSpace& space,
                                      const OracleLimits& limits = {});

}  // namespace teamalloc::oracle
