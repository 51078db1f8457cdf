#include "teamalloc/oracle.hpp"

#include <stdexcept>
#include <string>

#include "teamalloc/error.hpp"

namespace teamalloc::oracle {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) is divisible by i at every step
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::uint64_t AllocationSpace::size() const {
  if (!feasible()) return 0;
  return binomial(total - teams * min_per_team + teams - 1, teams - 1);
}

void for_each_allocation(const AllocationSpace& space,
                         const std::function<bool(std::span<const int>)>& visit) {
  if (!space.feasible()) return;
  const int m = space.teams;
  const int lo = space.min_per_team;
  std::vector<int> n(static_cast<std::size_t>(m), lo);
  n.back() = space.total - (m - 1) * lo;
  while (true) {
    if (!visit(n)) return;
    // Find the rightmost non-final slot that can grow: the tail after it must
    // still hold at least `lo` per slot after giving one away.
    int i = m - 2;
    int tail = n.back();
    while (i >= 0) {
      if (tail - 1 >= (m - 1 - i) * lo) break;
      tail += n[static_cast<std::size_t>(i)];
      --i;
    }
    if (i < 0) return;
    ++n[static_cast<std::size_t>(i)];
    --tail;
    for (int j = i + 1; j < m - 1; ++j) {
      n[static_cast<std::size_t>(j)] = lo;
      tail -= lo;
    }
    n.back() = tail;
  }
}

std::vector<Allocation> enumerate_allocations(const AllocationSpace& space) {
  std::vector<Allocation> out;
  out.reserve(static_cast<std::size_t>(space.size()));
  for_each_allocation(space, [&](std::span<const int> n) {
    out.emplace_back(std::vector<int>(n.begin(), n.end()));
    return true;
  });
  return out;
}

OptimalAllocation brute_force_optimal(std::span<const TeamSpec> teams,
                                      const AllocationSpace& space, const OracleLimits& limits) {
  if (space.teams != static_cast<int>(teams.size())) {
    throw std::invalid_argument("space has " + std::to_string(space.teams) + " teams, got " +
                                std::to_string(teams.size()) + " team specs");
  }
  if (!space.feasible()) throw std::invalid_argument("allocation space is empty");
  if (space.total > limits.max_total || space.teams > limits.max_teams) {
    throw OracleLimitExceeded("oracle limited to N <= " + std::to_string(limits.max_total) +
                              " and m <= " + std::to_string(limits.max_teams) + "; got N=" +
                              std::to_string(space.total) + ", m=" + std::to_string(space.teams));
  }
  validate_teams(teams);

  // Per-team weighted values are tabulated once; the scan is then pure lookups.
  const int top = space.total - (space.teams - 1) * space.min_per_team;
  std::vector<std::vector<double>> weighted(teams.size());
  for (std::size_t k = 0; k < teams.size(); ++k) {
    weighted[k].resize(static_cast<std::size_t>(top) + 1, 0.0);
    for (int n = space.min_per_team; n <= top; ++n) {
      weighted[k][static_cast<std::size_t>(n)] = teams[k].weight * teams[k].evaluator->evaluate(n);
    }
  }

  std::vector<int> best;
  double best_value = 0.0;
  for_each_allocation(space, [&](std::span<const int> n) {
    double v = 0.0;
    for (std::size_t k = 0; k < n.size(); ++k) v += weighted[k][static_cast<std::size_t>(n[k])];
    if (best.empty() || v > best_value) {
      best.assign(n.begin(), n.end());
      best_value = v;
    }
    return true;
  });
  return {Allocation(std::move(best)), best_value};
}

}  // namespace teamalloc::oracle
