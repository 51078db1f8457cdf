#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "teamalloc/coverage/geometry.hpp"
#include "teamalloc/coverage/lloyd.hpp"
#include "teamalloc/mission.hpp"
#include "teamalloc/random.hpp"

namespace teamalloc::coverage {

/// Mission evaluators backed by the coverage mission: F(n) = -L(n, c) at a CVT c.
class CoverageEvaluator : public MissionEvaluator {
 public:
  virtual const CoverageField& field() const = 0;
  /// Robot positions the team holds with `n` agents. Throws DomainError where
  /// evaluate(n) would.
  virtual std::vector<Point> configuration(int n) const = 0;
};

std::vector<Point> random_positions(const Domain& domain, int n, Rng& rng);

/// Lowest-cost CVT among `restarts` Lloyd runs from uniform random starts.
/// Restart r draws from make_rng(seed, {n, r}).
CVTResult best_cvt(const CoverageField& field, int n, int restarts, std::uint64_t seed,
                   const LloydOptions& lloyd_options);

struct TabulationOptions {
  int max_agents = 10;
  int restarts = 5;
  std::uint64_t seed = 0;
  LloydOptions lloyd;
  /// Also record F(0) from the empty-team cost so teams may be emptied.
  bool include_empty = false;
};

struct CoverageTable {
  TabulatedEvaluator evaluator;
  /// CVT positions for each tabulated n, indexed by n - evaluator.domain_min().
  std::vector<std::vector<Point>> configurations;
};

/// F(n) = -(lowest CVT cost over the restarts) for n = 1..max_agents.
CoverageTable tabulate_coverage_F(const CoverageField& field, const TabulationOptions& options);

/// Concavity slack for coverage tables: Lloyd only finds local CVTs, so
/// diminishing returns hold to within 1e-3 * |F(1)|.
double coverage_concavity_tolerance(const MissionEvaluator& evaluator);

class TabulatedCoverageEvaluator final : public CoverageEvaluator {
 public:
  TabulatedCoverageEvaluator(std::shared_ptr<const CoverageField> field, CoverageTable table);

  double evaluate(int n) const override { return table_.evaluator.evaluate(n); }
  int domain_min() const override { return table_.evaluator.domain_min(); }
  int domain_max() const override { return table_.evaluator.domain_max(); }
  std::string describe() const override;

  const CoverageField& field() const override { return *field_; }
  std::vector<Point> configuration(int n) const override;
  const CoverageTable& table() const { return table_; }

 private:
  std::shared_ptr<const CoverageField> field_;
  CoverageTable table_;
};

/// A team's robots sitting at a CVT.
struct CoverageTeamState {
  std::vector<Point> positions;
  double cost = 0.0;
};

struct TransferOutcome {
  double delta = 0.0;  // marginal benefit (gain) or marginal cost (loss) in F
  CVTResult cvt;       // configuration after re-converging
};

/// Gain in F from receiving one robot: it is dropped uniformly at random
/// (drawn from make_rng(seed)) and Lloyd re-converges from [c, p_new].
TransferOutcome coverage_transfer_benefit(const CoverageTeamState& recipient,
                                          const CoverageField& field, std::uint64_t seed,
                                          const LloydOptions& lloyd_options = {});

/// Loss in F from giving one robot away: the robot with the least Voronoi mass
/// leaves and Lloyd re-converges. Throws std::invalid_argument for an empty team.
TransferOutcome coverage_transfer_cost(const CoverageTeamState& donor, const CoverageField& field,
                                       const LloydOptions& lloyd_options = {});

/// Index of the robot whose Voronoi cell carries the least density mass (lowest index on ties).
std::size_t least_massive_robot(std::span<const Point> robots, const CoverageField& field);

/// Stateful evaluator that prices transfers by re-running Lloyd around the
/// team's current CVT, the way a live team would. It only answers for the
/// current count and its two neighbours; commit() moves it to a neighbour.
class TransferCoverageEvaluator final : public CoverageEvaluator {
 public:
  TransferCoverageEvaluator(std::shared_ptr<const CoverageField> field, int initial_count,
                            std::uint64_t seed, int restarts, LloydOptions lloyd_options);

  double evaluate(int n) const override;
  int domain_min() const override { return std::max(0, count_ - 1); }
  int domain_max() const override { return count_ + 1; }
  std::string describe() const override;
  void commit(int n) override;

  const CoverageField& field() const override { return *field_; }
  std::vector<Point> configuration(int n) const override;
  int count() const { return count_; }

 private:
  const CVTResult& neighbour(int n) const;

  std::shared_ptr<const CoverageField> field_;
  std::uint64_t seed_;
  LloydOptions lloyd_;
  int count_;
  int version_ = 0;
  CoverageTeamState state_;
  mutable std::optional<CVTResult> gained_;
  mutable std::optional<CVTResult> lost_;
};

}  // namespace teamalloc::coverage
