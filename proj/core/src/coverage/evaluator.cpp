#include "teamalloc/coverage/evaluator.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "teamalloc/coverage/voronoi.hpp"
#include "teamalloc/error.hpp"

namespace teamalloc::coverage {

std::vector<Point> random_positions(const Domain& domain, int n, Rng& rng) {
  const Bounds& b = domain.bounds();
  std::vector<Point> out(static_cast<std::size_t>(n));
  for (Point& p : out) {
    p.x = uniform_real(rng, b.x_min, b.x_max);
    p.y = uniform_real(rng, b.y_min, b.y_max);
  }
  return out;
}

CVTResult best_cvt(const CoverageField& field, int n, int restarts, std::uint64_t seed,
                   const LloydOptions& lloyd_options) {
  if (n < 0) throw std::invalid_argument("robot count must be >= 0");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  std::optional<CVTResult> best;
  for (int r = 0; r < restarts; ++r) {
    Rng rng = make_rng(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(r)});
    CVTResult cvt = lloyd(random_positions(field.domain(), n, rng), field, lloyd_options);
    if (!best || cvt.cost < best->cost) best = std::move(cvt);
    if (n <= 0) break;
  }
  return std::move(*best);
}

CoverageTable tabulate_coverage_F(const CoverageField& field, const TabulationOptions& options) {
  if (options.max_agents < 1) throw std::invalid_argument("max_agents must be >= 1");
  if (options.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  const int first = options.include_empty ? 0 : 1;
  std::vector<double> values;
  std::vector<std::string> provenance;
  std::vector<std::vector<Point>> configurations;
  for (int n = first; n <= options.max_agents; ++n) {
    if (n == 0) {
      values.push_back(-empty_team_cost(field));
      provenance.emplace_back("empty-team");
      configurations.emplace_back();
      continue;
    }
    const CVTResult best = best_cvt(field, n, options.restarts, options.seed, options.lloyd);
    values.push_back(-best.cost);
    char buf[128];
    std::snprintf(buf, sizeof buf, "cvt restarts=%d seed=%llu iterations=%d converged=%d",
                  options.restarts, static_cast<unsigned long long>(options.seed), best.iterations,
                  best.converged ? 1 : 0);
    provenance.emplace_back(buf);
    configurations.push_back(best.positions);
  }
  return CoverageTable{TabulatedEvaluator(first, std::move(values), std::move(provenance)),
                       std::move(configurations)};
}

double coverage_concavity_tolerance(const MissionEvaluator& evaluator) {
  return 1e-3 * std::abs(evaluator.evaluate(1));
}

TabulatedCoverageEvaluator::TabulatedCoverageEvaluator(std::shared_ptr<const CoverageField> field,
                                                       CoverageTable table)
    : field_(std::move(field)), table_(std::move(table)) {
  if (!field_) throw std::invalid_argument("coverage evaluator needs a field");
  const auto expected = static_cast<std::size_t>(table_.evaluator.domain_max() -
                                                 table_.evaluator.domain_min() + 1);
  if (table_.configurations.size() != expected) {
    throw std::invalid_argument("coverage table needs one configuration per entry");
  }
}

std::string TabulatedCoverageEvaluator::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "coverage-table(";
  if (field_->density().is_gaussian()) {
    os << "sigma_x=" << field_->density().sigma_x() << ", sigma_y=" << field_->density().sigma_y()
       << ", ";
  }
  os << "n=" << domain_min() << ".." << domain_max() << ")";
  return os.str();
}

std::vector<Point> TabulatedCoverageEvaluator::configuration(int n) const {
  if (!defined_at(n)) {
    throw DomainError("coverage table has no configuration for n=" + std::to_string(n));
  }
  return table_.configurations[static_cast<std::size_t>(n - domain_min())];
}

std::size_t least_massive_robot(std::span<const Point> robots, const CoverageField& field) {
  if (robots.empty()) throw std::invalid_argument("no robots to choose from");
  const std::vector<double> mass = voronoi_masses(assign_voronoi(robots, field.domain()), field);
  std::size_t best = 0;
  for (std::size_t i = 1; i < mass.size(); ++i) {
    if (mass[i] < mass[best]) best = i;
  }
  return best;
}

TransferOutcome coverage_transfer_benefit(const CoverageTeamState& recipient,
                                          const CoverageField& field, std::uint64_t seed,
                                          const LloydOptions& lloyd_options) {
  std::vector<Point> robots = recipient.positions;
  Rng rng = make_rng(seed);
  robots.push_back(random_positions(field.domain(), 1, rng).front());
  TransferOutcome out;
  out.cvt = lloyd(std::move(robots), field, lloyd_options);
  out.delta = recipient.cost - out.cvt.cost;
  return out;
}

TransferOutcome coverage_transfer_cost(const CoverageTeamState& donor, const CoverageField& field,
                                       const LloydOptions& lloyd_options) {
  if (donor.positions.empty()) throw std::invalid_argument("an empty team cannot give a robot away");
  std::vector<Point> robots = donor.positions;
  robots.erase(robots.begin() + static_cast<std::ptrdiff_t>(least_massive_robot(robots, field)));
  TransferOutcome out;
  out.cvt = lloyd(std::move(robots), field, lloyd_options);
  out.delta = out.cvt.cost - donor.cost;
  return out;
}

TransferCoverageEvaluator::TransferCoverageEvaluator(std::shared_ptr<const CoverageField> field,
                                                     int initial_count, std::uint64_t seed,
                                                     int restarts, LloydOptions lloyd_options)
    : field_(std::move(field)), seed_(seed), lloyd_(lloyd_options), count_(initial_count) {
  if (!field_) throw std::invalid_argument("coverage evaluator needs a field");
  if (initial_count < 0) throw std::invalid_argument("initial robot count must be >= 0");
  CVTResult start = best_cvt(*field_, initial_count, restarts, seed_, lloyd_);
  state_ = {std::move(start.positions), start.cost};
}

const CVTResult& TransferCoverageEvaluator::neighbour(int n) const {
  if (n == count_ + 1) {
    if (!gained_) {
      const auto draw_seed =
          make_rng(seed_, {0x6761696eULL, static_cast<std::uint64_t>(version_)})();
      gained_ = coverage_transfer_benefit(state_, *field_, draw_seed, lloyd_).cvt;
    }
    return *gained_;
  }
  if (n == count_ - 1 && count_ > 0) {
    if (!lost_) lost_ = coverage_transfer_cost(state_, *field_, lloyd_).cvt;
    return *lost_;
  }
  throw DomainError("transfer evaluator at n=" + std::to_string(count_) +
                    " cannot price n=" + std::to_string(n));
}

double TransferCoverageEvaluator::evaluate(int n) const {
  if (n == count_) return -state_.cost;
  return -neighbour(n).cost;
}

std::vector<Point> TransferCoverageEvaluator::configuration(int n) const {
  if (n == count_) return state_.positions;
  return neighbour(n).positions;
}

void TransferCoverageEvaluator::commit(int n) {
  if (n == count_) return;
  const CVTResult& next = neighbour(n);
  state_ = {next.positions, next.cost};
  count_ = n;
  ++version_;
  gained_.reset();
  lost_.reset();
}

std::string TransferCoverageEvaluator::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "coverage-transfer(";
  if (field_->density().is_gaussian()) {
    os << "sigma_x=" << field_->density().sigma_x() << ", sigma_y=" << field_->density().sigma_y()
       << ", ";
  }
  os << "n=" << count_ << ")";
  return os.str();
}

}  // namespace teamalloc::coverage
