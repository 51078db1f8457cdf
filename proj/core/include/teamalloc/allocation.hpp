#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "teamalloc/mission.hpp"

namespace teamalloc {

/// One team: ids run 1..m, weight is the mission importance w_k > 0.
struct TeamSpec {
  int id = 0;
  double weight = 1.0;
  EvaluatorPtr evaluator;
};

/// Throws std::invalid_argument unless ids are exactly 1..m in order, weights
/// are positive and finite, and every evaluator is set.
void validate_teams(std::span<const TeamSpec> teams);

/// Agent counts per team. The total is fixed at construction; every operation
/// that moves agents produces a new Allocation with the same total.
class Allocation {
 public:
  Allocation() = default;
  /// Throws std::invalid_argument on negative counts.
  explicit Allocation(std::vector<int> counts);

  int teams() const { return static_cast<int>(counts_.size()); }
  int total() const { return total_; }
  /// Count of team `id` (1-based).
  int count(int id) const { return counts_.at(static_cast<std::size_t>(id - 1)); }
  const std::vector<int>& counts() const { return counts_; }

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation& a, const Allocation& b) { return a.counts_ <=> b.counts_; }

 private:
  std::vector<int> counts_;
  int total_ = 0;
};

/// Throws std::invalid_argument if `alloc` does not match `teams` or a count is below `min_team_size`.
void validate_allocation(std::span<const TeamSpec> teams, const Allocation& alloc,
                         int min_team_size);

/// Undirected graph of potential collaborations between teams 1..m.
class TeamGraph {
 public:
  /// Edges are normalized to (lo, hi) and deduplicated. Throws on self-loops or
  /// ids outside 1..m.
  TeamGraph(int teams, std::vector<std::pair<int, int>> edges);
  static TeamGraph complete(int teams);

  int teams() const { return teams_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int a, int b) const;
  bool is_complete() const;

 private:
  int teams_;
  std::vector<std::pair<int, int>> edges_;
};

/// Marginal benefit B = F(n+1) - F(n).
double marginal_benefit(const MissionEvaluator& evaluator, int n);
/// Marginal cost C = F(n) - F(n-1). Throws std::invalid_argument for n == 0.
double marginal_cost(const MissionEvaluator& evaluator, int n);

/// Weighted Hamilton's rule w_r * B_r > w_d * C_d, the division-free form of
/// (w_r / w_d) * B_r > C_d. Throws ContractViolation if the donor is at or below
/// `min_team_size` or a count is negative.
bool hamilton_allows(const TeamSpec& donor, int donor_count, const TeamSpec& recipient,
                     int recipient_count, int min_team_size = 1);

/// A transfer allowed by Hamilton's rule, annotated with the quantities that justify it.
struct FilteredEdge {
  int donor = 0;
  int recipient = 0;
  double benefit = 0.0;   // B of the recipient
  double cost = 0.0;      // C of the donor
  double net_gain = 0.0;  // w_r * B - w_d * C, always > 0

  friend bool operator==(const FilteredEdge&, const FilteredEdge&) = default;
};

/// Directed graph of pairwise-beneficial transfers. Edges are sorted by (donor, recipient).
class FilteredGraph {
 public:
  FilteredGraph() = default;
  FilteredGraph(int teams, std::vector<FilteredEdge> edges);

  int teams() const { return teams_; }
  const std::vector<FilteredEdge>& edges() const { return edges_; }
  bool empty() const { return edges_.empty(); }
  const FilteredEdge* find(int donor, int recipient) const;
  /// Edges leaving `donor` (its outgoing candidates).
  std::vector<FilteredEdge> outgoing(int donor) const;
  /// Edges entering `recipient` (its incoming candidates).
  std::vector<FilteredEdge> incoming(int recipient) const;

 private:
  int teams_ = 0;
  std::vector<FilteredEdge> edges_;
};

/// Applies Hamilton's rule to both directions of every edge. Teams at
/// `min_team_size` are never donors. If both directions pass (impossible for
/// concave evaluators) only the larger net gain is kept, lower donor id on ties.
FilteredGraph filter_graph(const TeamGraph& graph, std::span<const TeamSpec> teams,
                           const Allocation& alloc, int min_team_size = 1);

/// Net gain of donor -> recipient, recomputed from the evaluators. Both bidding
/// rounds price a transfer with the same expression. Throws ContractViolation
/// if the edge is not in `filtered`.
double outgoing_bid(std::span<const TeamSpec> teams, const Allocation& alloc,
                    const FilteredGraph& filtered, int donor, int recipient);
double incoming_bid(std::span<const TeamSpec> teams, const Allocation& alloc,
                    const FilteredGraph& filtered, int donor, int recipient);

struct Bid {
  int team = 0;  // the counterpart being bid on
  double value = 0.0;
};

/// Argmax over bids, lowest team id on exact ties. nullopt for no bids.
std::optional<int> select_outgoing(std::span<const Bid> bids);
std::optional<int> select_incoming(std::span<const Bid> bids);

struct Transfer {
  int donor = 0;
  int recipient = 0;

  friend bool operator==(const Transfer&, const Transfer&) = default;
  friend auto operator<=>(const Transfer&, const Transfer&) = default;
};

/// Mutually agreed single-agent transfers, sorted by donor.
struct CollaborationPlan {
  std::vector<Transfer> transfers;

  bool empty() const { return transfers.empty(); }
  friend bool operator==(const CollaborationPlan&, const CollaborationPlan&) = default;
};

/// Runs both bidding rounds on `filtered` and keeps k -> l iff l is k's best
/// outgoing choice and k is l's best incoming choice.
CollaborationPlan build_plan(const FilteredGraph& filtered);

/// Sum of w_k * F_k(n_k), accumulated in team-id order.
double global_objective(std::span<const TeamSpec> teams, const Allocation& alloc);

/// Moves one agent along every transfer. Throws ContractViolation, leaving
/// `alloc` untouched, if a donor is at `min_team_size` or a team donates or
/// receives more than once.
Allocation apply_plan(const Allocation& alloc, const CollaborationPlan& plan,
                      int min_team_size = 1);

}  // namespace teamalloc
