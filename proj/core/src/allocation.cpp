#include "teamalloc/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "teamalloc/error.hpp"

namespace teamalloc {
namespace {

const TeamSpec& team_at(std::span<const TeamSpec> teams, int id) {
  if (id < 1 || id > static_cast<int>(teams.size())) {
    throw ContractViolation("team id " + std::to_string(id) + " out of range");
  }
  return teams[static_cast<std::size_t>(id - 1)];
}

double net_gain(const TeamSpec& donor, int donor_count, const TeamSpec& recipient,
                int recipient_count) {
  return recipient.weight * marginal_benefit(*recipient.evaluator, recipient_count) -
         donor.weight * marginal_cost(*donor.evaluator, donor_count);
}

std::optional<int> argmax_lowest_id(std::span<const Bid> bids) {
  std::optional<int> best;
  double best_value = 0.0;
  for (const Bid& bid : bids) {
    if (!best || bid.value > best_value || (bid.value == best_value && bid.team < *best)) {
      best = bid.team;
      best_value = bid.value;
    }
  }
  return best;
}

}  // namespace

void validate_teams(std::span<const TeamSpec> teams) {
  if (teams.empty()) throw std::invalid_argument("at least one team is required");
  for (std::size_t i = 0; i < teams.size(); ++i) {
    const TeamSpec& t = teams[i];
    if (t.id != static_cast<int>(i) + 1) {
      throw std::invalid_argument("team ids must be contiguous 1..m in order; position " +
                                  std::to_string(i + 1) + " has id " + std::to_string(t.id));
    }
    if (!(t.weight > 0.0) || !std::isfinite(t.weight)) {
      throw std::invalid_argument("team " + std::to_string(t.id) + " weight must be > 0");
    }
    if (!t.evaluator) {
      throw std::invalid_argument("team " + std::to_string(t.id) + " has no evaluator");
    }
  }
}

Allocation::Allocation(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw std::invalid_argument("agent counts must be non-negative");
  }
  total_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

void validate_allocation(std::span<const TeamSpec> teams, const Allocation& alloc,
                         int min_team_size) {
  if (alloc.teams() != static_cast<int>(teams.size())) {
    throw std::invalid_argument("allocation has " + std::to_string(alloc.teams()) +
                                " entries for " + std::to_string(teams.size()) + " teams");
  }
  for (int id = 1; id <= alloc.teams(); ++id) {
    if (alloc.count(id) < min_team_size) {
      throw std::invalid_argument("team " + std::to_string(id) + " holds " +
                                  std::to_string(alloc.count(id)) +
                                  " agents, below min_team_size " +
                                  std::to_string(min_team_size));
    }
  }
}

TeamGraph::TeamGraph(int teams, std::vector<std::pair<int, int>> edges) : teams_(teams) {
  if (teams < 1) throw std::invalid_argument("graph needs at least one team");
  for (auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("self-loop on team " + std::to_string(a));
    if (a < 1 || b < 1 || a > teams || b > teams) {
      throw std::invalid_argument("edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") references a team outside 1.." + std::to_string(teams));
    }
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

TeamGraph TeamGraph::complete(int teams) {
  std::vector<std::pair<int, int>> edges;
  for (int a = 1; a <= teams; ++a) {
    for (int b = a + 1; b <= teams; ++b) edges.emplace_back(a, b);
  }
  return TeamGraph(teams, std::move(edges));
}

bool TeamGraph::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges_.begin(), edges_.end(), std::pair{a, b});
}

bool TeamGraph::is_complete() const {
  return edges_.size() == static_cast<std::size_t>(teams_) * (teams_ - 1) / 2;
}

double marginal_benefit(const MissionEvaluator& evaluator, int n) {
  if (n < 0) throw std::invalid_argument("agent count must be non-negative");
  return evaluator.evaluate(n + 1) - evaluator.evaluate(n);
}

double marginal_cost(const MissionEvaluator& evaluator, int n) {
  if (n <= 0) throw std::invalid_argument("cannot compute the cost of losing an agent from an empty team");
  return evaluator.evaluate(n) - evaluator.evaluate(n - 1);
}

bool hamilton_allows(const TeamSpec& donor, int donor_count, const TeamSpec& recipient,
                     int recipient_count, int min_team_size) {
  if (donor_count < min_team_size + 1) {
    throw ContractViolation("team " + std::to_string(donor.id) + " with " +
                            std::to_string(donor_count) + " agents cannot donate (min_team_size " +
                            std::to_string(min_team_size) + ")");
  }
  if (recipient_count < 0) throw ContractViolation("negative recipient count");
  const double gain = recipient.weight * marginal_benefit(*recipient.evaluator, recipient_count);
  const double loss = donor.weight * marginal_cost(*donor.evaluator, donor_count);
  return gain > loss;
}

FilteredGraph::FilteredGraph(int teams, std::vector<FilteredEdge> edges)
    : teams_(teams), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(), [](const FilteredEdge& a, const FilteredEdge& b) {
    return std::pair{a.donor, a.recipient} < std::pair{b.donor, b.recipient};
  });
}

const FilteredEdge* FilteredGraph::find(int donor, int recipient) const {
  for (const FilteredEdge& e : edges_) {
    if (e.donor == donor && e.recipient == recipient) return &e;
  }
  return nullptr;
}

std::vector<FilteredEdge> FilteredGraph::outgoing(int donor) const {
  std::vector<FilteredEdge> out;
  for (const FilteredEdge& e : edges_) {
    if (e.donor == donor) out.push_back(e);
  }
  return out;
}

std::vector<FilteredEdge> FilteredGraph::incoming(int recipient) const {
  std::vector<FilteredEdge> out;
  for (const FilteredEdge& e : edges_) {
    if (e.recipient == recipient) out.push_back(e);
  }
  return out;
}

FilteredGraph filter_graph(const TeamGraph& graph, std::span<const TeamSpec> teams,
                           const Allocation& alloc, int min_team_size) {
  std::vector<FilteredEdge> kept;
  auto try_direction = [&](int d, int r) -> std::optional<FilteredEdge> {
    const int nd = alloc.count(d);
    const int nr = alloc.count(r);
    if (nd <= min_team_size) return std::nullopt;
    const TeamSpec& donor = team_at(teams, d);
    const TeamSpec& recipient = team_at(teams, r);
    if (!hamilton_allows(donor, nd, recipient, nr, min_team_size)) return std::nullopt;
    FilteredEdge e;
    e.donor = d;
    e.recipient = r;
    e.benefit = marginal_benefit(*recipient.evaluator, nr);
    e.cost = marginal_cost(*donor.evaluator, nd);
    e.net_gain = recipient.weight * e.benefit - donor.weight * e.cost;
    return e;
  };
  for (const auto& [a, b] : graph.edges()) {
    auto forward = try_direction(a, b);
    auto backward = try_direction(b, a);
    if (forward && backward) {
      kept.push_back(backward->net_gain > forward->net_gain ? *backward : *forward);
    } else if (forward) {
      kept.push_back(*forward);
    } else if (backward) {
      kept.push_back(*backward);
    }
  }
  return FilteredGraph(graph.teams(), std::move(kept));
}

double outgoing_bid(std::span<const TeamSpec> teams, const Allocation& alloc,
                    const FilteredGraph& filtered, int donor, int recipient) {
  if (!filtered.find(donor, recipient)) {
    throw ContractViolation("no filtered edge " + std::to_string(donor) + "->" +
                            std::to_string(recipient));
  }
  return net_gain(team_at(teams, donor), alloc.count(donor), team_at(teams, recipient),
                  alloc.count(recipient));
}

double incoming_bid(std::span<const TeamSpec> teams, const Allocation& alloc,
                    const FilteredGraph& filtered, int donor, int recipient) {
  return outgoing_bid(teams, alloc, filtered, donor, recipient);
}

std::optional<int> select_outgoing(std::span<const Bid> bids) { return argmax_lowest_id(bids); }

std::optional<int> select_incoming(std::span<const Bid> bids) { return argmax_lowest_id(bids); }

CollaborationPlan build_plan(const FilteredGraph& filtered) {
  const int m = filtered.teams();
  std::vector<std::optional<int>> best_recipient(static_cast<std::size_t>(m) + 1);
  std::vector<std::optional<int>> best_donor(static_cast<std::size_t>(m) + 1);
  std::vector<Bid> bids;
  for (int k = 1; k <= m; ++k) {
    bids.clear();
    for (const FilteredEdge& e : filtered.outgoing(k)) bids.push_back({e.recipient, e.net_gain});
    best_recipient[static_cast<std::size_t>(k)] = select_outgoing(bids);

    bids.clear();
    for (const FilteredEdge& e : filtered.incoming(k)) bids.push_back({e.donor, e.net_gain});
    best_donor[static_cast<std::size_t>(k)] = select_incoming(bids);
  }
  CollaborationPlan plan;
  for (int k = 1; k <= m; ++k) {
    const auto& l = best_recipient[static_cast<std::size_t>(k)];
    if (l && best_donor[static_cast<std::size_t>(*l)] == k) plan.transfers.push_back({k, *l});
  }
  return plan;
}

double global_objective(std::span<const TeamSpec> teams, const Allocation& alloc) {
  if (alloc.teams() != static_cast<int>(teams.size())) {
    throw ContractViolation("allocation does not match team list");
  }
  double sum = 0.0;
  for (const TeamSpec& t : teams) sum += t.weight * t.evaluator->evaluate(alloc.count(t.id));
  return sum;
}

Allocation apply_plan(const Allocation& alloc, const CollaborationPlan& plan, int min_team_size) {
  const int m = alloc.teams();
  std::vector<int> donated(static_cast<std::size_t>(m) + 1, 0);
  std::vector<int> received(static_cast<std::size_t>(m) + 1, 0);
  for (const Transfer& t : plan.transfers) {
    if (t.donor < 1 || t.donor > m || t.recipient < 1 || t.recipient > m || t.donor == t.recipient) {
      throw ContractViolation("invalid transfer " + std::to_string(t.donor) + "->" +
                              std::to_string(t.recipient));
    }
    if (++donated[static_cast<std::size_t>(t.donor)] > 1) {
      throw ContractViolation("team " + std::to_string(t.donor) + " donates more than once");
    }
    if (++received[static_cast<std::size_t>(t.recipient)] > 1) {
      throw ContractViolation("team " + std::to_string(t.recipient) + " receives more than once");
    }
    if (alloc.count(t.donor) <= min_team_size) {
      throw ContractViolation("team " + std::to_string(t.donor) + " is at min_team_size and cannot donate");
    }
  }
  std::vector<int> counts = alloc.counts();
  for (const Transfer& t : plan.transfers) {
    --counts[static_cast<std::size_t>(t.donor - 1)];
    ++counts[static_cast<std::size_t>(t.recipient - 1)];
  }
  return Allocation(std::move(counts));
}

}  // namespace teamalloc
