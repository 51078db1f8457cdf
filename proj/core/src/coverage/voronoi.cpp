#include "teamalloc/coverage/voronoi.hpp"

#include <string>

#include "teamalloc/error.hpp"

namespace teamalloc::coverage {

std::vector<int> VoronoiAssignment::cell_counts() const {
  std::vector<int> counts(static_cast<std::size_t>(robots), 0);
  for (int o : owner) ++counts[static_cast<std::size_t>(o)];
  return counts;
}

VoronoiAssignment assign_voronoi(std::span<const Point> robots, const Domain& domain) {
  VoronoiAssignment out;
  out.robots = static_cast<int>(robots.size());
  if (robots.empty()) return out;
  out.owner.resize(static_cast<std::size_t>(domain.cells()));
  for (int cell = 0; cell < domain.cells(); ++cell) {
    const Point q = domain.cell_center(cell);
    int best = 0;
    double best_d = squared_distance(robots[0], q);
    for (std::size_t i = 1; i < robots.size(); ++i) {
      const double d = squared_distance(robots[i], q);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    out.owner[static_cast<std::size_t>(cell)] = best;
  }
  return out;
}

double empty_team_cost(const CoverageField& field) {
  const double diam = field.domain().diameter();
  return diam * diam * field.total_mass();
}

double locational_cost(std::span<const Point> robots, const CoverageField& field) {
  if (robots.empty()) return empty_team_cost(field);
  const auto centers = field.centers();
  const auto masses = field.masses();
  double sum = 0.0;
  for (std::size_t cell = 0; cell < centers.size(); ++cell) {
    double best_d = squared_distance(robots[0], centers[cell]);
    for (std::size_t i = 1; i < robots.size(); ++i) {
      const double d = squared_distance(robots[i], centers[cell]);
      if (d < best_d) best_d = d;
    }
    sum += best_d * masses[cell];
  }
  return sum;
}

std::vector<double> voronoi_masses(const VoronoiAssignment& assignment,
                                   const CoverageField& field) {
  std::vector<double> mass(static_cast<std::size_t>(assignment.robots), 0.0);
  const auto masses = field.masses();
  for (std::size_t cell = 0; cell < assignment.owner.size(); ++cell) {
    mass[static_cast<std::size_t>(assignment.owner[cell])] += masses[cell];
  }
  return mass;
}

std::vector<Point> centroids(const VoronoiAssignment& assignment, const CoverageField& field) {
  const auto n = static_cast<std::size_t>(assignment.robots);
  std::vector<double> mass(n, 0.0);
  std::vector<Point> moment(n);
  std::vector<int> owned(n, 0);
  const auto centers = field.centers();
  const auto masses = field.masses();
  for (std::size_t cell = 0; cell < assignment.owner.size(); ++cell) {
    const auto i = static_cast<std::size_t>(assignment.owner[cell]);
    mass[i] += masses[cell];
    moment[i] = moment[i] + masses[cell] * centers[cell];
    ++owned[i];
  }
  std::vector<Point> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (owned[i] == 0) {
      throw DegenerateRegion("robot " + std::to_string(i + 1) + " owns no grid cell");
    }
    out[i] = {moment[i].x / mass[i], moment[i].y / mass[i]};
  }
  return out;
}

std::vector<Point> cost_gradient(std::span<const Point> robots, const CoverageField& field) {
  const VoronoiAssignment assignment = assign_voronoi(robots, field.domain());
  const std::vector<double> mass = voronoi_masses(assignment, field);
  const std::vector<Point> c = centroids(assignment, field);
  std::vector<Point> grad(robots.size());
  for (std::size_t i = 0; i < robots.size(); ++i) {
    grad[i] = (2.0 * mass[i]) * (robots[i] - c[i]);
  }
  return grad;
}

}  // namespace teamalloc::coverage
