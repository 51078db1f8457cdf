#pragma once

#include <span>
#include <vector>

#include "teamalloc/coverage/geometry.hpp"

namespace teamalloc::coverage {

/// Nearest-robot map over the grid: the discrete Voronoi partition.
struct VoronoiAssignment {
  int robots = 0;
  /// owner[cell] is a 0-based robot index; empty when there are no robots.
  std::vector<int> owner;

  /// Number of cells owned by each robot.
  std::vector<int> cell_counts() const;
};

/// Each cell goes to the robot closest to its centre, lowest index on ties.
VoronoiAssignment assign_voronoi(std::span<const Point> robots, const Domain& domain);

/// Grid quadrature of sum_cells min_i |p_i - q|^2 phi(q) dA. With no robots this
/// is the empty-team convention diam(D)^2 * total mass.
double locational_cost(std::span<const Point> robots, const CoverageField& field);

/// Locational cost of a team with no robots: every point is charged the
/// squared domain diameter.
double empty_team_cost(const CoverageField& field);

/// Density mass of each robot's cell set.
std::vector<double> voronoi_masses(const VoronoiAssignment& assignment, const CoverageField& field);

/// Density-weighted centroid of each robot's cells. Throws DegenerateRegion if a
/// robot owns no cell.
std::vector<Point> centroids(const VoronoiAssignment& assignment, const CoverageField& field);

/// Gradient of locational_cost with respect to each robot position,
/// 2 * m_i * (p_i - c_i), for a fixed partition.
std::vector<Point> cost_gradient(std::span<const Point> robots, const CoverageField& field);

}  // namespace teamalloc::coverage
