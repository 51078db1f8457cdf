#pragma once

#include <vector>

#include "teamalloc/coverage/geometry.hpp"

namespace teamalloc::coverage {

struct LloydOptions {
  double tolerance = 1e-6;  // stop once no robot moves farther than this
  int max_iterations = 500;
};

struct CVTResult {
  std::vector<Point> positions;
  double cost = 0.0;  // locational_cost(positions)
  int iterations = 0;
  bool converged = false;
  /// Cost before each Lloyd move, followed by the final cost. Non-increasing.
  std::vector<double> cost_history;
};

/// Discrete Lloyd iteration p <- centroid(Voronoi cell of p) on the grid.
///
/// A robot whose cell is empty (for example two robots quantized onto the same
/// spot) is nudged half a cell width; if it still owns nothing it is moved to
/// the centre of the cell currently contributing the most cost. Neither repair
/// can raise the cost. With no robots the result is the empty-team cost.
/// Throws std::invalid_argument for robots outside the domain or bad options.
CVTResult lloyd(std::vector<Point> robots, const CoverageField& field,
                const LloydOptions& options = {});

}  // namespace teamalloc::coverage
