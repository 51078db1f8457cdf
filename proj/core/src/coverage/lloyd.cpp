#include "teamalloc/coverage/lloyd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "teamalloc/coverage/voronoi.hpp"
#include "teamalloc/error.hpp"

namespace teamalloc::coverage {
namespace {

struct Partition {
  std::vector<int> owner;
  std::vector<double> nearest_d2;
  double cost = 0.0;
};

Partition partition(const std::vector<Point>& robots, const CoverageField& field) {
  const auto centers = field.centers();
  const auto masses = field.masses();
  Partition p;
  p.owner.resize(centers.size());
  p.nearest_d2.resize(centers.size());
  for (std::size_t cell = 0; cell < centers.size(); ++cell) {
    int best = 0;
    double best_d = squared_distance(robots[0], centers[cell]);
    for (std::size_t i = 1; i < robots.size(); ++i) {
      const double d = squared_distance(robots[i], centers[cell]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    p.owner[cell] = best;
    p.nearest_d2[cell] = best_d;
    p.cost += best_d * masses[cell];
  }
  return p;
}

std::vector<int> empty_robots(const Partition& p, std::size_t robots) {
  std::vector<int> owned(robots, 0);
  for (int o : p.owner) ++owned[static_cast<std::size_t>(o)];
  std::vector<int> out;
  for (std::size_t i = 0; i < robots; ++i) {
    if (owned[i] == 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

Point clamp_to(const Domain& d, Point p) {
  return {std::clamp(p.x, d.bounds().x_min, d.bounds().x_max),
          std::clamp(p.y, d.bounds().y_min, d.bounds().y_max)};
}

// Gives every robot at least one cell. Returns the repaired partition.
Partition repair_empty_cells(std::vector<Point>& robots, const CoverageField& field, Partition p) {
  const Domain& domain = field.domain();
  const double hx = 0.5 * domain.cell_width();
  const double hy = 0.5 * domain.cell_height();
  const Point nudges[] = {{hx, 0.0}, {-hx, 0.0}, {0.0, hy}, {0.0, -hy}};
  std::size_t repairs = 0;
  for (std::vector<int> empty = empty_robots(p, robots.size()); !empty.empty();
       empty = empty_robots(p, robots.size())) {
    if (++repairs > 4 * robots.size()) {
      throw DegenerateRegion("could not give every robot a grid cell");
    }
    const auto i = static_cast<std::size_t>(empty.front());
    const Point original = robots[i];
    bool fixed = false;
    for (const Point& nudge : nudges) {
      robots[i] = clamp_to(domain, original + nudge);
      Partition trial = partition(robots, field);
      if (std::find(trial.owner.begin(), trial.owner.end(), static_cast<int>(i)) !=
          trial.owner.end()) {
        p = std::move(trial);
        fixed = true;
        break;
      }
    }
    if (fixed) continue;
    // The worst-served cell is strictly closer to a robot placed at its centre.
    const auto masses = field.masses();
    std::size_t worst = 0;
    double worst_cost = -1.0;
    for (std::size_t cell = 0; cell < p.owner.size(); ++cell) {
      const double c = p.nearest_d2[cell] * masses[cell];
      if (c > worst_cost) {
        worst_cost = c;
        worst = cell;
      }
    }
    robots[i] = field.centers()[worst];
    p = partition(robots, field);
  }
  return p;
}

}  // namespace

CVTResult lloyd(std::vector<Point> robots, const CoverageField& field, const LloydOptions& options) {
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("Lloyd tolerance must be > 0");
  if (options.max_iterations < 1) throw std::invalid_argument("Lloyd needs max_iterations >= 1");
  for (const Point& p : robots) {
    if (!field.domain().contains(p)) throw std::invalid_argument("robot outside the domain");
  }

  CVTResult result;
  if (robots.empty()) {
    result.cost = empty_team_cost(field);
    result.cost_history = {result.cost};
    result.converged = true;
    return result;
  }
  if (robots.size() > static_cast<std::size_t>(field.domain().cells())) {
    throw std::invalid_argument("more robots than grid cells");
  }

  const auto centers = field.centers();
  const auto masses = field.masses();
  std::vector<double> mass(robots.size());
  std::vector<Point> moment(robots.size());
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    Partition p = repair_empty_cells(robots, field, partition(robots, field));
    result.cost_history.push_back(p.cost);

    std::fill(mass.begin(), mass.end(), 0.0);
    std::fill(moment.begin(), moment.end(), Point{});
    for (std::size_t cell = 0; cell < p.owner.size(); ++cell) {
      const auto i = static_cast<std::size_t>(p.owner[cell]);
      mass[i] += masses[cell];
      moment[i] = moment[i] + masses[cell] * centers[cell];
    }
    double displacement = 0.0;
    for (std::size_t i = 0; i < robots.size(); ++i) {
      const Point c{moment[i].x / mass[i], moment[i].y / mass[i]};
      displacement = std::max(displacement, std::sqrt(squared_distance(c, robots[i])));
      robots[i] = c;
    }
    result.iterations = iter + 1;
    if (displacement < options.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.cost = locational_cost(robots, field);
  result.cost_history.push_back(result.cost);
  result.positions = std::move(robots);
  return result;
}

}  // namespace teamalloc::coverage
