#include "teamalloc/coverage/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace teamalloc::coverage {

Domain::Domain(Bounds bounds, int nx, int ny) : bounds_(bounds), nx_(nx), ny_(ny) {
  if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min) ||
      !std::isfinite(bounds.x_min) || !std::isfinite(bounds.x_max) ||
      !std::isfinite(bounds.y_min) || !std::isfinite(bounds.y_max)) {
    throw std::invalid_argument("domain bounds must be finite with x_max > x_min and y_max > y_min");
  }
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least 2 cells per axis");
}

double Domain::diameter() const {
  return std::hypot(bounds_.x_max - bounds_.x_min, bounds_.y_max - bounds_.y_min);
}

Point Domain::cell_center(int ix, int iy) const {
  // (2i + 1) * extent / (2n) keeps the middle column of an odd grid exactly on
  // the axis of symmetry.
  return {bounds_.x_min + (2.0 * ix + 1.0) * (bounds_.x_max - bounds_.x_min) / (2.0 * nx_),
          bounds_.y_min + (2.0 * iy + 1.0) * (bounds_.y_max - bounds_.y_min) / (2.0 * ny_)};
}

bool Domain::contains(Point p) const {
  return p.x >= bounds_.x_min && p.x <= bounds_.x_max && p.y >= bounds_.y_min &&
         p.y <= bounds_.y_max;
}

double density_gaussian(Point q, double sigma_x, double sigma_y) {
  return std::exp(-(q.x * q.x / (sigma_x * sigma_x) + q.y * q.y / (sigma_y * sigma_y)));
}

DensityField DensityField::gaussian(double sigma_x, double sigma_y) {
  if (!(sigma_x > 0.0) || !(sigma_y > 0.0) || !std::isfinite(sigma_x) || !std::isfinite(sigma_y)) {
    throw std::invalid_argument("gaussian density needs sigma_x, sigma_y > 0");
  }
  DensityField f;
  f.sigma_x_ = sigma_x;
  f.sigma_y_ = sigma_y;
  return f;
}

DensityField DensityField::tabulated(int nx, int ny, std::vector<double> values) {
  if (nx < 2 || ny < 2 || values.size() != static_cast<std::size_t>(nx) * ny) {
    throw std::invalid_argument("tabulated density must hold nx * ny values");
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("density values must be positive and finite");
    }
  }
  DensityField f;
  f.nx_ = nx;
  f.ny_ = ny;
  f.values_ = std::move(values);
  return f;
}

std::vector<double> DensityField::sample(const Domain& domain) const {
  if (!is_gaussian()) {
    if (domain.nx() != nx_ || domain.ny() != ny_) {
      throw std::invalid_argument("tabulated density is " + std::to_string(nx_) + "x" +
                                  std::to_string(ny_) + " but the grid is " +
                                  std::to_string(domain.nx()) + "x" + std::to_string(domain.ny()));
    }
    return values_;
  }
  std::vector<double> out(static_cast<std::size_t>(domain.cells()));
  for (int i = 0; i < domain.cells(); ++i) {
    out[static_cast<std::size_t>(i)] = density_gaussian(domain.cell_center(i), sigma_x_, sigma_y_);
  }
  return out;
}

CoverageField::CoverageField(Domain domain, DensityField density)
    : domain_(domain), density_(std::move(density)) {
  const std::vector<double> phi = density_.sample(domain_);
  const double area = domain_.cell_area();
  centers_.resize(phi.size());
  masses_.resize(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (!(phi[i] > 0.0)) {
      throw std::invalid_argument("density underflows to zero inside the domain; widen sigma");
    }
    centers_[i] = domain_.cell_center(static_cast<int>(i));
    masses_[i] = phi[i] * area;
    total_mass_ += masses_[i];
  }
}

void check_robot_config(std::span<const Point> robots, const Domain& domain) {
  for (std::size_t i = 0; i < robots.size(); ++i) {
    if (!domain.contains(robots[i])) {
      throw std::invalid_argument("robot " + std::to_string(i + 1) + " lies outside the domain");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (robots[i] == robots[j]) {
        throw std::invalid_argument("robots " + std::to_string(j + 1) + " and " +
                                    std::to_string(i + 1) + " coincide");
      }
    }
  }
}

}  // namespace teamalloc::coverage
