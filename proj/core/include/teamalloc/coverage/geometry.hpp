#pragma once

#include <span>
#include <vector>

namespace teamalloc::coverage {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
};

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct Bounds {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;

  friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Axis-aligned rectangle discretized into nx * ny equal cells. Cell (ix, iy)
/// has flat index iy * nx + ix; row iy = 0 is at y_min.
class Domain {
 public:
  /// Throws std::invalid_argument for degenerate bounds or fewer than 2 cells per axis.
  explicit Domain(Bounds bounds = {}, int nx = 100, int ny = 100);

  const Bounds& bounds() const { return bounds_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int cells() const { return nx_ * ny_; }
  double cell_width() const { return (bounds_.x_max - bounds_.x_min) / nx_; }
  double cell_height() const { return (bounds_.y_max - bounds_.y_min) / ny_; }
  double cell_area() const { return cell_width() * cell_height(); }
  /// Length of the rectangle's diagonal.
  double diameter() const;

  Point cell_center(int ix, int iy) const;
  Point cell_center(int flat) const { return cell_center(flat % nx_, flat / nx_); }
  bool contains(Point p) const;

 private:
  Bounds bounds_;
  int nx_;
  int ny_;
};

/// exp(-(qx^2/sx^2 + qy^2/sy^2)), the peaked density centred at the origin.
double density_gaussian(Point q, double sigma_x, double sigma_y);

/// Importance density phi(q) > 0 over the domain.
class DensityField {
 public:
  /// Throws std::invalid_argument unless both sigmas are > 0.
  static DensityField gaussian(double sigma_x, double sigma_y);
  /// Per-cell values in Domain flat order; all must be > 0.
  static DensityField tabulated(int nx, int ny, std::vector<double> values);

  bool is_gaussian() const { return values_.empty(); }
  double sigma_x() const { return sigma_x_; }
  double sigma_y() const { return sigma_y_; }

  /// phi at every cell centre of `domain`. Tabulated fields must match its resolution.
  std::vector<double> sample(const Domain& domain) const;

 private:
  DensityField() = default;
  double sigma_x_ = 1.0;
  double sigma_y_ = 1.0;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> values_;
};

/// A domain with its density pre-sampled: cell centres and cell masses
/// phi(q) * dA are the quadrature nodes and weights for every coverage integral.
class CoverageField {
 public:
  CoverageField(Domain domain, DensityField density);

  const Domain& domain() const { return domain_; }
  const DensityField& density() const { return density_; }
  std::span<const Point> centers() const { return centers_; }
  std::span<const double> masses() const { return masses_; }
  double total_mass() const { return total_mass_; }

 private:
  Domain domain_;
  DensityField density_;
  std::vector<Point> centers_;
  std::vector<double> masses_;
  double total_mass_ = 0.0;
};

/// Throws std::invalid_argument if a robot lies outside the domain or two robots coincide.
void check_robot_config(std::span<const Point> robots, const Domain& domain);

}  // namespace teamalloc::coverage
