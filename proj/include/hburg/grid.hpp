#pragma once

#include "hburg/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hburg {

/// Uniform node-centred mesh on [xmin, xmax] with n >= 8 nodes.
class Grid {
public:
  /// Throws ParameterError for n < 8, non-finite or inverted endpoints.
  Grid(double xmin, double xmax, std::size_t n);

  double xmin() const noexcept { return xmin_; }
  double xmax() const noexcept { return xmax_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double dx() const noexcept { return dx_; }

  double x(std::size_t i) const noexcept { return nodes_[i]; }
  std::span<const double> nodes() const noexcept { return nodes_; }

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  double xmin_;
  double xmax_;
  double dx_;
  std::vector<double> nodes_;
};

/// Field pair (v, w = v_t) at time t. Both fields vanish at the two end nodes.
struct GridState {
  Grid grid;
  double t = 0.0;
  std::vector<double> v;
  std::vector<double> w;

  static GridState zero(const Grid& grid, double t = 0.0);
};

/// Throws ConfigError unless both ends lie at least L + c t_end + 10 dx from the origin.
void check_domain_margin(const Grid& grid, const model::ModelParams& params, double t_end);

/// Trapezoidal integral of f over the grid.
double trapezoid(const Grid& grid, std::span<const double> f);

/// Trapezoidal integral of a * b over the grid.
double trapezoid_dot(const Grid& grid, std::span<const double> a, std::span<const double> b);

} // namespace hburg
