#include "hburg/grid.hpp"

#include "hburg/error.hpp"
#include "hburg/kernels.hpp"

#include <cmath>
#include <sstream>

namespace hburg {

Grid::Grid(double xmin, double xmax, std::size_t n) : xmin_(xmin), xmax_(xmax), dx_(0.0) {
  if (!std::isfinite(xmin) || !std::isfinite(xmax)) {
    throw ParameterError("grid endpoints must be finite");
  }
  if (!(xmax > xmin)) {
    throw ParameterError("grid requires xmax > xmin");
  }
  if (n < 8) {
    throw ParameterError("grid requires at least 8 nodes");
  }
  dx_ = (xmax - xmin) / static_cast<double>(n - 1);
  nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes_[i] = xmin + static_cast<double>(i) * dx_;
  }
}

GridState GridState::zero(const Grid& grid, double t) {
  return GridState{grid, t, std::vector<double>(grid.size(), 0.0), std::vector<double>(grid.size(), 0.0)};
}

void check_domain_margin(const Grid& grid, const model::ModelParams& params, double t_end) {
  const double reach = params.L() + params.c() * t_end + 10.0 * grid.dx();
  if (grid.xmax() < reach || grid.xmin() > -reach) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "grid [" << grid.xmin() << ", " << grid.xmax() << "] does not clear the support bound L + c t_end + 10 dx = "
        << reach << " for t_end = " << t_end;
    throw ConfigError(msg.str());
  }
}

double trapezoid(const Grid& grid, std::span<const double> f) {
  const std::size_t n = f.size();
  if (n == 0) {
    return 0.0;
  }
  const double interior = kernels::active().sum(f);
  return grid.dx() * (interior - 0.5 * (f[0] + f[n - 1]));
}

double trapezoid_dot(const Grid& grid, std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  if (n == 0) {
    return 0.0;
  }
  const double interior = kernels::active().dot(a, b);
  return grid.dx() * (interior - 0.5 * (a[0] * b[0] + a[n - 1] * b[n - 1]));
}

} // namespace hburg
