#include "eswp/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eswp {

std::vector<double> dft_wavenumbers(std::size_t n, double length) {
  if (n == 0 || n % 2 != 0) {
    throw std::invalid_argument("dft_wavenumbers: n must be even and positive");
  }
  if (!(length > 0.0)) {
    throw std::invalid_argument("dft_wavenumbers: length must be positive");
  }
  std::vector<double> q(n);
  const double base = 2.0 * std::numbers::pi / length;
  const auto half = static_cast<long>(n / 2);
  for (std::size_t i = 0; i < n; ++i) {
    long f = static_cast<long>(i);
    if (f >= half) f -= static_cast<long>(n);
    q[i] = base * static_cast<double>(f);
  }
  return q;
}

namespace {

void check_axis(const char* name, std::size_t n, double spacing) {
  if (n < 8 || n % 2 != 0) {
    throw std::invalid_argument(std::string("grid: ") + name +
                                " point count must be even and >= 8, got " +
                                std::to_string(n));
  }
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw std::invalid_argument(std::string("grid: ") + name +
                                " spacing must be positive");
  }
}

}  // namespace

Grid::Grid(std::size_t nx, std::size_t nz, double dx, double dz, double x_min,
           double z_min_dom)
    : nx_(nx), nz_(nz), dx_(dx), dz_(dz), x_min_(x_min), z_min_dom_(z_min_dom) {
  check_axis("nx", nx, dx);
  check_axis("nz", nz, dz);
  if (!std::isfinite(x_min) || !std::isfinite(z_min_dom)) {
    throw std::invalid_argument("grid: domain corners must be finite");
  }
  x_.resize(nx);
  z_.resize(nz);
  for (std::size_t i = 0; i < nx; ++i) x_[i] = x_min + static_cast<double>(i) * dx;
  for (std::size_t j = 0; j < nz; ++j) z_[j] = z_min_dom + static_cast<double>(j) * dz;
  qx_ = dft_wavenumbers(nx, lx());
  qz_ = dft_wavenumbers(nz, lz());
}

Grid Grid::production() {
  return Grid(kProductionPoints, kProductionPoints, kProductionSpacing,
              kProductionSpacing, kProductionXMin, kProductionZMin);
}

double Grid::dqx() const { return 2.0 * std::numbers::pi / lx(); }
double Grid::dqz() const { return 2.0 * std::numbers::pi / lz(); }

bool Grid::operator==(const Grid& other) const {
  return nx_ == other.nx_ && nz_ == other.nz_ && dx_ == other.dx_ &&
         dz_ == other.dz_ && x_min_ == other.x_min_ &&
         z_min_dom_ == other.z_min_dom_;
}

}  // namespace eswp
