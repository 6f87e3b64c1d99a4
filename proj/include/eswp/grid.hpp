#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace eswp {

/// Discrete-Fourier angular wavenumbers for n samples over a periodic length:
/// q[i] = 2*pi*f(i)/length with f(i) = i for i < n/2 and i - n otherwise.
std::vector<double> dft_wavenumbers(std::size_t n, double length);

/// Uniform periodic 2D grid. Storage is row-major with z as the outer index,
/// so node (i, j) lives at j * nx + i. Immutable after construction.
class Grid {
 public:
  static constexpr std::size_t kProductionPoints = 512;
  static constexpr double kProductionSpacing = 0.083;
  static constexpr double kProductionXMin = -21.25;
  static constexpr double kProductionZMin = -2.0;

  Grid(std::size_t nx, std::size_t nz, double dx, double dz, double x_min,
       double z_min_dom);

  /// 512 x 512 nodes at spacing 0.083, x from -21.25, z from -2.
  static Grid production();

  std::size_t nx() const { return nx_; }
  std::size_t nz() const { return nz_; }
  std::size_t size() const { return nx_ * nz_; }
  double dx() const { return dx_; }
  double dz() const { return dz_; }
  double x_min() const { return x_min_; }
  double z_min_dom() const { return z_min_dom_; }
  double lx() const { return static_cast<double>(nx_) * dx_; }
  double lz() const { return static_cast<double>(nz_) * dz_; }
  double cell_area() const { return dx_ * dz_; }
  double dqx() const;
  double dqz() const;

  double x(std::size_t i) const { return x_[i]; }
  double z(std::size_t j) const { return z_[j]; }
  double qx(std::size_t i) const { return qx_[i]; }
  double qz(std::size_t j) const { return qz_[j]; }

  std::span<const double> xs() const { return x_; }
  std::span<const double> zs() const { return z_; }
  std::span<const double> qxs() const { return qx_; }
  std::span<const double> qzs() const { return qz_; }

  std::size_t index(std::size_t i, std::size_t j) const { return j * nx_ + i; }

  /// Same node counts, spacings and corners.
  bool operator==(const Grid& other) const;

 private:
  std::size_t nx_, nz_;
  double dx_, dz_, x_min_, z_min_dom_;
  std::vector<double> x_, z_, qx_, qz_;
};

inline Grid make_grid(std::size_t nx, std::size_t nz, double dx, double dz,
                      double x_min, double z_min_dom) {
  return Grid(nx, nz, dx, dz, x_min, z_min_dom);
}

}  // namespace eswp
