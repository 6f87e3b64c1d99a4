#pragma once

#include <vector>

#include "eswp/fft.hpp"
#include "eswp/grid.hpp"

namespace eswp {

/// Complex condensate amplitude sampled on a grid at a dimensionless time.
struct WaveField {
  Grid grid;
  std::vector<cplx> amps;
  double time = 0.0;

  explicit WaveField(Grid g, double t = 0.0)
      : grid(std::move(g)), amps(grid.size(), cplx{0.0, 0.0}), time(t) {}

  cplx& at(std::size_t i, std::size_t j) { return amps[grid.index(i, j)]; }
  const cplx& at(std::size_t i, std::size_t j) const {
    return amps[grid.index(i, j)];
  }
};

/// Fills a field from f(x, z) evaluated at every node.
template <typename F>
WaveField sample_field(const Grid& grid, F&& f, double time = 0.0) {
  WaveField psi(grid, time);
  for (std::size_t j = 0; j < grid.nz(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i)
      psi.at(i, j) = f(grid.x(i), grid.z(j));
  return psi;
}

/// Gaussian amplitude whose density has standard deviation sigma along both
/// axes, centered at (x0, z0), multiplied by exp(i*qx0*x). Normalized.
WaveField gaussian_packet(const Grid& grid, double x0, double z0, double sigma,
                          double qx0 = 0.0);

/// Sum of |psi|^2 dx dz.
double norm(const WaveField& psi);

/// Rescales to unit norm, leaving the pointwise phase untouched. Throws
/// std::domain_error on a zero or non-finite norm.
WaveField normalize(WaveField psi);
void normalize_in_place(WaveField& psi);

bool all_finite(const WaveField& psi);

/// Continuum-scaled spectrum on the (qx, qz) grid:
///   coeffs(qx, qz) = dx dz sum psi(x, z) exp(-i (qx x + qz z)),
/// so that sum |coeffs|^2 dqx dqz / (2 pi)^2 equals the real-space norm.
struct MomentumField {
  Grid grid;
  std::vector<cplx> coeffs;
};

MomentumField transform_to_momentum(const WaveField& psi);
WaveField transform_from_momentum(const MomentumField& spectrum, double time = 0.0);

}  // namespace eswp
