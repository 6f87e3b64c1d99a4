#include "eswp/wave_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eswp {

WaveField gaussian_packet(const Grid& grid, double x0, double z0, double sigma,
                          double qx0) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_packet: sigma must be positive");
  const double inv = 1.0 / (4.0 * sigma * sigma);
  auto psi = sample_field(grid, [&](double x, double z) {
    const double r2 = (x - x0) * (x - x0) + (z - z0) * (z - z0);
    return std::exp(-r2 * inv) * std::polar(1.0, qx0 * x);
  });
  normalize_in_place(psi);
  return psi;
}

double norm(const WaveField& psi) {
  double s = 0.0;
  for (const auto& a : psi.amps) s += std::norm(a);
  return s * psi.grid.cell_area();
}

void normalize_in_place(WaveField& psi) {
  const double n = norm(psi);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::domain_error("normalize: field has zero or non-finite norm");
  }
  const double scale = 1.0 / std::sqrt(n);
  for (auto& a : psi.amps) a *= scale;
}

WaveField normalize(WaveField psi) {
  normalize_in_place(psi);
  return psi;
}

bool all_finite(const WaveField& psi) {
  return std::all_of(psi.amps.begin(), psi.amps.end(), [](const cplx& a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
  });
}

namespace {

// exp(-i (qx x_min + qz z_min)) per mode, the origin shift between the raw DFT
// and the continuum transform.
cplx origin_phase(const Grid& g, std::size_t i, std::size_t j) {
  return std::polar(1.0, -(g.qx(i) * g.x_min() + g.qz(j) * g.z_min_dom()));
}

}  // namespace

MomentumField transform_to_momentum(const WaveField& psi) {
  const Grid& g = psi.grid;
  Fft2d fft(g.nx(), g.nz());
  auto buf = fft.data();
  std::copy(psi.amps.begin(), psi.amps.end(), buf.begin());
  fft.forward();
  MomentumField out{g, std::vector<cplx>(g.size())};
  const double area = g.cell_area();
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      out.coeffs[k] = buf[k] * area * origin_phase(g, i, j);
    }
  return out;
}

WaveField transform_from_momentum(const MomentumField& spectrum, double time) {
  const Grid& g = spectrum.grid;
  Fft2d fft(g.nx(), g.nz());
  auto buf = fft.data();
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      buf[k] = spectrum.coeffs[k] * std::conj(origin_phase(g, i, j));
    }
  fft.backward();
  WaveField psi(g, time);
  const double scale = 1.0 / (g.cell_area() * static_cast<double>(g.size()));
  for (std::size_t k = 0; k < g.size(); ++k) psi.amps[k] = buf[k] * scale;
  return psi;
}

}  // namespace eswp
