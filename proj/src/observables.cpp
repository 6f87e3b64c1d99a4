#include "eswp/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace eswp {

namespace {

struct Moments {
  double mass = 0.0, x = 0.0, z = 0.0, xx = 0.0, zz = 0.0;
};

Moments moments(const WaveField& psi) {
  const Grid& g = psi.grid;
  Moments m;
  for (std::size_t j = 0; j < g.nz(); ++j) {
    const double z = g.z(j);
    double row = 0.0, row_x = 0.0, row_xx = 0.0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double d = std::norm(psi.at(i, j));
      const double x = g.x(i);
      row += d;
      row_x += d * x;
      row_xx += d * x * x;
    }
    m.mass += row;
    m.x += row_x;
    m.xx += row_xx;
    m.z += row * z;
    m.zz += row * z * z;
  }
  const double a = g.cell_area();
  m.mass *= a;
  m.x *= a;
  m.z *= a;
  m.xx *= a;
  m.zz *= a;
  return m;
}

double spread(double second, double first) {
  return std::sqrt(std::max(0.0, second - first * first));
}

}  // namespace

double mean_x(const WaveField& psi) { return moments(psi).x; }
double mean_z(const WaveField& psi) { return moments(psi).z; }

double sigma_x(const WaveField& psi) {
  const auto m = moments(psi);
  return spread(m.xx, m.x);
}

double sigma_z(const WaveField& psi) {
  const auto m = moments(psi);
  return spread(m.zz, m.z);
}

double energy_from_spectrum(const WaveField& psi, std::span<const cplx> raw_dft,
                            const PotentialField& v, double k, double G) {
  const Grid& g = psi.grid;
  if (!(v.grid == g)) throw std::invalid_argument("energy: potential grid mismatch");
  // Parseval for the raw DFT: sum |grad psi|^2 = sum q^2 |raw|^2 / N.
  double kinetic = 0.0;
  for (std::size_t j = 0; j < g.nz(); ++j) {
    const double qz2 = g.qz(j) * g.qz(j);
    for (std::size_t i = 0; i < g.nx(); ++i) {
      kinetic += (g.qx(i) * g.qx(i) + qz2) * std::norm(raw_dft[g.index(i, j)]);
    }
  }
  kinetic *= 0.5 * k / static_cast<double>(g.size());
  double potential = 0.0, interaction = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double d = std::norm(psi.amps[n]);
    potential += v.values[n] * d;
    interaction += d * d;
  }
  return (kinetic + potential + 0.5 * G * interaction) * g.cell_area();
}

double energy(const WaveField& psi, const PotentialField& v, double k, double G) {
  Fft2d fft(psi.grid.nx(), psi.grid.nz());
  std::copy(psi.amps.begin(), psi.amps.end(), fft.data().begin());
  fft.forward();
  return energy_from_spectrum(psi, fft.data(), v, k, G);
}

double edge_density(const WaveField& psi, std::size_t cells) {
  const Grid& g = psi.grid;
  double s = 0.0;
  for (std::size_t j = 0; j < g.nz(); ++j) {
    const bool z_edge = j < cells || j + cells >= g.nz();
    for (std::size_t i = 0; i < g.nx(); ++i) {
      if (z_edge || i < cells || i + cells >= g.nx()) s += std::norm(psi.at(i, j));
    }
  }
  return s * g.cell_area();
}

MomentumDensity momentum_density(const WaveField& psi) {
  const auto spectrum = transform_to_momentum(psi);
  MomentumDensity rho{psi.grid, std::vector<double>(psi.grid.size())};
  const double scale = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  for (std::size_t n = 0; n < rho.values.size(); ++n) {
    rho.values[n] = std::norm(spectrum.coeffs[n]) * scale;
  }
  return rho;
}

Marginal marginal_qx(const MomentumDensity& rho) {
  const Grid& g = rho.grid;
  const std::size_t nx = g.nx();
  Marginal m{std::vector<double>(nx), std::vector<double>(nx, 0.0)};
  // Index nx/2 holds the most negative wavenumber; start there.
  for (std::size_t s = 0; s < nx; ++s) {
    const std::size_t i = (s + nx / 2) % nx;
    m.q[s] = g.qx(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < g.nz(); ++j) acc += rho.values[g.index(i, j)];
    m.density[s] = acc * g.dqz();
  }
  return m;
}

void TimeSeries::append(double time, const WaveField& psi, const PotentialField& v,
                        double k, double G) {
  if (!t.empty() && !(time > t.back())) {
    throw std::invalid_argument("TimeSeries: times must be strictly increasing");
  }
  const auto m = moments(psi);
  t.push_back(time);
  mean_z.push_back(m.z);
  mean_x.push_back(m.x);
  sigma_x.push_back(spread(m.xx, m.x));
  energy.push_back(eswp::energy(psi, v, k, G));
  norm.push_back(m.mass);
  edge_density.push_back(eswp::edge_density(psi));
}

BounceReport bounce_report(std::span<const double> t, std::span<const double> z,
                           double prominence_frac) {
  if (t.size() != z.size()) throw std::invalid_argument("bounce_report: length mismatch");
  const std::size_t n = z.size();
  BounceReport r;
  if (n >= 3) {
    const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
    const double min_prominence = prominence_frac * (*hi - *lo);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (!(z[i] > z[i - 1] && z[i] >= z[i + 1])) continue;
      // Lowest point on each side before reaching higher ground. A side that
      // runs off the end of the series without higher ground is open: the
      // record stops before that side can be judged, so the other side decides.
      double left = z[i];
      bool left_open = true;
      for (std::size_t a = i; a-- > 0;) {
        if (z[a] > z[i]) {
          left_open = false;
          break;
        }
        left = std::min(left, z[a]);
      }
      double right = z[i];
      bool right_open = true;
      for (std::size_t b = i + 1; b < n; ++b) {
        if (z[b] > z[i]) {
          right_open = false;
          break;
        }
        right = std::min(right, z[b]);
      }
      // With both sides open this is the highest point of the record and the
      // deeper side sets the prominence.
      double base = std::max(left, right);
      if (left_open && right_open) base = std::min(left, right);
      if (left_open && !right_open) base = right;
      if (right_open && !left_open) base = left;
      const double prominence = z[i] - base;
      if (prominence <= 0.0 || prominence < min_prominence) continue;
      // Parabola through the three samples around the maximum.
      const double y0 = z[i - 1], y1 = z[i], y2 = z[i + 1];
      const double denom = y0 - 2.0 * y1 + y2;
      const double h = 0.5 * (t[i + 1] - t[i - 1]);
      double offset = 0.0, height = y1;
      if (denom < 0.0) {
        offset = 0.5 * (y0 - y2) / denom;
        height = y1 - 0.25 * (y0 - y2) * offset;
      }
      r.peak_times.push_back(t[i] + offset * h);
      r.peak_heights.push_back(height);
    }
  }
  if (r.peak_times.size() < 2) {
    throw std::runtime_error("bounce_report: fewer than two bounce maxima in the series");
  }
  const std::size_t np = r.peak_times.size();
  std::vector<double> periods(np - 1);
  double decay = 0.0;
  for (std::size_t p = 0; p + 1 < np; ++p) {
    periods[p] = r.peak_times[p + 1] - r.peak_times[p];
    decay += r.peak_heights[p] - r.peak_heights[p + 1];
  }
  r.period_mean = std::accumulate(periods.begin(), periods.end(), 0.0) /
                  static_cast<double>(periods.size());
  r.decay_per_bounce = decay / static_cast<double>(np - 1);
  if (periods.size() >= 2) {
    const double m = static_cast<double>(periods.size());
    const double mean_idx = (m - 1.0) / 2.0;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t p = 0; p < periods.size(); ++p) {
      const double dx = static_cast<double>(p) - mean_idx;
      sxy += dx * (periods[p] - r.period_mean);
      sxx += dx * dx;
    }
    r.period_trend = sxy / sxx;
  }
  return r;
}

BounceReport bounce_report(const TimeSeries& series, double prominence_frac) {
  return bounce_report(series.t, series.mean_z, prominence_frac);
}

double width_growth(std::span<const double> t, std::span<const double> sigma,
                    double t_fit_start) {
  if (t.size() != sigma.size()) throw std::invalid_argument("width_growth: length mismatch");
  double st = 0.0, ss = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_fit_start) continue;
    st += t[i];
    ss += sigma[i];
    ++count;
  }
  if (count < 2) throw std::runtime_error("width_growth: fewer than two samples in the fit window");
  const double mt = st / static_cast<double>(count);
  const double ms = ss / static_cast<double>(count);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_fit_start) continue;
    sxy += (t[i] - mt) * (sigma[i] - ms);
    sxx += (t[i] - mt) * (t[i] - mt);
  }
  if (!(sxx > 0.0)) throw std::runtime_error("width_growth: degenerate fit window");
  return sxy / sxx;
}

double width_growth(const TimeSeries& series, double t_fit_start) {
  return width_growth(series.t, series.sigma_x, t_fit_start);
}

double fringe_visibility(const WaveField& psi, const Window& w) {
  const Grid& g = psi.grid;
  std::vector<double> profile;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const double x = g.x(i);
    if (x < w.x_lo || x > w.x_hi) continue;
    double acc = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < g.nz(); ++j) {
      const double z = g.z(j);
      if (z < w.z_lo || z > w.z_hi) continue;
      acc += std::norm(psi.at(i, j));
      any = true;
    }
    if (any) profile.push_back(acc * g.dz());
  }
  if (profile.empty()) throw std::invalid_argument("fringe_visibility: empty window");
  const auto [lo, hi] = std::minmax_element(profile.begin(), profile.end());
  const double sum = *hi + *lo;
  return sum > 0.0 ? (*hi - *lo) / sum : 0.0;
}

}  // namespace eswp
