#pragma once

#include <span>
#include <vector>

#include "eswp/potentials.hpp"
#include "eswp/wave_field.hpp"

namespace eswp {

// Moments assume a normalized field.
double mean_x(const WaveField& psi);
double mean_z(const WaveField& psi);
double sigma_x(const WaveField& psi);
double sigma_z(const WaveField& psi);

/// Mean-field energy
///   sum [ (k/2)|grad psi|^2 + V |psi|^2 + (G/2)|psi|^4 ] dx dz
/// with the gradient term evaluated spectrally.
double energy(const WaveField& psi, const PotentialField& v, double k, double G);

/// Same functional, evaluated from a precomputed raw (unnormalized) DFT of the
/// amplitudes for the kinetic part.
double energy_from_spectrum(const WaveField& psi, std::span<const cplx> raw_dft,
                            const PotentialField& v, double k, double G);

/// Total density within `cells` nodes of any domain edge.
double edge_density(const WaveField& psi, std::size_t cells = 5);

/// |psi_hat|^2 / (2 pi)^2 on the (qx, qz) grid; sums to the norm when
/// multiplied by dqx dqz.
struct MomentumDensity {
  Grid grid;
  std::vector<double> values;
};

MomentumDensity momentum_density(const WaveField& psi);

/// Density marginal along qx (summed over qz, times dqz), ordered by
/// increasing qx.
struct Marginal {
  std::vector<double> q;
  std::vector<double> density;
};

Marginal marginal_qx(const MomentumDensity& rho);

/// Per-sample diagnostics recorded during a release run.
struct TimeSeries {
  std::vector<double> t, mean_z, mean_x, sigma_x, energy, norm, edge_density;

  std::size_t size() const { return t.size(); }
  void append(double time, const WaveField& psi, const PotentialField& v,
              double k, double G);
};

struct BounceReport {
  std::vector<double> peak_times;
  std::vector<double> peak_heights;
  double period_mean = 0.0;
  double period_trend = 0.0;      ///< least-squares slope of bounce periods vs bounce index
  double decay_per_bounce = 0.0;  ///< mean of h[i] - h[i+1]; positive means falling peaks
};

/// Locates mean_z maxima by three-point quadratic interpolation. A maximum
/// counts only if its prominence is at least prominence_frac of the series
/// range; when the series ends before one flank recovers, the other flank
/// alone sets the prominence. Fewer than two peaks throws std::runtime_error.
BounceReport bounce_report(const TimeSeries& series, double prominence_frac = 0.1);
BounceReport bounce_report(std::span<const double> t, std::span<const double> z,
                           double prominence_frac = 0.1);

/// Least-squares slope of sigma_x over t >= t_fit_start.
double width_growth(const TimeSeries& series, double t_fit_start = 10.0);
double width_growth(std::span<const double> t, std::span<const double> sigma,
                    double t_fit_start = 10.0);

struct Window {
  double x_lo, x_hi, z_lo, z_hi;
};

/// (max - min) / (max + min) of the z-integrated density profile along x
/// inside the window.
double fringe_visibility(const WaveField& psi, const Window& window);

}  // namespace eswp
