#pragma once

#include <string>
#include <vector>

#include "eswp/grid.hpp"

namespace eswp {

/// Dimensionless run parameters. Lengths are in units of the evanescent decay
/// length, energies in units of the gravitational energy over that length.
struct SimParams {
  double k = 0.066;          ///< kinetic coefficient in -(k/2) Laplacian
  double G = 0.086 * 3;      ///< interaction strength, 0.086 per atom
  double V0 = 906.0;         ///< evanescent mirror strength
  double eta = 0.0;          ///< standing-wave modulation depth
  double nu = 1.0;           ///< lattice wavenumber along x
  double z0 = 10.0;          ///< release height
  double dt = 0.001;
  double t_end = 60.0;
  double snapshot_dt = 5.0;
  double wall_height = 1.0e5;  ///< stands in for V -> infinity below z = 0
  bool confine_x = true;       ///< add x^2/2 during evolution
  double imag_dt = 0.001;
  double gs_tol = 1.0e-9;
  std::size_t gs_max_iter = 200000;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  bool operator==(const SimParams&) const = default;
};

/// Interaction strength used by the figure presets: 0.086 per atom.
double interaction_for_atoms(double atoms);

/// Real-valued potential sampled on a grid (row-major, z outer).
struct PotentialField {
  Grid grid;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
};

/// Mirror potential during free evolution:
///   z >= 0: z + V0 (1 + eta cos(nu x)) exp(-z) [+ x^2/2 when confine_x]
///   z <  0: wall_height
PotentialField eswp_potential(const Grid& grid, const SimParams& p);

/// Release trap x^2 + (z - z0)^2.
PotentialField initial_trap_potential(const Grid& grid, double z0);

PotentialField constant_potential(const Grid& grid, double value);

struct MirrorMinimum {
  double z_min;    ///< ln V0, the minimum of z + V0 exp(-z)
  double omega_z;  ///< small-oscillation frequency sqrt(k * V''(z_min)) = sqrt(k)
};

/// Location of the unmodulated mirror minimum. V0 <= 1 puts the minimum at or
/// below the surface and is rejected.
MirrorMinimum eswp_minimum(double V0, double k = 0.066);

/// Dimensional quantities of the surface-trap experiment (SI units).
struct PhysicalParams {
  double mass = 2.20695e-25;                 ///< Cs-133, kg
  double g = 9.81;                           ///< m/s^2
  double scattering_length_bohr = 440.0;     ///< in Bohr radii
  double atoms = 3.0;
  double wavelength = 852e-9;                ///< m
  double refractive_index = 1.45;
  double incidence_angle = 49.2 * 3.14159265358979323846 / 180.0;  ///< rad
  double linewidth = 2.0 * 3.14159265358979323846 * 5.3e6;         ///< rad/s
  double detuning = 2.0 * 3.14159265358979323846 * 1.0e9;          ///< rad/s
  double peak_intensity = 9.6e7;                                   ///< W/m^2
  double omega_y = 2.0 * 3.14159265358979323846 * 12.0e3;          ///< rad/s
  double omega_perp = 2.0 * 3.14159265358979323846 * 1.2e3;        ///< rad/s

  static constexpr double kBohrRadius = 5.29177e-11;
  static constexpr double kHbar = 1.054571817e-34;
  static constexpr double kBoltzmann = 1.380649e-23;
  static constexpr double kSpeedOfLight = 2.99792458e8;

  void validate() const;
};

struct ConversionEntry {
  std::string name;
  double computed;
  double reference;  ///< published dimensionless value, NaN when none exists
  double relative_deviation;
  bool flagged;      ///< relative deviation above 5%
};

struct ConversionReport {
  double kappa;     ///< inverse decay length, 1/m
  double V0_joule;  ///< mirror strength in J
  SimParams derived;
  std::vector<ConversionEntry> entries;

  std::string to_text() const;
};

/// Converts the dimensional parameter set to its dimensionless counterpart and
/// compares against the published dimensionless values. Diagnostic only; the
/// default run parameters do not come from here.
ConversionReport derive_sim_params(const PhysicalParams& phys);

}  // namespace eswp
