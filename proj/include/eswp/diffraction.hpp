#pragma once

#include <limits>
#include <span>
#include <vector>

namespace eswp {

/// Reflection-grating geometry. Lengths are dimensionless; angles in radians.
struct GratingGeometry {
  double d;          ///< lattice period, 2 pi / nu
  double phi_in;     ///< incidence angle, 0 < phi_in <= pi/2
  double lambda_db;  ///< de Broglie wavelength
  double E0;         ///< incident kinetic energy

  /// lambda_db / sin(phi_in).
  double lambda_perp() const;
  void validate() const;
};

/// lambda = 2 pi / q with E0 = k q^2 / 2.
double de_broglie_from_energy(double E0, double k);

GratingGeometry make_geometry(double d, double phi_in, double E0, double k);

struct BraggOrder {
  int n;
  double theta;      ///< deflection angle, sin(theta) = n lambda_perp / d
  double azimuthal;  ///< exit angle, tan(azimuthal) = tan(phi_in) sin(theta)
};

/// Propagating orders |n| <= n_max in increasing n; orders with
/// |n lambda_perp / d| > 1 are evanescent and omitted.
std::vector<BraggOrder> bragg_orders(const GratingGeometry& geom, int n_max = 8);

/// Small-angle spacing of diffraction spots, lambda_db / d.
double azimuthal_splitting(const GratingGeometry& geom);

/// Recovers the lattice period d = lambda_db / splitting. Throws when the
/// splitting is not positive or the implied period exceeds max_period.
double invert_period(double splitting, double lambda_db,
                     double max_period = std::numeric_limits<double>::infinity());

struct MomentumPeak {
  double q;
  double weight;  ///< marginal density integrated down to the nearest valley on each side
};

/// Strict local maxima of a 1D momentum marginal above threshold_frac * max whose
/// prominence over the surrounding minima is at least threshold_frac * max / 10.
/// Positions are refined by three-point quadratic interpolation and returned
/// sorted by |q|.
std::vector<MomentumPeak> extract_peaks(std::span<const double> q,
                                        std::span<const double> density,
                                        double threshold_frac = 0.05);

struct LadderAssignment {
  int n;         ///< nearest grating order, round(q / nu)
  double q;
  double offset; ///< q - n * nu
  double weight;
};

/// Matches peaks to the momentum-kick ladder q_n = n * nu.
std::vector<LadderAssignment> assign_orders(std::span<const MomentumPeak> peaks, double nu);

}  // namespace eswp
