#include "eswp/potentials.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace eswp {

void SimParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("SimParams: ") + what);
  };
  require(k > 0.0 && std::isfinite(k), "k must be positive");
  require(G >= 0.0 && std::isfinite(G), "G must be non-negative");
  require(V0 > 0.0 && std::isfinite(V0), "V0 must be positive");
  require(eta >= 0.0 && std::isfinite(eta), "eta must be non-negative");
  require(nu > 0.0 && std::isfinite(nu), "nu must be positive");
  require(std::isfinite(z0), "z0 must be finite");
  require(dt > 0.0 && std::isfinite(dt), "dt must be positive");
  require(t_end > 0.0 && std::isfinite(t_end), "t_end must be positive");
  require(snapshot_dt > 0.0 && std::isfinite(snapshot_dt), "snapshot_dt must be positive");
  require(wall_height > 0.0 && std::isfinite(wall_height), "wall_height must be positive");
  require(imag_dt > 0.0 && std::isfinite(imag_dt), "imag_dt must be positive");
  require(gs_tol > 0.0, "gs_tol must be positive");
  require(gs_max_iter > 0, "gs_max_iter must be positive");
}

double interaction_for_atoms(double atoms) { return 0.086 * atoms; }

PotentialField eswp_potential(const Grid& grid, const SimParams& p) {
  PotentialField v{grid, std::vector<double>(grid.size())};
  for (std::size_t j = 0; j < grid.nz(); ++j) {
    const double z = grid.z(j);
    const double decay = std::exp(-z);
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const double x = grid.x(i);
      double value;
      if (z < 0.0) {
        value = p.wall_height;
      } else {
        value = z + p.V0 * (1.0 + p.eta * std::cos(p.nu * x)) * decay;
        if (p.confine_x) value += 0.5 * x * x;
      }
      v.values[grid.index(i, j)] = value;
    }
  }
  return v;
}

PotentialField initial_trap_potential(const Grid& grid, double z0) {
  const double z_hi = grid.z(grid.nz() - 1);
  if (z0 < grid.z_min_dom() || z0 > z_hi) {
    throw std::invalid_argument("initial_trap_potential: z0 outside the grid");
  }
  PotentialField v{grid, std::vector<double>(grid.size())};
  for (std::size_t j = 0; j < grid.nz(); ++j) {
    const double dz = grid.z(j) - z0;
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const double x = grid.x(i);
      v.values[grid.index(i, j)] = x * x + dz * dz;
    }
  }
  return v;
}

PotentialField constant_potential(const Grid& grid, double value) {
  return PotentialField{grid, std::vector<double>(grid.size(), value)};
}

MirrorMinimum eswp_minimum(double V0, double k) {
  if (!(V0 > 1.0)) {
    throw std::domain_error("eswp_minimum: V0 <= 1 puts the mirror minimum at or below the surface");
  }
  if (!(k > 0.0)) throw std::invalid_argument("eswp_minimum: k must be positive");
  return MirrorMinimum{std::log(V0), std::sqrt(k)};
}

void PhysicalParams::validate() const {
  const double values[] = {mass,        g,           scattering_length_bohr,
                           atoms,       wavelength,  refractive_index,
                           incidence_angle, linewidth, detuning,
                           peak_intensity, omega_y, omega_perp};
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("PhysicalParams: all quantities must be positive");
    }
  }
  const double s = refractive_index * std::sin(incidence_angle);
  if (!(s > 1.0)) {
    throw std::domain_error(
        "PhysicalParams: n sin(beta) <= 1, no total internal reflection");
  }
}

ConversionReport derive_sim_params(const PhysicalParams& phys) {
  phys.validate();
  using std::numbers::pi;
  const double hbar = PhysicalParams::kHbar;
  const double m = phys.mass;
  const double g = phys.g;

  const double s = phys.refractive_index * std::sin(phys.incidence_angle);
  const double kappa = 4.0 * pi * std::sqrt(s * s - 1.0) / phys.wavelength;

  const double lambda = phys.wavelength;
  const double V0 = phys.linewidth * lambda * lambda * lambda * phys.peak_intensity /
                    (8.0 * pi * pi * PhysicalParams::kSpeedOfLight * phys.detuning);

  const double energy_unit = m * g / kappa;
  const double k = hbar * hbar * kappa * kappa * kappa / (g * m * m);
  const double V0_dimless = V0 / energy_unit;
  const double a = phys.scattering_length_bohr * PhysicalParams::kBohrRadius;
  const double a_dimless = a * kappa;
  const double a_y = std::sqrt(hbar / (m * phys.omega_y));
  const double a_y_dimless = a_y * kappa;
  const double G_per_atom = 2.0 * std::sqrt(2.0 * pi) * a_dimless * k / a_y_dimless;
  const double frequency_unit = m * g / (hbar * kappa);
  const double omega_z = std::sqrt(g * kappa) / frequency_unit;
  const double omega_perp = phys.omega_perp / frequency_unit;

  ConversionReport report{};
  report.kappa = kappa;
  report.V0_joule = V0;
  report.derived.k = k;
  report.derived.V0 = V0_dimless;
  report.derived.G = G_per_atom * phys.atoms;

  const double none = std::numeric_limits<double>::quiet_NaN();
  auto add = [&](std::string name, double computed, double reference) {
    ConversionEntry e{std::move(name), computed, reference, none, false};
    if (!std::isnan(reference)) {
      e.relative_deviation = std::abs(computed - reference) / std::abs(reference);
      e.flagged = e.relative_deviation > 0.05;
    }
    report.entries.push_back(std::move(e));
  };
  add("kappa_per_m", kappa, 6.67e6);
  add("V0_kelvin", V0 / PhysicalParams::kBoltzmann, 0.96);
  add("k", k, 0.066);
  add("V0", V0_dimless, 906.0);
  add("a", a_dimless, 0.033);
  add("a_y", a_y_dimless, none);
  add("G_per_atom", G_per_atom, 0.086);
  add("omega_z", omega_z, none);
  add("omega_perp", omega_perp, 1.303);
  return report;
}

std::string ConversionReport::to_text() const {
  std::ostringstream os;
  os << std::left << std::setw(12) << "quantity" << std::setw(16) << "computed"
     << std::setw(16) << "published" << std::setw(14) << "rel_dev"
     << "status\n";
  for (const auto& e : entries) {
    os << std::setw(12) << e.name << std::setw(16) << std::setprecision(6)
       << e.computed;
    if (std::isnan(e.reference)) {
      os << std::setw(16) << "-" << std::setw(14) << "-" << "-\n";
    } else {
      os << std::setw(16) << e.reference << std::setw(14) << std::setprecision(3)
         << e.relative_deviation << (e.flagged ? "MISMATCH" : "ok") << "\n";
    }
  }
  return os.str();
}

}  // namespace eswp
