#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eswp/config.hpp"
#include "eswp/diffraction.hpp"
#include "eswp/propagator.hpp"

namespace eswp {

/// Ground state in the release trap described by cfg.
GroundState prepare_ground_state(const RunConfig& cfg);

/// Writes groundstate.eswp (and a manifest) into dir.
GroundState run_groundstate_to_dir(const RunConfig& cfg, const std::filesystem::path& dir,
                                   const std::string& command = "groundstate");

struct ReleaseSummary {
  std::filesystem::path dir;
  double eta = 0.0;
  std::size_t snapshots = 0;
  double ground_energy = 0.0;
  double norm_drift = 0.0;
  double energy_drift = 0.0;
  double max_edge_density = 0.0;
  double width_slope = 0.0;
  std::optional<BounceReport> bounce;  ///< empty when fewer than two maxima were found
  std::vector<std::string> warnings;
};

/// Full release protocol with on-disk output: one snapshot_tXXX.XXX.eswp per
/// snapshot time, series.csv, optional density CSVs and manifest.json.
ReleaseSummary run_release_to_dir(const RunConfig& cfg, const std::filesystem::path& dir,
                                  std::optional<GroundState> prepared = std::nullopt,
                                  bool write_csv = false,
                                  const std::string& command = "run");

/// One release per eta in per-case directories eta_<value>/ under dir, with
/// confine_x = (eta == 0), sharing a single ground state. Writes
/// sweep_summary.csv.
std::vector<ReleaseSummary> run_sweep(const RunConfig& cfg, std::span<const double> etas,
                                      const std::filesystem::path& dir, bool write_csv = false);

std::string snapshot_file_name(double time);

struct DiffractOptions {
  double phi_in_deg = 90.0;
  double nu = 1.0;
  double k = 0.066;
  double threshold_frac = 0.05;
  int n_max = 8;
};

struct DiffractionAnalysis {
  double time = 0.0;
  double kinetic_energy = 0.0;  ///< (k/2) <q^2>, used as E0
  GratingGeometry geometry{};
  std::vector<LadderAssignment> peaks;
  std::vector<BraggOrder> orders;
  double splitting = 0.0;
  double momentum_cell = 0.0;

  std::string to_text() const;
};

DiffractionAnalysis analyze_diffraction(const WaveField& psi, const DiffractOptions& options);

}  // namespace eswp
