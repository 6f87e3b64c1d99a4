#include "eswp/cli.hpp"

#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "eswp/errors.hpp"
#include "eswp/runner.hpp"
#include "eswp/snapshot_io.hpp"

namespace eswp {

namespace fs = std::filesystem;

namespace {

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

void print_release(std::ostream& out, const ReleaseSummary& s) {
  out << "eta=" << s.eta << " snapshots=" << s.snapshots << " ground_energy=" << s.ground_energy
      << " norm_drift=" << s.norm_drift << " energy_drift=" << s.energy_drift
      << " max_edge_density=" << s.max_edge_density << " width_slope=" << s.width_slope;
  if (s.bounce) {
    out << " period_mean=" << s.bounce->period_mean
        << " decay_per_bounce=" << s.bounce->decay_per_bounce;
  }
  out << " dir=" << s.dir.string() << "\n";
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Condensate bouncing on an evanescent standing-wave mirror"};
  app.require_subcommand(1);

  std::string config_path, snapshot_path, output_override;
  bool write_csv = false;
  std::vector<double> etas = {0.0, 0.01, 0.1, 0.9};
  DiffractOptions diff;

  auto* gs_cmd = app.add_subcommand("groundstate", "Relax the release-trap ground state");
  gs_cmd->add_option("config", config_path, "Run configuration")->required();
  gs_cmd->add_option("-o,--output", output_override, "Override output_dir");

  auto* run_cmd = app.add_subcommand("run", "Release protocol: ground state then mirror evolution");
  run_cmd->add_option("config", config_path, "Run configuration")->required();
  run_cmd->add_option("-o,--output", output_override, "Override output_dir");
  run_cmd->add_flag("--csv", write_csv, "Also write |psi|^2 CSV next to each snapshot");

  auto* sweep_cmd = app.add_subcommand("sweep", "Release runs for several modulation depths");
  sweep_cmd->add_option("config", config_path, "Run configuration")->required();
  sweep_cmd->add_option("--eta", etas, "Comma-separated modulation depths")->delimiter(',');
  sweep_cmd->add_option("-o,--output", output_override, "Override output_dir");
  sweep_cmd->add_flag("--csv", write_csv, "Also write |psi|^2 CSV next to each snapshot");

  auto* diff_cmd = app.add_subcommand("diffract", "Momentum peaks and Bragg table for a snapshot");
  diff_cmd->add_option("snapshot", snapshot_path, "Snapshot file")->required();
  diff_cmd->add_option("--phi-in", diff.phi_in_deg, "Incidence angle in degrees");
  diff_cmd->add_option("--nu", diff.nu, "Lattice wavenumber");
  diff_cmd->add_option("--k", diff.k, "Kinetic coefficient");
  diff_cmd->add_option("--threshold", diff.threshold_frac, "Peak threshold fraction of the maximum");
  diff_cmd->add_option("--n-max", diff.n_max, "Largest diffraction order listed");

  auto* params_cmd = app.add_subcommand("params", "Physical-to-dimensionless conversion report");
  params_cmd->add_option("config", config_path, "Run configuration")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    auto config = [&] {
      RunConfig cfg = load_config(config_path);
      if (!output_override.empty()) cfg.output_dir = output_override;
      return cfg;
    };
    if (*gs_cmd) {
      const RunConfig cfg = config();
      const auto gs = run_groundstate_to_dir(cfg, cfg.output_dir);
      print_warnings(err, gs.warnings);
      out << "energy=" << gs.energy << " iterations=" << gs.iterations
          << " sigma_x=" << sigma_x(gs.psi) << " mean_z=" << mean_z(gs.psi)
          << " file=" << (fs::path(cfg.output_dir) / "groundstate.eswp").string() << "\n";
    } else if (*run_cmd) {
      const RunConfig cfg = config();
      const auto s = run_release_to_dir(cfg, cfg.output_dir, std::nullopt, write_csv);
      print_warnings(err, s.warnings);
      print_release(out, s);
    } else if (*sweep_cmd) {
      const RunConfig cfg = config();
      const auto cases = run_sweep(cfg, etas, cfg.output_dir, write_csv);
      for (const auto& s : cases) {
        print_warnings(err, s.warnings);
        print_release(out, s);
      }
      out << "summary=" << (fs::path(cfg.output_dir) / "sweep_summary.csv").string() << "\n";
    } else if (*diff_cmd) {
      const WaveField psi = read_density_snapshot(snapshot_path);
      out << analyze_diffraction(psi, diff).to_text();
    } else if (*params_cmd) {
      const RunConfig cfg = config();
      PhysicalParams phys;
      phys.atoms = cfg.atoms;
      out << derive_sim_params(phys).to_text();
    }
  } catch (const std::exception& e) {
    std::string msg = e.what();
    if (const auto nl = msg.find('\n'); nl != std::string::npos) msg.resize(nl);
    err << "error: " << msg << "\n";
    return 1;
  }
  return 0;
}

int cli_main(int argc, const char* const* argv) {
  return cli_main(argc, argv, std::cout, std::cerr);
}

}  // namespace eswp
