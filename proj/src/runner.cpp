#include "eswp/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "eswp/manifest.hpp"
#include "eswp/series_io.hpp"
#include "eswp/snapshot_io.hpp"

namespace eswp {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string());
  }
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw std::runtime_error("output directory " + dir.string() + " is not writable");
  }
  fs::remove(probe, ec);
}

std::string format_eta(double eta) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "eta_%g", eta);
  return buf;
}

}  // namespace

std::string snapshot_file_name(double time) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "snapshot_t%07.3f.eswp", time);
  return buf;
}

GroundState prepare_ground_state(const RunConfig& cfg) {
  const Grid grid = cfg.grid();
  const auto trap = initial_trap_potential(grid, cfg.sim.z0);
  return ground_state(grid, trap, cfg.sim, default_seed(grid, cfg.sim.z0));
}

GroundState run_groundstate_to_dir(const RunConfig& cfg, const fs::path& dir,
                                   const std::string& command) {
  ensure_dir(dir);
  const auto t0 = std::chrono::steady_clock::now();
  GroundState gs = prepare_ground_state(cfg);
  const auto t1 = std::chrono::steady_clock::now();
  write_density_snapshot(gs.psi, dir / "groundstate.eswp");

  RunManifest m;
  m.command = command;
  m.config_text = print_config(cfg);
  m.version = code_version();
  m.phase_seconds["ground_state"] = std::chrono::duration<double>(t1 - t0).count();
  m.diagnostics["energy"] = gs.energy;
  m.diagnostics["iterations"] = static_cast<double>(gs.iterations);
  m.diagnostics["residual"] = gs.residual;
  m.diagnostics["sigma_x"] = sigma_x(gs.psi);
  m.diagnostics["mean_z"] = mean_z(gs.psi);
  collect_files(m, dir);
  write_manifest(m, dir);
  return gs;
}

ReleaseSummary run_release_to_dir(const RunConfig& cfg, const fs::path& dir,
                                  std::optional<GroundState> prepared, bool write_csv,
                                  const std::string& command) {
  ensure_dir(dir);
  const Grid grid = cfg.grid();
  double io_seconds = 0.0;

  ReleaseSummary summary;
  summary.dir = dir;
  summary.eta = cfg.sim.eta;

  ReleaseOptions options;
  options.series_stride = cfg.series_stride;
  options.prepared = std::move(prepared);
  options.on_snapshot = [&](const Snapshot& snap) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto name = snapshot_file_name(snap.time);
    write_density_snapshot(snap.psi, dir / name);
    if (write_csv) write_density_csv(snap.psi, dir / fs::path(name).replace_extension(".csv"));
    ++summary.snapshots;
    io_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  Trajectory traj = run_release(grid, cfg.sim, std::move(options));
  write_series(traj.series, dir / "series.csv");

  summary.ground_energy = traj.ground.energy;
  summary.norm_drift = traj.norm_drift;
  summary.energy_drift = traj.energy_drift;
  summary.max_edge_density = traj.max_edge_density;
  summary.warnings = traj.warnings;
  try {
    summary.width_slope = width_growth(traj.series);
  } catch (const std::runtime_error&) {
    summary.width_slope = std::numeric_limits<double>::quiet_NaN();
  }
  try {
    summary.bounce = bounce_report(traj.series);
  } catch (const std::runtime_error&) {
    summary.bounce.reset();
  }

  RunManifest m;
  m.command = command;
  m.config_text = print_config(cfg);
  m.version = code_version();
  m.phase_seconds["ground_state"] = traj.ground_state_seconds;
  m.phase_seconds["propagation"] = traj.propagation_seconds - io_seconds;
  m.phase_seconds["snapshot_io"] = io_seconds;
  m.diagnostics["ground_energy"] = traj.ground.energy;
  m.diagnostics["ground_iterations"] = static_cast<double>(traj.ground.iterations);
  m.diagnostics["norm_drift"] = traj.norm_drift;
  m.diagnostics["energy_drift"] = traj.energy_drift;
  m.diagnostics["max_edge_density"] = traj.max_edge_density;
  m.diagnostics["width_slope"] = summary.width_slope;
  if (summary.bounce) {
    m.diagnostics["period_mean"] = summary.bounce->period_mean;
    m.diagnostics["decay_per_bounce"] = summary.bounce->decay_per_bounce;
  }
  collect_files(m, dir);
  write_manifest(m, dir);
  return summary;
}

std::vector<ReleaseSummary> run_sweep(const RunConfig& cfg, std::span<const double> etas,
                                      const fs::path& dir, bool write_csv) {
  ensure_dir(dir);
  // The release trap does not depend on eta, so one ground state serves every case.
  const GroundState gs = prepare_ground_state(cfg);
  std::vector<ReleaseSummary> out;
  for (double eta : etas) {
    RunConfig c = cfg;
    c.sim.eta = eta;
    c.sim.confine_x = eta == 0.0;
    c.preset.clear();
    out.push_back(run_release_to_dir(c, dir / format_eta(eta), gs, write_csv, "sweep"));
  }
  std::ofstream summary(dir / "sweep_summary.csv", std::ios::trunc);
  summary << "eta,width_slope,period_mean,decay_per_bounce,energy_drift,norm_drift,max_edge_density\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  char buf[512];
  for (const auto& s : out) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.eta,
                  s.width_slope, s.bounce ? s.bounce->period_mean : nan,
                  s.bounce ? s.bounce->decay_per_bounce : nan, s.energy_drift, s.norm_drift,
                  s.max_edge_density);
    summary << buf;
  }
  if (!summary) throw std::runtime_error("cannot write sweep_summary.csv");
  return out;
}

DiffractionAnalysis analyze_diffraction(const WaveField& psi, const DiffractOptions& opt) {
  DiffractionAnalysis a;
  a.time = psi.time;
  const auto rho = momentum_density(psi);
  const Grid& g = rho.grid;
  double q2 = 0.0, mass = 0.0;
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double r = rho.values[g.index(i, j)];
      q2 += r * (g.qx(i) * g.qx(i) + g.qz(j) * g.qz(j));
      mass += r;
    }
  a.kinetic_energy = 0.5 * opt.k * q2 / mass;
  const double phi = opt.phi_in_deg * std::numbers::pi / 180.0;
  a.geometry = make_geometry(2.0 * std::numbers::pi / opt.nu, phi, a.kinetic_energy, opt.k);
  const auto marginal = marginal_qx(rho);
  const auto peaks = extract_peaks(marginal.q, marginal.density, opt.threshold_frac);
  a.peaks = assign_orders(peaks, opt.nu);
  a.orders = bragg_orders(a.geometry, opt.n_max);
  a.splitting = azimuthal_splitting(a.geometry);
  a.momentum_cell = g.dqx();
  return a;
}

std::string DiffractionAnalysis::to_text() const {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "t = %.6g  E0 = %.6g  lambda_db = %.6g  lambda_perp = %.6g  d = %.6g\n", time,
                kinetic_energy, geometry.lambda_db, geometry.lambda_perp(), geometry.d);
  os << buf;
  std::snprintf(buf, sizeof(buf), "azimuthal splitting = %.6g rad  momentum cell = %.6g\n",
                splitting, momentum_cell);
  os << buf;
  os << "momentum peaks (" << peaks.size() << ")\n";
  os << "  order        q_x       offset       weight\n";
  for (const auto& p : peaks) {
    std::snprintf(buf, sizeof(buf), "  %5d %10.5f %12.5f %12.5g\n", p.n, p.q, p.offset, p.weight);
    os << buf;
  }
  os << "bragg orders (" << orders.size() << ")\n";
  os << "  order   theta_rad  azimuthal_rad\n";
  for (const auto& o : orders) {
    std::snprintf(buf, sizeof(buf), "  %5d %11.6f %14.6f\n", o.n, o.theta, o.azimuthal);
    os << buf;
  }
  return os.str();
}

}  // namespace eswp
