#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eswp/observables.hpp"
#include "eswp/potentials.hpp"
#include "eswp/wave_field.hpp"

namespace eswp {

enum class Mode { RealTime, ImaginaryTime };

/// Strang split-step integrator for
///   i dpsi/dt = [-(k/2) Laplacian + V + G |psi|^2] psi.
///
/// A step is: half kinetic (momentum space), full potential plus nonlinear
/// phase with the density frozen at sub-step entry, half kinetic. In
/// imaginary time dt is replaced by -i * imag_dt and the state is
/// renormalized after every step.
class Stepper {
 public:
  Stepper(WaveField psi, PotentialField potential, SimParams params, Mode mode);

  void step();

  /// n consecutive steps. In real time adjacent kinetic halves are fused into
  /// one full kinetic factor; the result equals n calls to step() up to
  /// rounding.
  void advance(std::size_t n);

  const WaveField& state() const;
  const PotentialField& potential() const { return potential_; }
  const SimParams& params() const { return params_; }
  Mode mode() const { return mode_; }
  std::size_t step_index() const { return step_index_; }
  double time_step() const { return mode_ == Mode::RealTime ? params_.dt : params_.imag_dt; }

  /// Energy functional of the current state under the current potential.
  double energy() const;

  void set_potential(PotentialField potential);
  void set_mode(Mode mode);
  void set_time_step(double dt);

 private:
  void rebuild_kinetic_tables();
  void kinetic(const std::vector<cplx>& factor);
  double potential_substep();
  void renormalize();
  [[noreturn]] void fail() const;

  mutable WaveField psi_;
  mutable bool psi_stale_ = false;
  PotentialField potential_;
  SimParams params_;
  Mode mode_;
  Fft2d fft_;
  mutable Fft2d scratch_;
  std::vector<cplx> half_kinetic_, full_kinetic_;
  std::size_t step_index_ = 0;
  double start_time_;
};

struct GroundState {
  WaveField psi;
  double energy = 0.0;
  std::size_t iterations = 0;
  double residual = 0.0;
  std::vector<double> energies;  ///< energy after every iteration, seed first
  std::vector<std::string> warnings;
};

/// Imaginary-time relaxation until
///   |E_n - E_{n-1}| / max(1, |E_n|) < params.gs_tol,
/// throwing ConvergenceError after params.gs_max_iter iterations.
GroundState ground_state(const Grid& grid, const PotentialField& trap,
                         const SimParams& params, const WaveField& seed);

/// Isotropic Gaussian of density width 1 centered at (0, z0).
WaveField default_seed(const Grid& grid, double z0);

struct Snapshot {
  double time;
  WaveField psi;
};

struct ReleaseOptions {
  std::size_t series_stride = 100;
  /// Skips the imaginary-time preparation when set.
  std::optional<GroundState> prepared;
  /// Called for each snapshot as it is produced; snapshots are not retained
  /// in the trajectory when set.
  std::function<void(const Snapshot&)> on_snapshot;
};

struct Trajectory {
  GroundState ground;
  std::vector<Snapshot> snapshots;
  TimeSeries series;
  double norm_drift = 0.0;    ///< max |norm(t) - norm(0)|
  double energy_drift = 0.0;  ///< max |E(t) - E(0)| / |E(0)|
  double max_edge_density = 0.0;
  double ground_state_seconds = 0.0;
  double propagation_seconds = 0.0;
  std::vector<std::string> warnings;
};

/// Step counts implied by params, validated for exact divisibility.
struct Schedule {
  std::size_t total_steps;
  std::size_t steps_per_snapshot;
};
Schedule make_schedule(const SimParams& params);

/// Ground state in the release trap x^2 + (z - z0)^2, then real-time
/// evolution in the mirror potential from t = 0 to t_end.
Trajectory run_release(const Grid& grid, const SimParams& params,
                       ReleaseOptions options = {});

}  // namespace eswp
