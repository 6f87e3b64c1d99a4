#include "eswp/propagator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "eswp/errors.hpp"

namespace eswp {

Stepper::Stepper(WaveField psi, PotentialField potential, SimParams params, Mode mode)
    : psi_(std::move(psi)),
      potential_(std::move(potential)),
      params_(params),
      mode_(mode),
      fft_(psi_.grid.nx(), psi_.grid.nz()),
      scratch_(psi_.grid.nx(), psi_.grid.nz()),
      start_time_(psi_.time) {
  if (!(potential_.grid == psi_.grid)) {
    throw std::invalid_argument("Stepper: wave field and potential use different grids");
  }
  params_.validate();
  std::copy(psi_.amps.begin(), psi_.amps.end(), fft_.data().begin());
  rebuild_kinetic_tables();
  if (mode_ == Mode::ImaginaryTime) renormalize();
}

void Stepper::rebuild_kinetic_tables() {
  const Grid& g = psi_.grid;
  const double inv_n = 1.0 / static_cast<double>(g.size());
  const double tau = time_step();
  half_kinetic_.resize(g.size());
  full_kinetic_.resize(g.size());
  for (std::size_t j = 0; j < g.nz(); ++j) {
    const double qz2 = g.qz(j) * g.qz(j);
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double e = 0.5 * params_.k * (g.qx(i) * g.qx(i) + qz2);
      const std::size_t n = g.index(i, j);
      // The 1/N of the unnormalized inverse transform is folded in here.
      if (mode_ == Mode::RealTime) {
        half_kinetic_[n] = std::polar(inv_n, -e * 0.5 * tau);
        full_kinetic_[n] = std::polar(inv_n, -e * tau);
      } else {
        half_kinetic_[n] = inv_n * std::exp(-e * 0.5 * tau);
        full_kinetic_[n] = inv_n * std::exp(-e * tau);
      }
    }
  }
}

void Stepper::kinetic(const std::vector<cplx>& factor) {
  fft_.forward();
  auto buf = fft_.data();
  for (std::size_t n = 0; n < buf.size(); ++n) buf[n] *= factor[n];
  fft_.backward();
}

double Stepper::potential_substep() {
  auto buf = fft_.data();
  const auto& v = potential_.values;
  const double G = params_.G;
  double total = 0.0;
  if (mode_ == Mode::RealTime) {
    const double dt = params_.dt;
    for (std::size_t n = 0; n < buf.size(); ++n) {
      const double d = std::norm(buf[n]);
      total += d;
      buf[n] *= std::polar(1.0, -(v[n] + G * d) * dt);
    }
  } else {
    const double tau = params_.imag_dt;
    for (std::size_t n = 0; n < buf.size(); ++n) {
      const double d = std::norm(buf[n]);
      total += d;
      buf[n] *= std::exp(-(v[n] + G * d) * tau);
    }
  }
  return total;
}

void Stepper::renormalize() {
  auto buf = fft_.data();
  double s = 0.0;
  for (const auto& a : buf) s += std::norm(a);
  s *= psi_.grid.cell_area();
  if (!(s > 0.0) || !std::isfinite(s)) fail();
  const double scale = 1.0 / std::sqrt(s);
  for (auto& a : buf) a *= scale;
}

void Stepper::fail() const {
  double max_amp = 0.0;
  for (const auto& a : fft_.data()) {
    const double m = std::abs(a);
    if (std::isnan(m) || m > max_amp) max_amp = m;
    if (std::isnan(m)) break;
  }
  throw StepError(step_index_, max_amp);
}

void Stepper::step() { advance(1); }

void Stepper::advance(std::size_t n) {
  if (n == 0) return;
  if (mode_ == Mode::ImaginaryTime) {
    for (std::size_t s = 0; s < n; ++s) {
      kinetic(half_kinetic_);
      const double total = potential_substep();
      kinetic(half_kinetic_);
      ++step_index_;
      if (!std::isfinite(total)) fail();
      renormalize();
    }
  } else {
    kinetic(half_kinetic_);
    for (std::size_t s = 0; s < n; ++s) {
      const double total = potential_substep();
      kinetic(s + 1 == n ? half_kinetic_ : full_kinetic_);
      ++step_index_;
      if (!std::isfinite(total)) fail();
    }
    // Catches blow-up introduced by the final kinetic factor.
    double tail = 0.0;
    for (const auto& a : fft_.data()) tail += std::norm(a);
    if (!std::isfinite(tail)) fail();
  }
  psi_stale_ = true;
}

const WaveField& Stepper::state() const {
  if (psi_stale_) {
    std::copy(fft_.data().begin(), fft_.data().end(), psi_.amps.begin());
    if (mode_ == Mode::RealTime) {
      psi_.time = start_time_ + static_cast<double>(step_index_) * params_.dt;
    }
    psi_stale_ = false;
  }
  return psi_;
}

double Stepper::energy() const {
  const WaveField& psi = state();
  std::copy(psi.amps.begin(), psi.amps.end(), scratch_.data().begin());
  scratch_.forward();
  return energy_from_spectrum(psi, scratch_.data(), potential_, params_.k, params_.G);
}

void Stepper::set_potential(PotentialField potential) {
  if (!(potential.grid == psi_.grid)) {
    throw std::invalid_argument("Stepper: potential grid mismatch");
  }
  potential_ = std::move(potential);
}

void Stepper::set_mode(Mode mode) {
  if (mode == mode_) return;
  const WaveField& current = state();
  start_time_ = current.time;
  step_index_ = 0;
  mode_ = mode;
  rebuild_kinetic_tables();
}

void Stepper::set_time_step(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("Stepper: time step must be positive");
  const WaveField& current = state();
  start_time_ = current.time;
  step_index_ = 0;
  if (mode_ == Mode::RealTime) {
    params_.dt = dt;
  } else {
    params_.imag_dt = dt;
  }
  rebuild_kinetic_tables();
}

WaveField default_seed(const Grid& grid, double z0) {
  return gaussian_packet(grid, 0.0, z0, 1.0);
}

GroundState ground_state(const Grid& grid, const PotentialField& trap,
                         const SimParams& params, const WaveField& seed) {
  if (!(seed.grid == grid) || !(trap.grid == grid)) {
    throw std::invalid_argument("ground_state: grid mismatch");
  }
  if (!(params.imag_dt > 0.0)) throw std::invalid_argument("ground_state: imag_dt must be positive");
  const double seed_norm = norm(seed);
  if (!(seed_norm > 0.0) || !std::isfinite(seed_norm)) {
    throw std::domain_error("ground_state: seed has zero norm");
  }

  GroundState out{normalize(seed)};
  if (params.imag_dt > 0.01) {
    std::ostringstream os;
    os << "imag_dt = " << params.imag_dt
       << " exceeds 0.01; imaginary-time relaxation may be inaccurate";
    out.warnings.push_back(os.str());
  }

  Stepper stepper(out.psi, trap, params, Mode::ImaginaryTime);
  double previous = stepper.energy();
  out.energies.push_back(previous);
  double residual = 0.0;
  for (std::size_t it = 1; it <= params.gs_max_iter; ++it) {
    stepper.step();
    const double e = stepper.energy();
    out.energies.push_back(e);
    residual = std::abs(e - previous) / std::max(1.0, std::abs(e));
    previous = e;
    if (residual < params.gs_tol) {
      out.psi = stepper.state();
      out.energy = e;
      out.iterations = it;
      out.residual = residual;
      return out;
    }
  }
  throw ConvergenceError(params.gs_max_iter, residual);
}

Schedule make_schedule(const SimParams& params) {
  params.validate();
  auto count = [&](double span, const char* what) {
    const double ratio = span / params.dt;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
      throw std::invalid_argument(std::string(what) + " must be an integer multiple of dt");
    }
    return static_cast<std::size_t>(rounded);
  };
  return Schedule{count(params.t_end, "t_end"), count(params.snapshot_dt, "snapshot_dt")};
}

Trajectory run_release(const Grid& grid, const SimParams& params, ReleaseOptions options) {
  using clock = std::chrono::steady_clock;
  const Schedule schedule = make_schedule(params);
  const std::size_t stride = std::max<std::size_t>(1, options.series_stride);

  const auto t0 = clock::now();
  Trajectory traj{[&] {
    if (options.prepared) return std::move(*options.prepared);
    const auto trap = initial_trap_potential(grid, params.z0);
    return ground_state(grid, trap, params, default_seed(grid, params.z0));
  }()};
  if (!(traj.ground.psi.grid == grid)) {
    throw std::invalid_argument("run_release: prepared ground state is on a different grid");
  }
  traj.warnings = traj.ground.warnings;
  const auto t1 = clock::now();

  WaveField initial = traj.ground.psi;
  initial.time = 0.0;
  Stepper stepper(std::move(initial), eswp_potential(grid, params), params, Mode::RealTime);

  auto record = [&] {
    traj.series.append(stepper.state().time, stepper.state(), stepper.potential(),
                       params.k, params.G);
  };
  record();

  std::size_t step = 0;
  while (step < schedule.total_steps) {
    const std::size_t next_series = (step / stride + 1) * stride;
    const std::size_t next_snapshot =
        (step / schedule.steps_per_snapshot + 1) * schedule.steps_per_snapshot;
    const std::size_t stop = std::min({next_series, next_snapshot, schedule.total_steps});
    stepper.advance(stop - step);
    step = stop;
    if (step % stride == 0 || step == schedule.total_steps) record();
    if (step % schedule.steps_per_snapshot == 0) {
      Snapshot snap{stepper.state().time, stepper.state()};
      if (options.on_snapshot) {
        options.on_snapshot(snap);
      } else {
        traj.snapshots.push_back(std::move(snap));
      }
    }
  }
  const auto t2 = clock::now();

  const auto& s = traj.series;
  for (std::size_t i = 0; i < s.size(); ++i) {
    traj.norm_drift = std::max(traj.norm_drift, std::abs(s.norm[i] - s.norm[0]));
    traj.energy_drift = std::max(traj.energy_drift,
                                 std::abs(s.energy[i] - s.energy[0]) / std::abs(s.energy[0]));
    traj.max_edge_density = std::max(traj.max_edge_density, s.edge_density[i]);
  }
  if (traj.max_edge_density > 1e-3) {
    std::ostringstream os;
    os << "edge density reached " << traj.max_edge_density
       << "; periodic wrap-around may contaminate the result";
    traj.warnings.push_back(os.str());
  }
  traj.ground_state_seconds = std::chrono::duration<double>(t1 - t0).count();
  traj.propagation_seconds = std::chrono::duration<double>(t2 - t1).count();
  return traj;
}

}  // namespace eswp
