#include "eswp/fft.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <mutex>
#include <new>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace eswp {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

int threads_from_env() {
  int n = 0;
  if (const char* env = std::getenv("ESWP_THREADS")) {
    try {
      n = std::stoi(env);
    } catch (const std::exception&) {
      n = 0;
    }
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return n > 0 ? n : 1;
}

}  // namespace

int worker_threads() {
  static const int n = threads_from_env();
  return n;
}

Fft2d::Fft2d(std::size_t nx, std::size_t nz) : nx_(nx), nz_(nz) {
  if (nx == 0 || nz == 0) throw std::invalid_argument("Fft2d: empty extent");
  buffer_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * size()));
  if (buffer_ == nullptr) throw std::bad_alloc();
  std::lock_guard<std::mutex> lock(planner_mutex());
  static const bool threads_ready = fftw_init_threads() != 0;
  if (threads_ready) fftw_plan_with_nthreads(worker_threads());
  auto* raw = reinterpret_cast<fftw_complex*>(buffer_);
  const int n0 = static_cast<int>(nz_);
  const int n1 = static_cast<int>(nx_);
  forward_plan_ = fftw_plan_dft_2d(n0, n1, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_2d(n0, n1, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (forward_plan_ == nullptr || backward_plan_ == nullptr) {
    release();
    throw std::runtime_error("Fft2d: FFTW planning failed");
  }
  for (std::size_t k = 0; k < size(); ++k) buffer_[k] = 0.0;
}

Fft2d::~Fft2d() { release(); }

Fft2d::Fft2d(Fft2d&& other) noexcept
    : nx_(std::exchange(other.nx_, 0)),
      nz_(std::exchange(other.nz_, 0)),
      buffer_(std::exchange(other.buffer_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr)) {}

Fft2d& Fft2d::operator=(Fft2d&& other) noexcept {
  if (this != &other) {
    release();
    nx_ = std::exchange(other.nx_, 0);
    nz_ = std::exchange(other.nz_, 0);
    buffer_ = std::exchange(other.buffer_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    backward_plan_ = std::exchange(other.backward_plan_, nullptr);
  }
  return *this;
}

void Fft2d::release() noexcept {
  if (forward_plan_ != nullptr || backward_plan_ != nullptr) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (backward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  }
  forward_plan_ = backward_plan_ = nullptr;
  if (buffer_) fftw_free(buffer_);
  buffer_ = nullptr;
}

void Fft2d::forward() { fftw_execute(static_cast<fftw_plan>(forward_plan_)); }
void Fft2d::backward() { fftw_execute(static_cast<fftw_plan>(backward_plan_)); }

}  // namespace eswp
