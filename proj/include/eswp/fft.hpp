#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace eswp {

using cplx = std::complex<double>;

/// Number of threads used for internal data parallelism. Read once from the
/// ESWP_THREADS environment variable; 0 or unset means one per hardware core.
int worker_threads();

/// In-place 2D complex FFT over an owned, aligned nz x nx buffer (z outer).
/// Transforms are unnormalized: backward(forward(a)) == nx * nz * a.
/// Plans use FFTW_ESTIMATE so identical inputs give bit-identical outputs
/// from run to run.
class Fft2d {
 public:
  Fft2d(std::size_t nx, std::size_t nz);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;
  Fft2d(Fft2d&& other) noexcept;
  Fft2d& operator=(Fft2d&& other) noexcept;

  std::span<cplx> data() { return {buffer_, size()}; }
  std::span<const cplx> data() const { return {buffer_, size()}; }
  std::size_t size() const { return nx_ * nz_; }
  std::size_t nx() const { return nx_; }
  std::size_t nz() const { return nz_; }

  void forward();
  void backward();

 private:
  void release() noexcept;

  std::size_t nx_ = 0, nz_ = 0;
  cplx* buffer_ = nullptr;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

}  // namespace eswp
