#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eswp {

/// Raised when a real- or imaginary-time step produces non-finite amplitudes.
class StepError : public std::runtime_error {
 public:
  StepError(std::size_t step_index, double max_amplitude);

  std::size_t step_index() const { return step_index_; }
  double max_amplitude() const { return max_amplitude_; }

 private:
  std::size_t step_index_;
  double max_amplitude_;
};

/// Raised when imaginary-time relaxation hits its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::size_t iterations, double residual);

  std::size_t iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

/// Configuration parse or validation failure; line is 1-based, 0 when the
/// problem is not tied to a single line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what);

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eswp
