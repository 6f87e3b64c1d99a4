#include "eswp/errors.hpp"

#include <sstream>

namespace eswp {

namespace {

std::string step_message(std::size_t step_index, double max_amplitude) {
  std::ostringstream os;
  os << "non-finite amplitude after step " << step_index
     << " (max |psi| = " << max_amplitude << ")";
  return os.str();
}

std::string convergence_message(std::size_t iterations, double residual) {
  std::ostringstream os;
  os << "ground state did not converge after " << iterations
     << " iterations (final residual " << residual << ")";
  return os.str();
}

}  // namespace

StepError::StepError(std::size_t step_index, double max_amplitude)
    : std::runtime_error(step_message(step_index, max_amplitude)),
      step_index_(step_index),
      max_amplitude_(max_amplitude) {}

ConvergenceError::ConvergenceError(std::size_t iterations, double residual)
    : std::runtime_error(convergence_message(iterations, residual)),
      iterations_(iterations),
      residual_(residual) {}

ConfigError::ConfigError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                  : what),
      line_(line) {}

}  // namespace eswp
