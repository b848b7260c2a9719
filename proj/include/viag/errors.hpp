#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace viag {

/// Parameter combination that makes the susceptibility (or a steady-state
/// system) singular, e.g. gamma_ba = 0 with zero two-photon detuning at a
/// standing-wave node.
class SingularParameterError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Composite-Simpson refinement hit the panel cap before two successive
/// estimates agreed. Carries the last two estimates for diagnostics.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(std::string message, std::complex<double> coarse,
                  std::complex<double> fine, std::size_t panels)
      : std::runtime_error(std::move(message)),
        coarse_estimate(coarse),
        fine_estimate(fine),
        panels(panels) {}

  std::complex<double> coarse_estimate;
  std::complex<double> fine_estimate;
  std::size_t panels;
};

/// Liouvillian null space has dimension != 1: the steady state is not unique
/// (or does not exist within numerical tolerance).
class RankDeficiencyError : public std::runtime_error {
 public:
  RankDeficiencyError(std::string message, int null_space_dimension)
      : std::runtime_error(std::move(message)),
        null_space_dimension(null_space_dimension) {}

  int null_space_dimension;
};

/// Configuration text error with 1-based line/column context.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, std::size_t line, std::size_t column)
      : std::runtime_error(std::move(message)), line(line), column(column) {}

  std::size_t line;
  std::size_t column;
};

}  // namespace viag
