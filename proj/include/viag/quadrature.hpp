#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "viag/physics.hpp"

namespace viag {

struct GratingGeometry;

/// Composite-Simpson refinement control: start at initial_panels over one
/// spatial period and double until two successive estimates of the (1/Lambda)
/// normalized integral differ by less than `tolerance` in absolute value,
/// giving up past max_panels.
struct QuadratureOptions {
  std::size_t initial_panels = 256;
  double tolerance = 1e-10;
  std::size_t max_panels = std::size_t{1} << 18;
};

/// Samples of the complex transmission T(x, l) on uniform dyadic grids over
/// one spatial period, built lazily per refinement level and shared between
/// evaluations at different diffraction angles. Thread-safe.
class TransmissionTable {
 public:
  struct Level {
    std::size_t panels = 0;
    double step = 0.0;
    std::vector<double> re;  ///< panels + 1 samples
    std::vector<double> im;
  };

  TransmissionTable(const AtomicMedium& medium, const CavityConfig& cavity,
                    const ProbeConfig& probe, const GratingGeometry& geometry,
                    double epsilon0 = constants::epsilon0);

  /// Generic sampler over [0, period]; used for analytic masks in tests.
  TransmissionTable(std::function<std::complex<double>(double)> sampler,
                    double period);

  const Level& at_panels(std::size_t panels);

  double period() const { return period_; }

 private:
  using Filler = std::function<void(const std::vector<double>& x,
                                    std::vector<double>& re,
                                    std::vector<double>& im)>;

  double period_;
  Filler fill_;
  std::map<std::size_t, std::unique_ptr<Level>> levels_;
  std::mutex mutex_;
};

/// (1/Lambda) * integral over one period of T(x) e^{-i omega x} dx with
/// successive panel doubling. Throws QuadratureError if the estimates do not
/// converge within opts.max_panels.
std::complex<double> fourier_coefficient(TransmissionTable& table,
                                         double omega,
                                         const QuadratureOptions& opts = {});

/// Single-period Fourier amplitude of an arbitrary complex mask:
/// (1/Lambda) * integral of mask(x) e^{-2 pi i x sin(theta) / lambda_p} dx.
std::complex<double> period_fourier_amplitude(
    const std::function<std::complex<double>(double)>& mask, double period,
    double wavelength, double theta_sin, const QuadratureOptions& opts = {});

}  // namespace viag
