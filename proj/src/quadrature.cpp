#include "viag/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "viag/errors.hpp"
#include "viag/grating.hpp"
#include "viag/kernels.hpp"

namespace viag {

TransmissionTable::TransmissionTable(const AtomicMedium& medium,
                                     const CavityConfig& cavity,
                                     const ProbeConfig& probe,
                                     const GratingGeometry& geometry,
                                     double epsilon0)
    : period_(geometry.spatial_period) {
  if (cavity.spatial_period != geometry.spatial_period) {
    throw std::invalid_argument(
        "TransmissionTable: cavity and geometry spatial periods disagree");
  }
  const auto params =
      kernels::ChiParams::from(medium, probe.detuning_p, probe.detuning_c,
                               epsilon0);
  if (params.gamma_ba == 0.0 && params.delta == 0.0) {
    // Omega_c vanishes at the grid endpoints (standing-wave nodes), where
    // this parameter combination makes the susceptibility singular.
    throw SingularParameterError(
        "TransmissionTable: susceptibility is singular at standing-wave nodes "
        "(gamma_ba = 0 and zero two-photon detuning)");
  }
  const double omega0 = cavity.rabi_peak();
  const double period = period_;
  const double half_kl = 0.5 * probe.wave_number() * geometry.length;
  fill_ = [params, omega0, period, half_kl](const std::vector<double>& x,
                                            std::vector<double>& re,
                                            std::vector<double>& im) {
    const std::size_t n = x.size();
    std::vector<double> omega_sq(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = omega0 * std::sin(constants::pi * x[i] / period);
      omega_sq[i] = w * w;
    }
    std::vector<double> chi_re(n);
    std::vector<double> chi_im(n);
    kernels::active().susceptibility_batch(omega_sq.data(), n, params,
                                           chi_re.data(), chi_im.data());
    kernels::transmission_batch(chi_re.data(), chi_im.data(), n, half_kl,
                                re.data(), im.data());
  };
}

TransmissionTable::TransmissionTable(
    std::function<std::complex<double>(double)> sampler, double period)
    : period_(period) {
  if (!(period > 0.0)) {
    throw std::domain_error("TransmissionTable: period must be positive");
  }
  fill_ = [sampler = std::move(sampler)](const std::vector<double>& x,
                                         std::vector<double>& re,
                                         std::vector<double>& im) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const std::complex<double> t = sampler(x[i]);
      re[i] = t.real();
      im[i] = t.imag();
    }
  };
}

const TransmissionTable::Level& TransmissionTable::at_panels(
    std::size_t panels) {
  if (panels < 2 || panels % 2 != 0) {
    throw std::invalid_argument(
        "TransmissionTable: panel count must be even and >= 2");
  }
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = levels_.find(panels);
  if (it != levels_.end()) return *it->second;

  auto level = std::make_unique<Level>();
  level->panels = panels;
  const double n = static_cast<double>(panels);
  level->step = period_ / n;
  std::vector<double> x(panels + 1);
  for (std::size_t j = 0; j <= panels; ++j) {
    x[j] = (static_cast<double>(j) * period_) / n;
  }
  level->re.resize(panels + 1);
  level->im.resize(panels + 1);
  fill_(x, level->re, level->im);
  it = levels_.emplace(panels, std::move(level)).first;
  return *it->second;
}

std::complex<double> fourier_coefficient(TransmissionTable& table,
                                         double omega,
                                         const QuadratureOptions& opts) {
  if (opts.initial_panels < 16 || opts.initial_panels % 2 != 0) {
    throw std::invalid_argument(
        "fourier_coefficient: initial_panels must be even and >= 16");
  }
  if (!(opts.tolerance > 0.0)) {
    throw std::invalid_argument("fourier_coefficient: tolerance must be > 0");
  }
  if (opts.max_panels < 2 * opts.initial_panels) {
    throw std::invalid_argument(
        "fourier_coefficient: max_panels must allow at least one doubling");
  }
  const double inv_period = 1.0 / table.period();
  auto estimate = [&](std::size_t panels) {
    const auto& level = table.at_panels(panels);
    return kernels::active().oscillatory_simpson(level.re.data(),
                                                 level.im.data(), level.panels,
                                                 level.step, omega) *
           inv_period;
  };

  std::size_t panels = opts.initial_panels;
  std::complex<double> coarse = estimate(panels);
  std::complex<double> fine = coarse;
  while (panels * 2 <= opts.max_panels) {
    panels *= 2;
    fine = estimate(panels);
    if (std::abs(fine - coarse) < opts.tolerance) return fine;
    if (panels * 2 <= opts.max_panels) coarse = fine;
  }
  std::ostringstream os;
  os << "fourier_coefficient: no convergence at " << panels
     << " panels (last delta " << std::abs(fine - coarse) << ", tolerance "
     << opts.tolerance << ")";
  throw QuadratureError(os.str(), coarse, fine, panels);
}

std::complex<double> period_fourier_amplitude(
    const std::function<std::complex<double>(double)>& mask, double period,
    double wavelength, double theta_sin, const QuadratureOptions& opts) {
  if (!(wavelength > 0.0)) {
    throw std::domain_error("period_fourier_amplitude: wavelength must be > 0");
  }
  TransmissionTable table(mask, period);
  const double omega = constants::two_pi * theta_sin / wavelength;
  return fourier_coefficient(table, omega, opts);
}

}  // namespace viag
