#include "viag/grating.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "viag/errors.hpp"
#include "viag/parallel.hpp"

namespace viag {

GratingGeometry::GratingGeometry(double length_, double period, int periods)
    : length(length_), spatial_period(period), num_periods(periods) {
  if (!(length > 0.0)) {
    throw std::domain_error("GratingGeometry: length must be positive");
  }
  if (!(spatial_period > 0.0)) {
    throw std::domain_error("GratingGeometry: spatial_period must be positive");
  }
  if (num_periods < 1) {
    throw std::domain_error("GratingGeometry: num_periods must be >= 1");
  }
}

std::complex<double> transmission(const GratingGeometry& geometry,
                                  const Susceptibility& chi, double k_p) {
  if (!std::isfinite(chi.value.real()) || !std::isfinite(chi.value.imag())) {
    throw std::invalid_argument("transmission: non-finite susceptibility");
  }
  const double half_kl = 0.5 * k_p * geometry.length;
  const double amplitude = std::exp(-half_kl * chi.absorption());
  const double phase = half_kl * chi.dispersion();
  return {amplitude * std::cos(phase), amplitude * std::sin(phase)};
}

TransmissionSample transmission_at(double x, const GratingGeometry& geometry,
                                   const AtomicMedium& medium,
                                   const CavityConfig& cavity,
                                   const ProbeConfig& probe, double epsilon0) {
  const double omega_c = rabi_at(x, cavity.rabi_peak(), cavity.spatial_period);
  const Susceptibility chi =
      susceptibility(medium, omega_c, probe.detuning_p, probe.detuning_c,
                     epsilon0);
  const double half_kl = 0.5 * probe.wave_number() * geometry.length;
  TransmissionSample sample;
  sample.position = x;
  sample.value = transmission(geometry, chi, probe.wave_number());
  sample.amplitude = std::exp(-half_kl * chi.absorption());
  sample.phase = half_kl * chi.dispersion();
  return sample;
}

std::vector<TransmissionSample> transmission_profile(
    std::span<const double> x_grid, const GratingGeometry& geometry,
    const AtomicMedium& medium, const CavityConfig& cavity,
    const ProbeConfig& probe, double epsilon0) {
  std::vector<TransmissionSample> samples;
  samples.reserve(x_grid.size());
  for (const double x : x_grid) {
    samples.push_back(
        transmission_at(x, geometry, medium, cavity, probe, epsilon0));
  }
  return samples;
}

std::complex<double> single_period_amplitude(double theta_sin,
                                             const GratingGeometry& geometry,
                                             const AtomicMedium& medium,
                                             const CavityConfig& cavity,
                                             const ProbeConfig& probe,
                                             const QuadratureOptions& opts,
                                             double epsilon0) {
  TransmissionTable table(medium, cavity, probe, geometry, epsilon0);
  const double omega = constants::two_pi * theta_sin / probe.wavelength;
  return fourier_coefficient(table, omega, opts);
}

double grating_factor(double theta_sin, int num_periods,
                      double period_over_wavelength) {
  if (num_periods < 1) {
    throw std::domain_error("grating_factor: num_periods must be >= 1");
  }
  const double m = static_cast<double>(num_periods);
  const double u = constants::pi * period_over_wavelength * theta_sin;
  const double sin_u = std::sin(u);
  if (std::abs(sin_u) < 1e-8) {
    // Removable singularity at the Bragg angles u = n*pi: with e = u - n*pi,
    // sin^2(M u) / (M sin u)^2 = sinc(M e)^2 * (e / sin e)^2, and e/sin(e)
    // rounds to 1 for |e| <= 1e-8.
    const double nearest = std::round(u / constants::pi);
    const double e = u - nearest * constants::pi;
    const double t = m * e;
    const double sinc = std::abs(t) < 1e-4 ? 1.0 - t * t / 6.0 : std::sin(t) / t;
    return std::min(sinc * sinc, 1.0);
  }
  const double ratio = std::sin(m * u) / (m * sin_u);
  return std::min(ratio * ratio, 1.0);
}

std::map<int, std::complex<double>> order_amplitudes(
    const GratingGeometry& geometry, const AtomicMedium& medium,
    const CavityConfig& cavity, const ProbeConfig& probe, int max_order,
    const QuadratureOptions& opts, double epsilon0) {
  if (max_order < 0) {
    throw std::domain_error("order_amplitudes: max_order must be >= 0");
  }
  TransmissionTable table(medium, cavity, probe, geometry, epsilon0);
  std::map<int, std::complex<double>> orders;
  for (int n = -max_order; n <= max_order; ++n) {
    const double omega =
        constants::two_pi * static_cast<double>(n) / geometry.spatial_period;
    orders[n] = fourier_coefficient(table, omega, opts);
  }
  return orders;
}

DiffractionProfile intensity_profile(std::span<const double> theta_grid,
                                     const GratingGeometry& geometry,
                                     const AtomicMedium& medium,
                                     const CavityConfig& cavity,
                                     const ProbeConfig& probe,
                                     const IntensityOptions& opts) {
  for (const double s : theta_grid) {
    if (!(s >= -1.0 && s <= 1.0)) {
      throw std::domain_error(
          "intensity_profile: sin(theta) grid values must lie in [-1, 1]");
    }
  }
  const double ratio = geometry.spatial_period / probe.wavelength;
  TransmissionTable table(medium, cavity, probe, geometry, opts.epsilon0);

  DiffractionProfile profile;
  profile.samples.resize(theta_grid.size());
  parallel_for(theta_grid.size(), opts.jobs, [&](std::size_t i) {
    const double theta_sin = theta_grid[i];
    std::complex<double> amplitude;
    try {
      const double omega = constants::two_pi * theta_sin / probe.wavelength;
      amplitude = fourier_coefficient(table, omega, opts.quadrature);
    } catch (const QuadratureError& err) {
      std::ostringstream os;
      os << err.what() << " at sin(theta) = " << theta_sin;
      throw QuadratureError(os.str(), err.coarse_estimate, err.fine_estimate,
                            err.panels);
    }
    const double factor = grating_factor(theta_sin, geometry.num_periods,
                                         ratio);
    profile.samples[i] = {theta_sin, std::norm(amplitude) * factor};
  });

  for (int n = -opts.max_order; n <= opts.max_order; ++n) {
    const double omega =
        constants::two_pi * static_cast<double>(n) / geometry.spatial_period;
    profile.order_amplitudes[n] = fourier_coefficient(table, omega,
                                                      opts.quadrature);
  }
  return profile;
}

double first_order_intensity(const GratingGeometry& geometry,
                             const AtomicMedium& medium,
                             const CavityConfig& cavity,
                             const ProbeConfig& probe,
                             const QuadratureOptions& opts, double epsilon0) {
  TransmissionTable table(medium, cavity, probe, geometry, epsilon0);
  const double omega = constants::two_pi / geometry.spatial_period;
  const std::complex<double> c1 = fourier_coefficient(table, omega, opts);
  const double ratio = geometry.spatial_period / probe.wavelength;
  return std::norm(c1) * grating_factor(1.0 / ratio, geometry.num_periods,
                                        ratio);
}

}  // namespace viag
