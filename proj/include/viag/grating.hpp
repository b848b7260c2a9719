#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "viag/physics.hpp"
#include "viag/quadrature.hpp"

namespace viag {

/// Slab of medium of length l along z, periodically modulated along x with
/// period Lambda over M periods.
struct GratingGeometry {
  double length;          ///< l, m
  double spatial_period;  ///< Lambda, m
  int num_periods;        ///< M

  GratingGeometry(double length, double period, int periods);
};

struct TransmissionSample {
  double position = 0.0;               ///< x, m
  std::complex<double> value;          ///< T(x, l)
  double amplitude = 0.0;              ///< |T|
  double phase = 0.0;                  ///< Phi = k_p l Re[chi] / 2
};

struct DiffractionProfile {
  struct Point {
    double sin_theta;
    double intensity;
  };
  std::vector<Point> samples;
  /// Fourier coefficients c_n of T over one period; c_1 squared is the
  /// first-order diffraction intensity.
  std::map<int, std::complex<double>> order_amplitudes;
};

struct IntensityOptions {
  QuadratureOptions quadrature{};
  unsigned jobs = 1;
  int max_order = 8;
  double epsilon0 = constants::epsilon0;
};

/// T(l) = e^{i k_p chi l / 2} = e^{-k_p chi'' l / 2} e^{i k_p chi' l / 2}.
/// Throws std::invalid_argument for non-finite chi.
std::complex<double> transmission(const GratingGeometry& geometry,
                                  const Susceptibility& chi, double k_p);

/// Transmission at position x, evaluating the standing-wave susceptibility.
TransmissionSample transmission_at(double x, const GratingGeometry& geometry,
                                   const AtomicMedium& medium,
                                   const CavityConfig& cavity,
                                   const ProbeConfig& probe,
                                   double epsilon0 = constants::epsilon0);

std::vector<TransmissionSample> transmission_profile(
    std::span<const double> x_grid, const GratingGeometry& geometry,
    const AtomicMedium& medium, const CavityConfig& cavity,
    const ProbeConfig& probe, double epsilon0 = constants::epsilon0);

/// Single-period diffraction amplitude
/// F(theta) = (1/Lambda) * integral of T(x, l) e^{-2 pi i x sin(theta) /
/// lambda_p} dx, by converged composite Simpson.
std::complex<double> single_period_amplitude(double theta_sin,
                                             const GratingGeometry& geometry,
                                             const AtomicMedium& medium,
                                             const CavityConfig& cavity,
                                             const ProbeConfig& probe,
                                             const QuadratureOptions& opts = {},
                                             double epsilon0 = constants::epsilon0);

/// M-slit interference factor sin^2(M u) / (M sin u)^2 with
/// u = pi * ratio * sin(theta), ratio = Lambda / lambda_p. Returns exactly 1
/// at the Bragg angles sin(theta) = n / ratio (removable singularity resolved
/// by its series limit).
double grating_factor(double theta_sin, int num_periods,
                      double period_over_wavelength);

/// Fourier coefficients c_n of T over one period for |n| <= max_order.
std::map<int, std::complex<double>> order_amplitudes(
    const GratingGeometry& geometry, const AtomicMedium& medium,
    const CavityConfig& cavity, const ProbeConfig& probe, int max_order,
    const QuadratureOptions& opts = {},
    double epsilon0 = constants::epsilon0);

/// Fraunhofer intensity profile I(theta) = |F(theta)|^2 * grating_factor over
/// a grid of sin(theta) values in [-1, 1]. Quadrature failures are rethrown
/// annotated with the failing grid point.
DiffractionProfile intensity_profile(std::span<const double> theta_grid,
                                     const GratingGeometry& geometry,
                                     const AtomicMedium& medium,
                                     const CavityConfig& cavity,
                                     const ProbeConfig& probe,
                                     const IntensityOptions& opts = {});

/// I(theta_1) = |c_1|^2: the intensity at the first Bragg angle
/// sin(theta) = lambda_p / Lambda, where the grating factor is 1.
double first_order_intensity(const GratingGeometry& geometry,
                             const AtomicMedium& medium,
                             const CavityConfig& cavity,
                             const ProbeConfig& probe,
                             const QuadratureOptions& opts = {},
                             double epsilon0 = constants::epsilon0);

}  // namespace viag
