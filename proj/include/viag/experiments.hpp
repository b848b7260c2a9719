#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "viag/grating.hpp"
#include "viag/physics.hpp"
#include "viag/quadrature.hpp"

namespace viag::experiments {

/// Named sweep over one parameter; resolvable names: delta_p (rad/s),
/// ell (m), n_c (integer endpoints).
struct SweepAxis {
  std::string parameter;
  double lo = 0.0;
  double hi = 0.0;
  int points = 2;
};

/// Throws std::invalid_argument for unknown parameter names or empty ranges.
void validate(const SweepAxis& axis);

/// Full resolved parameter set plus sweep resolutions. Defaults reproduce the
/// cesium-cavity working point: lambda_p = 852 nm, mu_ca = 3.79e-29 C m,
/// N = 1e18 m^-3, beta = 3.2, Gamma_ca = 2pi x 5.2 MHz, kappa = 2pi x 173 kHz,
/// l = 8 um, Lambda = 4 lambda_p, M = 5, gamma_ba = kappa, n_c = 0.
struct ScenarioConfig {
  ScenarioConfig(AtomicMedium medium, CavityConfig cavity, ProbeConfig probe,
                 GratingGeometry geometry)
      : medium(medium), cavity(cavity), probe(probe), geometry(geometry) {}

  AtomicMedium medium;
  CavityConfig cavity;
  ProbeConfig probe;
  GratingGeometry geometry;
  double epsilon0 = constants::epsilon0;
  QuadratureOptions quadrature{};

  int detuning_points = 201;
  double detuning_span = 0.0;  ///< half-width of the Delta_p grid, rad/s
  int theta_points = 2001;
  double theta_span = 0.5;     ///< half-width of the sin(theta) grid
  int x_points = 401;          ///< spatial samples over two periods
  double length_min = 1e-6;
  double length_max = 17e-6;
  int length_points = 161;
  int photon_max = 20;
  std::optional<SweepAxis> sweep;

  static ScenarioConfig defaults();
};

/// One output table: column headers, row-major values and the resolved
/// parameter metadata embedded in the file header. `name` is the file stem.
struct ScenarioResult {
  std::string name;
  std::vector<std::string> columns;
  std::vector<double> values;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t rows() const {
    return columns.empty() ? 0 : values.size() / columns.size();
  }
  double at(std::size_t row, std::size_t col) const {
    return values[row * columns.size() + col];
  }
  /// Throws std::runtime_error on non-finite values or ragged rows.
  void check() const;
};

std::vector<double> linspace(double lo, double hi, int count);

inline constexpr int kFig2Photons[] = {0, 5};
inline constexpr int kFig3Photons[] = {0, 1, 5};
inline constexpr int kFig4Photons[] = {0, 1};
inline constexpr int kFig7Photons[] = {0, 1, 4, 10};
inline constexpr int kFig8Photons[] = {0, 1, 4, 10};

/// Susceptibility spectra at x = Lambda/2, Delta_c = 0: panels a (Im chi) and
/// b (Re chi) per photon number, columns (Delta_p/Gamma_ca, chi, chi/N0).
std::vector<ScenarioResult> run_fig_chi_spectrum(
    const ScenarioConfig& config, std::span<const int> photon_numbers,
    unsigned jobs = 1);

/// Transmission modulation over two periods: panel a (|T|, Phi at
/// Delta_p = 0), panel b (at Delta_p = 0.25 Gamma_ca).
std::vector<ScenarioResult> run_fig_transmission(
    const ScenarioConfig& config, std::span<const int> photon_numbers,
    unsigned jobs = 1);

/// Fraunhofer intensity profile at Delta_p = Delta_c = 0 per photon number.
std::vector<ScenarioResult> run_fig_diffraction(
    const ScenarioConfig& config, std::span<const int> photon_numbers,
    unsigned jobs = 1);

/// Intensity over (Delta_p, sin theta) for n_c = 0, row-major triples.
ScenarioResult run_fig_heatmap(const ScenarioConfig& config, unsigned jobs = 1);

/// First-order intensity versus photon number at resonance.
ScenarioResult run_fig_photon_sweep(const ScenarioConfig& config,
                                    unsigned jobs = 1);

/// First-order intensity versus probe detuning per photon number.
std::vector<ScenarioResult> run_fig_detuning_sweep(
    const ScenarioConfig& config, std::span<const int> photon_numbers,
    unsigned jobs = 1);

/// First-order intensity versus medium length at resonance per photon number.
std::vector<ScenarioResult> run_fig_length_sweep(
    const ScenarioConfig& config, std::span<const int> photon_numbers,
    unsigned jobs = 1);

/// Generic single-photon-number tables driven by the configured probe.
ScenarioResult run_chi_table(const ScenarioConfig& config, unsigned jobs = 1);
ScenarioResult run_transmission_table(const ScenarioConfig& config);
ScenarioResult run_diffraction_table(const ScenarioConfig& config,
                                     unsigned jobs = 1);
/// Single row at the configured parameters, or a sweep when config.sweep is
/// set.
ScenarioResult run_first_order(const ScenarioConfig& config, unsigned jobs = 1);

}  // namespace viag::experiments
