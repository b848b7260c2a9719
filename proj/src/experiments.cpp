#include "viag/experiments.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "viag/format.hpp"
#include "viag/kernels.hpp"
#include "viag/parallel.hpp"
#include "viag/version.hpp"

namespace viag::experiments {

namespace {

constexpr double kDefaultGammaCa = constants::two_pi * 5.2e6;
constexpr double kDefaultKappa = constants::two_pi * 173e3;

void append_common_metadata(const ScenarioConfig& cfg, ScenarioResult& result,
                            const std::string& scenario) {
  auto& md = result.metadata;
  auto put = [&md](const std::string& key, double value) {
    md.emplace_back(key, format_double(value));
  };
  md.emplace_back("viag_version", kVersion);
  md.emplace_back("scenario", scenario);
  put("lambda_p", cfg.probe.wavelength);
  put("k_p", cfg.probe.wave_number());
  put("mu_ca", cfg.medium.dipole_moment);
  put("epsilon0", cfg.epsilon0);
  put("density", cfg.medium.density);
  put("Gamma_ca", cfg.medium.gamma_ca_decay);
  put("Gamma_cb", cfg.medium.gamma_cb_decay);
  put("gamma_c", cfg.medium.dephase_c);
  put("gamma_ba", cfg.medium.coherence_decay_ba());
  put("gamma_ca", cfg.medium.coherence_decay_ca());
  put("kappa", cfg.cavity.kappa);
  put("coupling_g", cfg.cavity.coupling_g);
  put("beta", cfg.cavity.cooperativity(cfg.medium.gamma_ca_decay));
  put("Lambda", cfg.geometry.spatial_period);
  put("ell", cfg.geometry.length);
  md.emplace_back("M", std::to_string(cfg.geometry.num_periods));
  put("chi_prefactor_n0", cfg.medium.chi_prefactor(cfg.epsilon0));
  md.emplace_back("quad_initial_panels",
                  std::to_string(cfg.quadrature.initial_panels));
  put("quad_tolerance", cfg.quadrature.tolerance);
  md.emplace_back("quad_max_panels", std::to_string(cfg.quadrature.max_panels));
  md.emplace_back("kernel_backend", std::string(kernels::active().name));
}

void put_photon_metadata(const ScenarioConfig& cfg, ScenarioResult& result,
                         int n_c) {
  result.metadata.emplace_back("n_c", std::to_string(n_c));
  result.metadata.emplace_back(
      "omega0", format_double(rabi_amplitude(cfg.cavity.coupling_g, n_c)));
}

CavityConfig with_photons(const CavityConfig& cavity, int n_c) {
  return CavityConfig(cavity.coupling_g, cavity.kappa, n_c,
                      cavity.spatial_period);
}

}  // namespace

void validate(const SweepAxis& axis) {
  if (axis.parameter != "delta_p" && axis.parameter != "ell" &&
      axis.parameter != "n_c") {
    throw std::invalid_argument("sweep axis '" + axis.parameter +
                                "' does not resolve to a known parameter "
                                "(expected delta_p, ell or n_c)");
  }
  if (!(axis.lo <= axis.hi)) {
    throw std::invalid_argument("sweep range for '" + axis.parameter +
                                "' is empty");
  }
  if (axis.points < 1) {
    throw std::invalid_argument("sweep for '" + axis.parameter +
                                "' needs at least one point");
  }
  if (axis.parameter == "n_c" && axis.lo < 0) {
    throw std::invalid_argument("sweep over n_c needs nonnegative endpoints");
  }
}

ScenarioConfig ScenarioConfig::defaults() {
  const double lambda_p = 852e-9;
  AtomicMedium medium(3.79e-29, 1e18, kDefaultGammaCa, 0.0, kDefaultKappa,
                      0.0);
  CavityConfig cavity = CavityConfig::from_cooperativity(
      3.2, kDefaultGammaCa, kDefaultKappa, 0, 4.0 * lambda_p);
  ProbeConfig probe(lambda_p, 0.0, 0.0);
  GratingGeometry geometry(8.0e-6, 4.0 * lambda_p, 5);
  ScenarioConfig cfg(medium, cavity, probe, geometry);
  cfg.detuning_span = 3.0 * kDefaultGammaCa;
  return cfg;
}

void ScenarioResult::check() const {
  if (columns.empty() || values.size() % columns.size() != 0) {
    throw std::runtime_error("ScenarioResult '" + name + "': ragged table");
  }
  for (const double v : values) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("ScenarioResult '" + name +
                               "': non-finite value");
    }
  }
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) {
    throw std::invalid_argument("linspace: count must be >= 1");
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  if (count == 1) {
    grid[0] = lo;
    return grid;
  }
  const double span = hi - lo;
  const double denom = static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + span * (static_cast<double>(i) / denom);
  }
  return grid;
}

namespace {

/// chi rows at x = Lambda/2 for one photon number.
void chi_spectrum_rows(const ScenarioConfig& cfg, int n_c, double detuning_c,
                       std::vector<double>& detunings,
                       std::vector<std::complex<double>>& chis) {
  detunings = linspace(-cfg.detuning_span, cfg.detuning_span,
                       cfg.detuning_points);
  const double omega0 = rabi_amplitude(cfg.cavity.coupling_g, n_c);
  const double omega_c =
      rabi_at(cfg.cavity.spatial_period / 2.0, omega0,
              cfg.cavity.spatial_period);
  chis.resize(detunings.size());
  for (std::size_t i = 0; i < detunings.size(); ++i) {
    chis[i] = susceptibility(cfg.medium, omega_c, detunings[i], detuning_c,
                             cfg.epsilon0)
                  .value;
  }
}

}  // namespace

std::vector<ScenarioResult> run_fig_chi_spectrum(
    const ScenarioConfig& cfg, std::span<const int> photon_numbers,
    unsigned /*jobs*/) {
  std::vector<ScenarioResult> results;
  const double n0 = cfg.medium.chi_prefactor(cfg.epsilon0);
  for (const int n_c : photon_numbers) {
    std::vector<double> detunings;
    std::vector<std::complex<double>> chis;
    chi_spectrum_rows(cfg, n_c, 0.0, detunings, chis);

    ScenarioResult im_panel;
    im_panel.name = "fig2_a_" + std::to_string(n_c);
    im_panel.columns = {"delta_p_over_gamma_ca", "im_chi", "im_chi_over_n0"};
    ScenarioResult re_panel;
    re_panel.name = "fig2_b_" + std::to_string(n_c);
    re_panel.columns = {"delta_p_over_gamma_ca", "re_chi", "re_chi_over_n0"};
    for (std::size_t i = 0; i < detunings.size(); ++i) {
      const double dp = detunings[i] / cfg.medium.gamma_ca_decay;
      im_panel.values.insert(im_panel.values.end(),
                             {dp, chis[i].imag(), chis[i].imag() / n0});
      re_panel.values.insert(re_panel.values.end(),
                             {dp, chis[i].real(), chis[i].real() / n0});
    }
    for (ScenarioResult* panel : {&im_panel, &re_panel}) {
      append_common_metadata(cfg, *panel, panel->name);
      put_photon_metadata(cfg, *panel, n_c);
      panel->metadata.emplace_back("x", format_double(
          cfg.cavity.spatial_period / 2.0));
      panel->metadata.emplace_back("Delta_c", "0");
      panel->check();
    }
    results.push_back(std::move(im_panel));
    results.push_back(std::move(re_panel));
  }
  return results;
}

std::vector<ScenarioResult> run_fig_transmission(
    const ScenarioConfig& cfg, std::span<const int> photon_numbers,
    unsigned /*jobs*/) {
  const std::vector<double> x_grid =
      linspace(0.0, 2.0 * cfg.geometry.spatial_period, cfg.x_points);
  struct Panel {
    const char* tag;
    double detuning_p;
  };
  const Panel panels[] = {{"a", 0.0},
                          {"b", 0.25 * cfg.medium.gamma_ca_decay}};

  std::vector<ScenarioResult> results;
  for (const int n_c : photon_numbers) {
    const CavityConfig cavity = with_photons(cfg.cavity, n_c);
    for (const Panel& panel : panels) {
      const ProbeConfig probe(cfg.probe.wavelength, panel.detuning_p, 0.0);
      const auto samples = transmission_profile(x_grid, cfg.geometry,
                                                cfg.medium, cavity, probe,
                                                cfg.epsilon0);
      ScenarioResult result;
      result.name = "fig3_" + std::string(panel.tag) + "_" +
                    std::to_string(n_c);
      result.columns = {"x_over_period", "amplitude", "phase"};
      for (const TransmissionSample& s : samples) {
        result.values.insert(result.values.end(),
                             {s.position / cfg.geometry.spatial_period,
                              s.amplitude, s.phase});
      }
      append_common_metadata(cfg, result, result.name);
      put_photon_metadata(cfg, result, n_c);
      result.metadata.emplace_back("Delta_p", format_double(panel.detuning_p));
      result.metadata.emplace_back("Delta_c", "0");
      result.check();
      results.push_back(std::move(result));
    }
  }
  return results;
}

namespace {

ScenarioResult diffraction_profile_table(const ScenarioConfig& cfg, int n_c,
                                         const ProbeConfig& probe,
                                         const std::string& name,
                                         unsigned jobs) {
  const std::vector<double> grid =
      linspace(-cfg.theta_span, cfg.theta_span, cfg.theta_points);
  const CavityConfig cavity = with_photons(cfg.cavity, n_c);
  IntensityOptions opts;
  opts.quadrature = cfg.quadrature;
  opts.jobs = jobs;
  opts.epsilon0 = cfg.epsilon0;
  const DiffractionProfile profile =
      intensity_profile(grid, cfg.geometry, cfg.medium, cavity, probe, opts);

  ScenarioResult result;
  result.name = name;
  result.columns = {"sin_theta", "intensity"};
  for (const DiffractionProfile::Point& p : profile.samples) {
    result.values.insert(result.values.end(), {p.sin_theta, p.intensity});
  }
  append_common_metadata(cfg, result, result.name);
  put_photon_metadata(cfg, result, n_c);
  result.metadata.emplace_back("Delta_p", format_double(probe.detuning_p));
  result.metadata.emplace_back("Delta_c", format_double(probe.detuning_c));
  result.check();
  return result;
}

}  // namespace

std::vector<ScenarioResult> run_fig_diffraction(
    const ScenarioConfig& cfg, std::span<const int> photon_numbers,
    unsigned jobs) {
  std::vector<ScenarioResult> results;
  const ProbeConfig probe(cfg.probe.wavelength, 0.0, 0.0);
  for (const int n_c : photon_numbers) {
    results.push_back(diffraction_profile_table(
        cfg, n_c, probe, "fig4_profile_" + std::to_string(n_c), jobs));
  }
  return results;
}

ScenarioResult run_fig_heatmap(const ScenarioConfig& cfg, unsigned jobs) {
  const std::vector<double> detunings =
      linspace(-cfg.detuning_span, cfg.detuning_span, cfg.detuning_points);
  const std::vector<double> thetas =
      linspace(-cfg.theta_span, cfg.theta_span, cfg.theta_points);
  const CavityConfig cavity = with_photons(cfg.cavity, 0);

  const std::size_t cols = thetas.size();
  std::vector<double> intensity(detunings.size() * cols);
  parallel_for(detunings.size(), jobs, [&](std::size_t row) {
    const ProbeConfig probe(cfg.probe.wavelength, detunings[row], 0.0);
    IntensityOptions opts;
    opts.quadrature = cfg.quadrature;
    opts.jobs = 1;
    opts.max_order = 0;
    opts.epsilon0 = cfg.epsilon0;
    const DiffractionProfile profile = intensity_profile(
        thetas, cfg.geometry, cfg.medium, cavity, probe, opts);
    for (std::size_t c = 0; c < cols; ++c) {
      intensity[row * cols + c] = profile.samples[c].intensity;
    }
  });

  ScenarioResult result;
  result.name = "fig5_heatmap_0";
  result.columns = {"delta_p_over_gamma_ca", "sin_theta", "intensity"};
  result.values.reserve(detunings.size() * cols * 3);
  for (std::size_t r = 0; r < detunings.size(); ++r) {
    const double dp = detunings[r] / cfg.medium.gamma_ca_decay;
    for (std::size_t c = 0; c < cols; ++c) {
      result.values.insert(result.values.end(),
                           {dp, thetas[c], intensity[r * cols + c]});
    }
  }
  append_common_metadata(cfg, result, result.name);
  put_photon_metadata(cfg, result, 0);
  result.metadata.emplace_back("Delta_c", "0");
  result.check();
  return result;
}

ScenarioResult run_fig_photon_sweep(const ScenarioConfig& cfg, unsigned jobs) {
  const int count = cfg.photon_max + 1;
  std::vector<double> intensities(static_cast<std::size_t>(count));
  const ProbeConfig probe(cfg.probe.wavelength, 0.0, 0.0);
  parallel_for(static_cast<std::size_t>(count), jobs, [&](std::size_t i) {
    const CavityConfig cavity = with_photons(cfg.cavity, static_cast<int>(i));
    intensities[i] = first_order_intensity(cfg.geometry, cfg.medium, cavity,
                                           probe, cfg.quadrature,
                                           cfg.epsilon0);
  });

  ScenarioResult result;
  result.name = "fig6_sweep_all";
  result.columns = {"n_c", "first_order_intensity"};
  for (int n = 0; n < count; ++n) {
    result.values.insert(result.values.end(),
                         {static_cast<double>(n),
                          intensities[static_cast<std::size_t>(n)]});
  }
  append_common_metadata(cfg, result, result.name);
  result.metadata.emplace_back("Delta_p", "0");
  result.metadata.emplace_back("Delta_c", "0");
  result.metadata.emplace_back("sin_theta", format_double(
      cfg.probe.wavelength / cfg.geometry.spatial_period));
  result.check();
  return result;
}

std::vector<ScenarioResult> run_fig_detuning_sweep(
    const ScenarioConfig& cfg, std::span<const int> photon_numbers,
    unsigned jobs) {
  const std::vector<double> detunings =
      linspace(-cfg.detuning_span, cfg.detuning_span, cfg.detuning_points);
  std::vector<ScenarioResult> results;
  for (const int n_c : photon_numbers) {
    const CavityConfig cavity = with_photons(cfg.cavity, n_c);
    std::vector<double> intensities(detunings.size());
    parallel_for(detunings.size(), jobs, [&](std::size_t i) {
      const ProbeConfig probe(cfg.probe.wavelength, detunings[i], 0.0);
      intensities[i] = first_order_intensity(cfg.geometry, cfg.medium, cavity,
                                             probe, cfg.quadrature,
                                             cfg.epsilon0);
    });
    ScenarioResult result;
    result.name = "fig7_detuning_" + std::to_string(n_c);
    result.columns = {"delta_p_over_gamma_ca", "first_order_intensity"};
    for (std::size_t i = 0; i < detunings.size(); ++i) {
      result.values.insert(result.values.end(),
                           {detunings[i] / cfg.medium.gamma_ca_decay,
                            intensities[i]});
    }
    append_common_metadata(cfg, result, result.name);
    put_photon_metadata(cfg, result, n_c);
    result.metadata.emplace_back("Delta_c", "0");
    result.check();
    results.push_back(std::move(result));
  }
  return results;
}

std::vector<ScenarioResult> run_fig_length_sweep(
    const ScenarioConfig& cfg, std::span<const int> photon_numbers,
    unsigned jobs) {
  const std::vector<double> lengths =
      linspace(cfg.length_min, cfg.length_max, cfg.length_points);
  const ProbeConfig probe(cfg.probe.wavelength, 0.0, 0.0);
  std::vector<ScenarioResult> results;
  for (const int n_c : photon_numbers) {
    const CavityConfig cavity = with_photons(cfg.cavity, n_c);
    std::vector<double> intensities(lengths.size());
    parallel_for(lengths.size(), jobs, [&](std::size_t i) {
      const GratingGeometry geometry(lengths[i], cfg.geometry.spatial_period,
                                     cfg.geometry.num_periods);
      intensities[i] = first_order_intensity(geometry, cfg.medium, cavity,
                                             probe, cfg.quadrature,
                                             cfg.epsilon0);
    });
    ScenarioResult result;
    result.name = "fig8_length_" + std::to_string(n_c);
    result.columns = {"length_um", "first_order_intensity"};
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      result.values.insert(result.values.end(),
                           {lengths[i] * 1e6, intensities[i]});
    }
    append_common_metadata(cfg, result, result.name);
    put_photon_metadata(cfg, result, n_c);
    result.metadata.emplace_back("Delta_p", "0");
    result.metadata.emplace_back("Delta_c", "0");
    result.check();
    results.push_back(std::move(result));
  }
  return results;
}

ScenarioResult run_chi_table(const ScenarioConfig& cfg, unsigned /*jobs*/) {
  const int n_c = cfg.cavity.photon_number;
  std::vector<double> detunings;
  std::vector<std::complex<double>> chis;
  chi_spectrum_rows(cfg, n_c, cfg.probe.detuning_c, detunings, chis);
  const double n0 = cfg.medium.chi_prefactor(cfg.epsilon0);

  ScenarioResult result;
  result.name = "chi_" + std::to_string(n_c);
  result.columns = {"delta_p_over_gamma_ca", "im_chi", "re_chi",
                    "im_chi_over_n0", "re_chi_over_n0"};
  for (std::size_t i = 0; i < detunings.size(); ++i) {
    result.values.insert(result.values.end(),
                         {detunings[i] / cfg.medium.gamma_ca_decay,
                          chis[i].imag(), chis[i].real(),
                          chis[i].imag() / n0, chis[i].real() / n0});
  }
  append_common_metadata(cfg, result, result.name);
  put_photon_metadata(cfg, result, n_c);
  result.metadata.emplace_back("x", format_double(
      cfg.cavity.spatial_period / 2.0));
  result.metadata.emplace_back("Delta_c", format_double(cfg.probe.detuning_c));
  result.check();
  return result;
}

ScenarioResult run_transmission_table(const ScenarioConfig& cfg) {
  const std::vector<double> x_grid =
      linspace(0.0, 2.0 * cfg.geometry.spatial_period, cfg.x_points);
  const auto samples = transmission_profile(x_grid, cfg.geometry, cfg.medium,
                                            cfg.cavity, cfg.probe,
                                            cfg.epsilon0);
  ScenarioResult result;
  result.name = "transmission_" + std::to_string(cfg.cavity.photon_number);
  result.columns = {"x_over_period", "amplitude", "phase"};
  for (const TransmissionSample& s : samples) {
    result.values.insert(result.values.end(),
                         {s.position / cfg.geometry.spatial_period,
                          s.amplitude, s.phase});
  }
  append_common_metadata(cfg, result, result.name);
  put_photon_metadata(cfg, result, cfg.cavity.photon_number);
  result.metadata.emplace_back("Delta_p", format_double(cfg.probe.detuning_p));
  result.metadata.emplace_back("Delta_c", format_double(cfg.probe.detuning_c));
  result.check();
  return result;
}

ScenarioResult run_diffraction_table(const ScenarioConfig& cfg, unsigned jobs) {
  return diffraction_profile_table(
      cfg, cfg.cavity.photon_number, cfg.probe,
      "diffraction_" + std::to_string(cfg.cavity.photon_number), jobs);
}

ScenarioResult run_first_order(const ScenarioConfig& cfg, unsigned jobs) {
  if (!cfg.sweep) {
    const double intensity =
        first_order_intensity(cfg.geometry, cfg.medium, cfg.cavity, cfg.probe,
                              cfg.quadrature, cfg.epsilon0);
    ScenarioResult result;
    result.name =
        "first_order_" + std::to_string(cfg.cavity.photon_number);
    result.columns = {"n_c", "delta_p_over_gamma_ca", "length_um",
                      "first_order_intensity"};
    result.values = {static_cast<double>(cfg.cavity.photon_number),
                     cfg.probe.detuning_p / cfg.medium.gamma_ca_decay,
                     cfg.geometry.length * 1e6, intensity};
    append_common_metadata(cfg, result, result.name);
    result.check();
    return result;
  }

  const SweepAxis& axis = *cfg.sweep;
  validate(axis);
  std::vector<double> grid;
  if (axis.parameter == "n_c") {
    const int lo = static_cast<int>(std::lround(axis.lo));
    const int hi = static_cast<int>(std::lround(axis.hi));
    for (int n = lo; n <= hi; ++n) grid.push_back(static_cast<double>(n));
  } else {
    grid = linspace(axis.lo, axis.hi, axis.points);
  }

  std::vector<double> intensities(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    ScenarioConfig point = cfg;
    if (axis.parameter == "delta_p") {
      point.probe = ProbeConfig(cfg.probe.wavelength, grid[i],
                                cfg.probe.detuning_c);
    } else if (axis.parameter == "ell") {
      point.geometry = GratingGeometry(grid[i], cfg.geometry.spatial_period,
                                       cfg.geometry.num_periods);
    } else {
      point.cavity = with_photons(cfg.cavity, static_cast<int>(grid[i]));
    }
    intensities[i] =
        first_order_intensity(point.geometry, point.medium, point.cavity,
                              point.probe, point.quadrature, point.epsilon0);
  });

  ScenarioResult result;
  result.name = "first_order_sweep_" + axis.parameter;
  result.columns = {axis.parameter, "first_order_intensity"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    result.values.insert(result.values.end(), {grid[i], intensities[i]});
  }
  append_common_metadata(cfg, result, result.name);
  result.check();
  return result;
}

}  // namespace viag::experiments
