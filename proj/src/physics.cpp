#include "viag/physics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "viag/detail/chi_kernel.hpp"
#include "viag/errors.hpp"

namespace viag {

namespace {

void require_positive(double value, const char* name, const char* scope) {
  if (!(value > 0.0)) {
    std::ostringstream os;
    os << scope << ": " << name << " must be positive (got " << value << ")";
    throw std::domain_error(os.str());
  }
}

void require_nonnegative(double value, const char* name, const char* scope) {
  if (!(value >= 0.0)) {
    std::ostringstream os;
    os << scope << ": " << name << " must be nonnegative (got " << value
       << ")";
    throw std::domain_error(os.str());
  }
}

}  // namespace

AtomicMedium::AtomicMedium(double dipole, double number_density,
                           double gamma_ca, double gamma_cb, double gamma_b,
                           double gamma_c)
    : dipole_moment(dipole),
      density(number_density),
      gamma_ca_decay(gamma_ca),
      gamma_cb_decay(gamma_cb),
      dephase_b(gamma_b),
      dephase_c(gamma_c) {
  require_positive(dipole_moment, "dipole_moment", "AtomicMedium");
  require_positive(density, "density", "AtomicMedium");
  require_positive(gamma_ca_decay, "gamma_ca_decay", "AtomicMedium");
  require_nonnegative(gamma_cb_decay, "gamma_cb_decay", "AtomicMedium");
  require_nonnegative(dephase_b, "dephase_b", "AtomicMedium");
  require_nonnegative(dephase_c, "dephase_c", "AtomicMedium");
}

double AtomicMedium::chi_prefactor(double epsilon0) const {
  require_positive(epsilon0, "epsilon0", "AtomicMedium::chi_prefactor");
  return dipole_moment * dipole_moment * density /
         (constants::hbar * epsilon0 * coherence_decay_ca());
}

CavityConfig::CavityConfig(double coupling, double cavity_decay, int photons,
                           double period)
    : coupling_g(coupling),
      kappa(cavity_decay),
      photon_number(photons),
      spatial_period(period) {
  require_positive(coupling_g, "coupling_g", "CavityConfig");
  require_positive(kappa, "kappa", "CavityConfig");
  require_positive(spatial_period, "spatial_period", "CavityConfig");
  if (photon_number < 0) {
    throw std::domain_error("CavityConfig: photon_number must be >= 0 (got " +
                            std::to_string(photon_number) + ")");
  }
}

CavityConfig CavityConfig::from_cooperativity(double beta,
                                              double gamma_ca_decay,
                                              double cavity_decay, int photons,
                                              double period) {
  return CavityConfig(derive_coupling(beta, gamma_ca_decay, cavity_decay),
                      cavity_decay, photons, period);
}

double CavityConfig::cooperativity(double gamma_ca_decay) const {
  require_positive(gamma_ca_decay, "gamma_ca_decay",
                   "CavityConfig::cooperativity");
  return 4.0 * coupling_g * coupling_g / (gamma_ca_decay * kappa);
}

double CavityConfig::rabi_peak() const {
  return rabi_amplitude(coupling_g, photon_number);
}

ProbeConfig::ProbeConfig(double lambda, double delta_p, double delta_c)
    : wavelength(lambda), detuning_p(delta_p), detuning_c(delta_c) {
  require_positive(wavelength, "wavelength", "ProbeConfig");
}

double derive_coupling(double beta, double gamma_ca_decay, double kappa) {
  require_positive(beta, "beta", "derive_coupling");
  require_positive(gamma_ca_decay, "gamma_ca_decay", "derive_coupling");
  require_positive(kappa, "kappa", "derive_coupling");
  return std::sqrt(beta * gamma_ca_decay * kappa) / 2.0;
}

double rabi_amplitude(double coupling_g, int photon_number) {
  require_positive(coupling_g, "coupling_g", "rabi_amplitude");
  if (photon_number < 0) {
    throw std::domain_error("rabi_amplitude: photon_number must be >= 0 (got " +
                            std::to_string(photon_number) + ")");
  }
  return 2.0 * coupling_g * std::sqrt(static_cast<double>(photon_number) + 1.0);
}

double rabi_at(double x, double omega0, double spatial_period) {
  require_positive(spatial_period, "spatial_period", "rabi_at");
  return omega0 * std::sin(constants::pi * x / spatial_period);
}

namespace {

void validate_chi_inputs(const AtomicMedium& medium, const char* scope) {
  if (!(medium.coherence_decay_ca() > 0.0)) {
    throw std::domain_error(std::string(scope) +
                            ": coherence decay gamma_ca must be positive");
  }
}

}  // namespace

Susceptibility susceptibility(const AtomicMedium& medium, double omega_c,
                              double detuning_p, double detuning_c,
                              double epsilon0) {
  validate_chi_inputs(medium, "susceptibility");
  const auto p = kernels::ChiParams::from(medium, detuning_p, detuning_c,
                                          epsilon0);
  const double s = omega_c * omega_c;
  const double den_re =
      s / p.gamma_ca + p.gamma_ba - (4.0 * p.delta * p.delta_p) / p.gamma_ca;
  const double den_im =
      2.0 * p.delta + (2.0 * p.delta_p * p.gamma_ba) / p.gamma_ca;
  if (den_re * den_re + den_im * den_im == 0.0) {
    throw SingularParameterError(
        "susceptibility: denominator vanishes (gamma_ba = 0, zero two-photon "
        "detuning and omega_c = 0)");
  }
  double re = 0.0, im = 0.0;
  kernels::eval_chi(s, p, re, im);
  return Susceptibility{{re, im}};
}

Susceptibility susceptibility_appendix(const AtomicMedium& medium,
                                       double omega_c, double detuning_p,
                                       double detuning_c, double epsilon0) {
  validate_chi_inputs(medium, "susceptibility_appendix");
  const double gca = medium.coherence_decay_ca();
  const double gba = medium.coherence_decay_ba();
  const double delta = detuning_p - detuning_c;
  const double s = omega_c * omega_c;
  const std::complex<double> denom =
      s + (std::complex<double>(gca, 2.0 * detuning_p) *
           std::complex<double>(gba, 2.0 * delta));
  const double den = std::norm(denom);
  if (den == 0.0) {
    throw SingularParameterError(
        "susceptibility_appendix: denominator vanishes");
  }
  const double num_re =
      4.0 * delta * (-s + 4.0 * delta * detuning_p) + 4.0 * detuning_p * gba * gba;
  const double num_im = 8.0 * delta * delta * gca + 2.0 * gba * (s + gba * gca);
  const double front = medium.dipole_moment * medium.dipole_moment *
                       medium.density / (epsilon0 * constants::hbar);
  return Susceptibility{{front * num_re / den, front * num_im / den}};
}

}  // namespace viag
