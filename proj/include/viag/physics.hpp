#pragma once

#include <complex>

#include "viag/constants.hpp"

namespace viag {

/// Lambda-type three-level medium: ground states |a>, |b> coupled to the
/// excited state |c> by the probe (a-c) and the cavity mode (b-c).
/// All rates are angular frequencies in rad/s.
struct AtomicMedium {
  double dipole_moment;   ///< |mu_ca|, C m
  double density;         ///< atoms per m^3
  double gamma_ca_decay;  ///< spontaneous emission c -> a
  double gamma_cb_decay;  ///< spontaneous emission c -> b
  double dephase_b;       ///< pure dephasing of |b> (gamma_b)
  double dephase_c;       ///< pure dephasing of |c> (gamma_c)

  AtomicMedium(double dipole, double number_density, double gamma_ca,
               double gamma_cb = 0.0, double gamma_b = 0.0,
               double gamma_c = 0.0);

  /// Coherence decay of rho_ca: gamma_c + Gamma_cb + Gamma_ca.
  double coherence_decay_ca() const {
    return dephase_c + gamma_cb_decay + gamma_ca_decay;
  }
  /// Coherence decay of rho_ba: gamma_b.
  double coherence_decay_ba() const { return dephase_b; }

  /// N0 = |mu_ca|^2 N / (hbar eps0 gamma_ca), the susceptibility scale.
  double chi_prefactor(double epsilon0 = constants::epsilon0) const;
};

/// Quantized standing-wave control field: single cavity mode in a Fock state
/// with photon_number photons, spatial period Lambda along x.
struct CavityConfig {
  double coupling_g;     ///< atom-field coupling g, rad/s
  double kappa;          ///< cavity decay, rad/s
  int photon_number;     ///< Fock-state photon number n_c >= 0
  double spatial_period; ///< Lambda, m

  CavityConfig(double coupling, double cavity_decay, int photons,
               double period);

  /// Builds the config from the cooperativity beta = 4 g^2 / (Gamma_ca kappa).
  static CavityConfig from_cooperativity(double beta, double gamma_ca_decay,
                                         double cavity_decay, int photons,
                                         double period);

  double cooperativity(double gamma_ca_decay) const;
  /// Peak Rabi amplitude Omega_0 = 2 g sqrt(n_c + 1).
  double rabi_peak() const;
};

/// Classical plane-wave probe. Detunings follow Delta_p = omega_ca - omega_p
/// and Delta_c = omega_cb - omega_c.
struct ProbeConfig {
  double wavelength;  ///< lambda_p, m
  double detuning_p;  ///< Delta_p, rad/s
  double detuning_c;  ///< Delta_c, rad/s

  ProbeConfig(double lambda, double delta_p = 0.0, double delta_c = 0.0);

  double wave_number() const { return constants::two_pi / wavelength; }
  /// Two-photon detuning delta = Delta_p - Delta_c.
  double two_photon_detuning() const { return detuning_p - detuning_c; }
};

/// Complex linear susceptibility. The real part is dispersion (phase
/// grating), the imaginary part absorption (amplitude grating).
struct Susceptibility {
  std::complex<double> value;

  double dispersion() const { return value.real(); }
  double absorption() const { return value.imag(); }
};

/// Inverts beta = 4 g^2 / (Gamma_ca kappa) for the coupling g.
double derive_coupling(double beta, double gamma_ca_decay, double kappa);

/// Omega_0 = 2 g sqrt(n_c + 1); strictly increasing in the photon number.
double rabi_amplitude(double coupling_g, int photon_number);

/// Standing-wave Rabi frequency Omega_c(x) = Omega_0 sin(pi x / Lambda).
double rabi_at(double x, double omega0, double spatial_period);

/// Closed-form susceptibility of the driven Lambda system,
///
///   chi = N0 * [4 d (-|W|^2 + 4 d Dp) + 4 Dp gba^2
///               + i 8 d^2 gca + i 2 gba (|W|^2 + gba gca)]
///            / ||W|^2/gca + gba - 4 Dp d/gca + i 2 d + i 2 Dp gba/gca|^2
///            / gca,
///
/// with W = omega_c, Dp = detuning_p, d = Dp - detuning_c.
/// Throws SingularParameterError when the denominator vanishes
/// (gamma_ba = 0, d = 0 and omega_c = 0).
Susceptibility susceptibility(const AtomicMedium& medium, double omega_c,
                              double detuning_p, double detuning_c,
                              double epsilon0 = constants::epsilon0);

/// Algebraically equivalent form written over the unscaled denominator
///   | |W|^2 + (gca + i 2 Dp)(gba + i 2 d) |^2
/// with prefactor |mu|^2 N / (eps0 hbar). Kept as an independent code path;
/// the two forms must agree to ~1e-12 relative.
Susceptibility susceptibility_appendix(const AtomicMedium& medium,
                                       double omega_c, double detuning_p,
                                       double detuning_c,
                                       double epsilon0 = constants::epsilon0);

}  // namespace viag
