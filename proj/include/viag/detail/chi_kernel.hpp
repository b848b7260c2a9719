#pragma once

#include "viag/physics.hpp"

namespace viag::kernels {

/// Per-sweep constants of the closed-form susceptibility; everything that
/// does not vary along x.
struct ChiParams {
  double gamma_ca;
  double gamma_ba;
  double delta_p;
  double delta;      ///< two-photon detuning
  double prefactor;  ///< N0

  static ChiParams from(const AtomicMedium& medium, double detuning_p,
                        double detuning_c,
                        double epsilon0 = constants::epsilon0) {
    return {medium.coherence_decay_ca(), medium.coherence_decay_ba(),
            detuning_p, detuning_p - detuning_c,
            medium.chi_prefactor(epsilon0)};
  }
};

/// Scalar evaluation of chi(|Omega_c|^2). No singularity checks; callers on
/// validated parameter sets only (gamma_ca > 0 and nonvanishing denominator).
/// The AVX2 batch kernel mirrors this operation sequence.
inline void eval_chi(double omega_c_sq, const ChiParams& p, double& out_re,
                     double& out_im) {
  const double s = omega_c_sq;
  const double four_delta = 4.0 * p.delta;
  const double num_re = four_delta * (four_delta * p.delta_p - s) +
                        4.0 * p.delta_p * (p.gamma_ba * p.gamma_ba);
  const double num_im = 8.0 * (p.delta * p.delta) * p.gamma_ca +
                        2.0 * p.gamma_ba * (s + p.gamma_ba * p.gamma_ca);
  const double den_re =
      s / p.gamma_ca + p.gamma_ba - (four_delta * p.delta_p) / p.gamma_ca;
  const double den_im = 2.0 * p.delta + (2.0 * p.delta_p * p.gamma_ba) / p.gamma_ca;
  const double den = den_re * den_re + den_im * den_im;
  const double scale = p.prefactor / (den * p.gamma_ca);
  out_re = num_re * scale;
  out_im = num_im * scale;
}

}  // namespace viag::kernels
