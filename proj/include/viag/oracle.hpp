#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "viag/physics.hpp"

namespace viag::oracle {

/// 3x3 density matrix over the basis (|a>, |b>, |c>).
class DensityMatrix3 {
 public:
  std::complex<double>& operator()(int row, int col) {
    return data_[static_cast<std::size_t>(3 * row + col)];
  }
  const std::complex<double>& operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(3 * row + col)];
  }

  std::complex<double> trace() const {
    return data_[0] + data_[4] + data_[8];
  }
  /// max_ij |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;
  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const;

 private:
  std::array<std::complex<double>, 9> data_{};
};

namespace detail {
/// Steady-state rho_ca from the two coupled coherence equations for raw
/// rates; Cramer solve of the 2x2 complex system. Throws
/// SingularParameterError for a vanishing determinant.
std::complex<double> rho_ca_linear(double gamma_ca, double gamma_ba,
                                   double omega_p, double omega_c,
                                   double detuning_p, double detuning_c);
}  // namespace detail

/// Steady-state coherence rho_ca in the weak-probe (linear-response) limit,
/// with all atoms assumed in the ground state |a>. Exactly proportional to
/// omega_p.
std::complex<double> steady_rho_ca_linear(const AtomicMedium& medium,
                                          double omega_p, double omega_c,
                                          double detuning_p, double detuning_c);

/// Full three-level steady state: solves Liouvillian(rho) = 0 with the trace
/// constraint, dissipation channels c->a (Gamma_ca), c->b (Gamma_cb) and pure
/// dephasing |b><b| (gamma_b), |c><c| (gamma_c). Throws RankDeficiencyError
/// when the null space is not one-dimensional.
DensityMatrix3 lindblad_steady_state(const AtomicMedium& medium,
                                     double omega_p, double omega_c,
                                     double detuning_p, double detuning_c);

/// chi = 2 |mu_ca|^2 N / (eps0 hbar omega_p) * rho_ca.
std::complex<double> chi_from_coherence(const AtomicMedium& medium,
                                        std::complex<double> rho_ca,
                                        double omega_p,
                                        double epsilon0 = constants::epsilon0);

struct GridPoint {
  int photon_number;
  double detuning_p;
  double position;  ///< x, m
};

struct ValidationOptions {
  double tol_linear = 1e-10;
  double tol_lindblad = 1e-4;
  /// Weak probe used for the Lindblad comparison, in units of Gamma_ca.
  double probe_scale = 1e-3;
  double epsilon0 = constants::epsilon0;
};

struct ValidationPoint {
  GridPoint grid;
  std::complex<double> chi_closed;
  std::complex<double> chi_linear;
  std::optional<std::complex<double>> chi_lindblad;  ///< absent when degenerate
  double dev_linear = 0.0;
  std::optional<double> dev_lindblad;
  bool flagged = false;
};

struct ValidationReport {
  std::vector<ValidationPoint> points;
  double max_dev_linear = 0.0;
  double max_dev_lindblad = 0.0;
  std::size_t flagged_count = 0;
  std::size_t degenerate_count = 0;
  ValidationOptions options;

  bool passed() const { return flagged_count == 0; }
};

/// Per-point comparison of the closed-form susceptibility against the linear
/// 2x2 solve and the weak-probe Lindblad steady state. Points exceeding
/// tolerance are flagged; the operation itself never throws for tolerance
/// violations. Degenerate Liouvillians (e.g. at standing-wave nodes) are
/// annotated rather than compared.
ValidationReport validate_chi(std::span<const GridPoint> grid,
                              const AtomicMedium& medium,
                              const CavityConfig& cavity,
                              const ProbeConfig& probe,
                              const ValidationOptions& options = {});

/// Default grid: n_c in {0,1,2,5,10} x 21 detunings over [-3, 3] Gamma_ca x
/// x = k Lambda / 10 for k = 1..9 (interior points; the exact nodes make the
/// Liouvillian degenerate).
std::vector<GridPoint> default_validation_grid(const AtomicMedium& medium,
                                               const CavityConfig& cavity);

}  // namespace viag::oracle
