#include "viag/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "viag/errors.hpp"

namespace viag::oracle {

namespace {

using Complex = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;
using Matrix9c = Eigen::Matrix<Complex, 9, 9>;
using Vector9c = Eigen::Matrix<Complex, 9, 1>;

constexpr int idx(int row, int col) { return 3 * row + col; }

/// Liouvillian of rho_dot = -i [H, rho] - L(rho) acting on the row-major
/// vectorized density matrix, with H in angular-frequency units and
/// L(rho) = sum_n (gamma_n / 2)(s^t s rho + rho s^t s - 2 s rho s^t).
/// All rates are scaled by 1/scale for conditioning; the steady state is
/// invariant under that scaling.
Matrix9c build_liouvillian(const AtomicMedium& medium, double omega_p,
                           double omega_c, double detuning_p,
                           double detuning_c, double scale) {
  const double inv = 1.0 / scale;
  Matrix3c h = Matrix3c::Zero();
  h(1, 1) = (detuning_p - detuning_c) * inv;
  h(2, 2) = detuning_p * inv;
  h(2, 0) = -0.5 * omega_p * inv;
  h(0, 2) = -0.5 * omega_p * inv;
  h(2, 1) = -0.5 * omega_c * inv;
  h(1, 2) = -0.5 * omega_c * inv;

  Matrix9c m = Matrix9c::Zero();
  const Complex minus_i(0.0, -1.0);
  const Complex plus_i(0.0, 1.0);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const int r = idx(j, k);
      for (int l = 0; l < 3; ++l) {
        m(r, idx(l, k)) += minus_i * h(j, l);
        m(r, idx(j, l)) += plus_i * h(l, k);
      }
    }
  }

  // (rate, jump operator |to><from|). Dephasing projectors at gamma_b and
  // gamma_c reproduce the coherence decays gamma_ba = gamma_b and
  // gamma_ca = gamma_c + Gamma_cb + Gamma_ca of the coupled equations.
  struct Channel {
    double rate;
    int to;
    int from;
  };
  const Channel channels[] = {
      {medium.gamma_ca_decay * inv, 0, 2},
      {medium.gamma_cb_decay * inv, 1, 2},
      {medium.dephase_b * inv, 1, 1},
      {medium.dephase_c * inv, 2, 2},
  };
  for (const Channel& ch : channels) {
    if (ch.rate == 0.0) continue;
    // s = |to><from|: s^t s = |from><from|, s rho s^t picks rho_{from,from}.
    const double half = 0.5 * ch.rate;
    for (int k = 0; k < 3; ++k) {
      m(idx(ch.from, k), idx(ch.from, k)) -= half;
      m(idx(k, ch.from), idx(k, ch.from)) -= half;
    }
    m(idx(ch.to, ch.to), idx(ch.from, ch.from)) += ch.rate;
  }
  return m;
}

DensityMatrix3 to_density_matrix(const Vector9c& x) {
  DensityMatrix3 rho;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      rho(j, k) = x(idx(j, k));
    }
  }
  // Hermitize and renormalize the trace; the exact steady state satisfies
  // both and the solve leaves ~1e-15 residues.
  for (int j = 0; j < 3; ++j) {
    for (int k = j; k < 3; ++k) {
      const Complex sym = 0.5 * (rho(j, k) + std::conj(rho(k, j)));
      rho(j, k) = sym;
      rho(k, j) = std::conj(sym);
    }
  }
  const double tr = rho.trace().real();
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      rho(j, k) /= tr;
    }
  }
  return rho;
}

}  // namespace

double DensityMatrix3::hermiticity_error() const {
  double worst = 0.0;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      worst = std::max(worst,
                       std::abs((*this)(j, k) - std::conj((*this)(k, j))));
    }
  }
  return worst;
}

double DensityMatrix3::min_eigenvalue() const {
  Matrix3c m;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      m(j, k) = 0.5 * ((*this)(j, k) + std::conj((*this)(k, j)));
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(m);
  return solver.eigenvalues().minCoeff();
}

namespace detail {

std::complex<double> rho_ca_linear(double gamma_ca, double gamma_ba,
                                   double omega_p, double omega_c,
                                   double detuning_p, double detuning_c) {
  const double delta = detuning_p - detuning_c;
  // Steady state of the coherence pair with rho_aa = 1:
  //   (gamma_ca + 2i Dp) rho_ca - i W rho_ba = i Wp
  //   -i W rho_ca + (gamma_ba + 2i d) rho_ba = 0
  const Complex a11(gamma_ca, 2.0 * detuning_p);
  const Complex a22(gamma_ba, 2.0 * delta);
  const Complex a12(0.0, -omega_c);
  const Complex det = a11 * a22 - a12 * a12;
  if (std::abs(det) == 0.0) {
    throw SingularParameterError(
        "steady_rho_ca_linear: singular 2x2 steady-state system");
  }
  const Complex b1(0.0, omega_p);
  return b1 * a22 / det;
}

}  // namespace detail

std::complex<double> steady_rho_ca_linear(const AtomicMedium& medium,
                                          double omega_p, double omega_c,
                                          double detuning_p,
                                          double detuning_c) {
  return detail::rho_ca_linear(medium.coherence_decay_ca(),
                               medium.coherence_decay_ba(), omega_p, omega_c,
                               detuning_p, detuning_c);
}

DensityMatrix3 lindblad_steady_state(const AtomicMedium& medium,
                                     double omega_p, double omega_c,
                                     double detuning_p, double detuning_c) {
  const double scale =
      std::max({medium.gamma_ca_decay, medium.gamma_cb_decay, medium.dephase_b,
                medium.dephase_c, std::abs(omega_p), std::abs(omega_c),
                std::abs(detuning_p), std::abs(detuning_c)});
  const Matrix9c m = build_liouvillian(medium, omega_p, omega_c, detuning_p,
                                       detuning_c, scale);

  Eigen::FullPivLU<Matrix9c> full_lu(m);
  full_lu.setThreshold(1e-10);
  const int null_dim = 9 - static_cast<int>(full_lu.rank());
  if (null_dim != 1) {
    std::ostringstream os;
    os << "lindblad_steady_state: Liouvillian null space has dimension "
       << null_dim << " (steady state not unique)";
    throw RankDeficiencyError(os.str(), null_dim);
  }

  Matrix9c a = m;
  a.row(0).setZero();
  a(0, idx(0, 0)) = 1.0;
  a(0, idx(1, 1)) = 1.0;
  a(0, idx(2, 2)) = 1.0;
  Vector9c b = Vector9c::Zero();
  b(0) = 1.0;

  const Eigen::PartialPivLU<Matrix9c> lu(a);
  Vector9c x = lu.solve(b);
  // One step of iterative refinement keeps the weak-probe extrapolation
  // resolvable down to ~1e-12 relative.
  x += lu.solve(b - a * x);
  return to_density_matrix(x);
}

std::complex<double> chi_from_coherence(const AtomicMedium& medium,
                                        std::complex<double> rho_ca,
                                        double omega_p, double epsilon0) {
  if (omega_p == 0.0) {
    throw std::domain_error("chi_from_coherence: omega_p must be nonzero");
  }
  const double front = 2.0 * medium.dipole_moment * medium.dipole_moment *
                       medium.density / (epsilon0 * constants::hbar * omega_p);
  return front * rho_ca;
}

ValidationReport validate_chi(std::span<const GridPoint> grid,
                              const AtomicMedium& medium,
                              const CavityConfig& cavity,
                              const ProbeConfig& probe,
                              const ValidationOptions& options) {
  if (grid.empty()) {
    throw std::invalid_argument("validate_chi: empty grid");
  }
  ValidationReport report;
  report.options = options;
  report.points.reserve(grid.size());
  const double omega_p = options.probe_scale * medium.gamma_ca_decay;

  for (const GridPoint& point : grid) {
    ValidationPoint result;
    result.grid = point;
    const double omega0 = rabi_amplitude(cavity.coupling_g,
                                         point.photon_number);
    const double omega_c =
        rabi_at(point.position, omega0, cavity.spatial_period);

    result.chi_closed =
        susceptibility(medium, omega_c, point.detuning_p, probe.detuning_c,
                       options.epsilon0)
            .value;
    const double magnitude = std::abs(result.chi_closed);

    result.chi_linear = chi_from_coherence(
        medium,
        steady_rho_ca_linear(medium, omega_p, omega_c, point.detuning_p,
                             probe.detuning_c),
        omega_p, options.epsilon0);
    result.dev_linear =
        std::abs(result.chi_linear - result.chi_closed) / magnitude;

    try {
      const DensityMatrix3 rho = lindblad_steady_state(
          medium, omega_p, omega_c, point.detuning_p, probe.detuning_c);
      result.chi_lindblad =
          chi_from_coherence(medium, rho(2, 0), omega_p, options.epsilon0);
      result.dev_lindblad =
          std::abs(*result.chi_lindblad - result.chi_closed) / magnitude;
    } catch (const RankDeficiencyError&) {
      ++report.degenerate_count;
    }

    result.flagged = result.dev_linear > options.tol_linear ||
                     (result.dev_lindblad &&
                      *result.dev_lindblad > options.tol_lindblad);
    if (result.flagged) ++report.flagged_count;
    report.max_dev_linear = std::max(report.max_dev_linear, result.dev_linear);
    if (result.dev_lindblad) {
      report.max_dev_lindblad =
          std::max(report.max_dev_lindblad, *result.dev_lindblad);
    }
    report.points.push_back(result);
  }
  return report;
}

std::vector<GridPoint> default_validation_grid(const AtomicMedium& medium,
                                               const CavityConfig& cavity) {
  const int photon_numbers[] = {0, 1, 2, 5, 10};
  const int detuning_count = 21;
  std::vector<GridPoint> grid;
  grid.reserve(5 * detuning_count * 9);
  for (const int n_c : photon_numbers) {
    for (int i = 0; i < detuning_count; ++i) {
      const double detuning =
          (-3.0 + 6.0 * static_cast<double>(i) /
                      static_cast<double>(detuning_count - 1)) *
          medium.gamma_ca_decay;
      for (int k = 1; k <= 9; ++k) {
        const double x =
            static_cast<double>(k) * cavity.spatial_period / 10.0;
        grid.push_back({n_c, detuning, x});
      }
    }
  }
  return grid;
}

}  // namespace viag::oracle
