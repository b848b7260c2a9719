#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "viag/grating.hpp"
#include "viag/kernels.hpp"
#include "viag/physics.hpp"

using namespace viag;

namespace {

constexpr double kGammaCa = constants::two_pi * 5.2e6;
constexpr double kKappa = constants::two_pi * 173e3;

kernels::ChiParams physical_params(double dp, double dc) {
  const AtomicMedium medium(3.79e-29, 1e18, kGammaCa, 0.0, kKappa, 0.0);
  return kernels::ChiParams::from(medium, dp, dc);
}

/// Test-only reference: per-point exact phasors, plain Simpson weights.
std::complex<double> naive_oscillatory_simpson(const std::vector<double>& fr,
                                               const std::vector<double>& fi,
                                               double step, double omega) {
  const std::size_t panels = fr.size() - 1;
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j <= panels; ++j) {
    double w = (j == 0 || j == panels) ? 1.0 : (j % 2 == 0 ? 2.0 : 4.0);
    const std::complex<double> phasor =
        std::polar(1.0, -omega * static_cast<double>(j) * step);
    acc += w * std::complex<double>(fr[j], fi[j]) * phasor;
  }
  return acc * (step / 3.0);
}

}  // namespace

TEST_CASE("scalar susceptibility batch matches the scalar operation") {
  const AtomicMedium medium(3.79e-29, 1e18, kGammaCa, 0.0, kKappa, 0.0);
  const double dp = 0.4 * kGammaCa;
  const double dc = -0.1 * kGammaCa;
  const auto params = kernels::ChiParams::from(medium, dp, dc);

  std::vector<double> omega_sq;
  for (int i = 0; i <= 100; ++i) {
    const double w = 2.0 * 5.33e6 * std::sin(constants::pi * i / 100.0);
    omega_sq.push_back(w * w);
  }
  std::vector<double> re(omega_sq.size());
  std::vector<double> im(omega_sq.size());
  kernels::scalar_backend().susceptibility_batch(
      omega_sq.data(), omega_sq.size(), params, re.data(), im.data());
  for (std::size_t i = 0; i < omega_sq.size(); ++i) {
    const Susceptibility chi =
        susceptibility(medium, std::sqrt(omega_sq[i]), dp, dc);
    CHECK(std::abs(std::complex<double>(re[i], im[i]) - chi.value) <=
          1e-13 * std::abs(chi.value));
  }
}

TEST_CASE("avx2 susceptibility batch is equivalent to scalar") {
  if (!kernels::avx2_supported()) {
    MESSAGE("avx2 unavailable; skipping");
    return;
  }
  const kernels::Backend& avx2 = *kernels::avx2_backend();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 9.0);
  for (std::size_t n : {0ul, 1ul, 2ul, 3ul, 4ul, 5ul, 63ul, 64ul, 65ul,
                        255ul, 257ul, 1000ul}) {
    const auto params = physical_params(u(rng) * kGammaCa - 4.0 * kGammaCa,
                                        u(rng) * 0.2 * kGammaCa);
    std::vector<double> omega_sq(n);
    for (auto& s : omega_sq) s = u(rng) * 1e14;
    std::vector<double> re_s(n), im_s(n), re_v(n), im_v(n);
    kernels::scalar_backend().susceptibility_batch(omega_sq.data(), n, params,
                                                   re_s.data(), im_s.data());
    avx2.susceptibility_batch(omega_sq.data(), n, params, re_v.data(),
                              im_v.data());
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::hypot(re_s[i], im_s[i]);
      CHECK(std::abs(re_s[i] - re_v[i]) <= 1e-13 * mag);
      CHECK(std::abs(im_s[i] - im_v[i]) <= 1e-13 * mag);
    }
  }
}

TEST_CASE("oscillatory simpson: constant integrand") {
  const std::size_t panels = 256;
  std::vector<double> fr(panels + 1, 1.0);
  std::vector<double> fi(panels + 1, 0.0);
  const double step = 1.0 / static_cast<double>(panels);

  // omega = 0: plain Simpson of 1 over [0, 1]
  const std::complex<double> plain = kernels::scalar_backend().oscillatory_simpson(
      fr.data(), fi.data(), panels, step, 0.0);
  CHECK(std::abs(plain - 1.0) < 1e-14);

  // one full oscillation integrates to ~0
  const std::complex<double> full = kernels::scalar_backend().oscillatory_simpson(
      fr.data(), fi.data(), panels, step, constants::two_pi);
  CHECK(std::abs(full) < 1e-9);
}

TEST_CASE("oscillatory simpson matches the naive phasor reference") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t panels : {16ul, 60ul, 62ul, 64ul, 66ul, 128ul, 250ul,
                             1024ul}) {
    std::vector<double> fr(panels + 1);
    std::vector<double> fi(panels + 1);
    for (std::size_t j = 0; j <= panels; ++j) {
      fr[j] = u(rng);
      fi[j] = u(rng);
    }
    const double step = 2.0 / static_cast<double>(panels);
    for (double omega : {0.0, 0.5, constants::two_pi, 9.7}) {
      const std::complex<double> expected =
          naive_oscillatory_simpson(fr, fi, step, omega);
      const std::complex<double> scalar =
          kernels::scalar_backend().oscillatory_simpson(fr.data(), fi.data(),
                                                        panels, step, omega);
      CHECK(std::abs(scalar - expected) <= 1e-12 * (1.0 + std::abs(expected)));
      if (kernels::avx2_supported()) {
        const std::complex<double> vec =
            kernels::avx2_backend()->oscillatory_simpson(
                fr.data(), fi.data(), panels, step, omega);
        CHECK(std::abs(vec - scalar) <= 1e-13 * (1.0 + std::abs(scalar)));
      }
    }
  }
}

TEST_CASE("phasor drift stays bounded over the panel cap") {
  const std::size_t panels = std::size_t{1} << 18;
  std::vector<double> fr(panels + 1, 1.0);
  std::vector<double> fi(panels + 1, 0.0);
  const double step = 1.0 / static_cast<double>(panels);
  const double omega = 11.0;
  // analytic: integral of e^{-i omega x} over [0, 1]
  const std::complex<double> exact =
      (1.0 - std::polar(1.0, -omega)) / std::complex<double>(0.0, omega);
  const std::complex<double> scalar =
      kernels::scalar_backend().oscillatory_simpson(fr.data(), fi.data(),
                                                    panels, step, omega);
  CHECK(std::abs(scalar - exact) < 1e-12);
  if (kernels::avx2_supported()) {
    const std::complex<double> vec =
        kernels::avx2_backend()->oscillatory_simpson(fr.data(), fi.data(),
                                                     panels, step, omega);
    CHECK(std::abs(vec - exact) < 1e-12);
  }
}

TEST_CASE("transmission batch matches exp(i half_kl chi)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  const double half_kl = 29.5;
  std::vector<double> chi_re(33), chi_im(33), t_re(33), t_im(33);
  for (std::size_t i = 0; i < chi_re.size(); ++i) {
    chi_re[i] = u(rng);
    chi_im[i] = std::abs(u(rng));
  }
  kernels::transmission_batch(chi_re.data(), chi_im.data(), chi_re.size(),
                              half_kl, t_re.data(), t_im.data());
  for (std::size_t i = 0; i < chi_re.size(); ++i) {
    const std::complex<double> expected = std::exp(
        std::complex<double>(0.0, half_kl) *
        std::complex<double>(chi_re[i], chi_im[i]));
    CHECK(std::abs(std::complex<double>(t_re[i], t_im[i]) - expected) <=
          1e-13 * std::abs(expected));
    CHECK(std::hypot(t_re[i], t_im[i]) <= 1.0);
  }
}

TEST_CASE("backend selection and force") {
  CHECK(kernels::scalar_backend().name == "scalar");
  CHECK_THROWS_AS(kernels::force("neon"), std::invalid_argument);
  kernels::force("scalar");
  CHECK(kernels::active().name == "scalar");
  if (kernels::avx2_supported()) {
    kernels::force("avx2");
    CHECK(kernels::active().name == "avx2");
  } else {
    CHECK_THROWS_AS(kernels::force("avx2"), std::invalid_argument);
  }
}

TEST_CASE("forced backends agree through the whole diffraction pipeline") {
  const AtomicMedium medium(3.79e-29, 1e18, kGammaCa, 0.0, kKappa, 0.0);
  const CavityConfig cavity =
      CavityConfig::from_cooperativity(3.2, kGammaCa, kKappa, 4, 4 * 852e-9);
  const GratingGeometry geometry(8e-6, 4 * 852e-9, 5);
  const ProbeConfig probe(852e-9, 0.2 * kGammaCa, 0.0);

  kernels::force("scalar");
  const double scalar =
      first_order_intensity(geometry, medium, cavity, probe);
  double vectorized = scalar;
  if (kernels::avx2_supported()) {
    kernels::force("avx2");
    vectorized = first_order_intensity(geometry, medium, cavity, probe);
  }
  CHECK(std::abs(scalar - vectorized) <= 1e-12 * scalar);
  CHECK(scalar > 0.0);
}
