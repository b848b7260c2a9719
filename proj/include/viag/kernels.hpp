#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

#include "viag/detail/chi_kernel.hpp"

namespace viag::kernels {

/// Batched chi(|Omega_c(x)|^2) over an array of squared Rabi amplitudes,
/// SoA output.
using SusceptibilityBatchFn = void (*)(const double* omega_c_sq,
                                       std::size_t count, const ChiParams&,
                                       double* chi_re, double* chi_im);

/// Composite-Simpson integral of f(x) e^{-i omega x} over [0, panels*step].
/// f is given as panels+1 SoA samples on the uniform grid x_j = j*step;
/// panels must be even and >= 2. Phasors are generated by per-step rotation,
/// re-seeded from exact sin/cos every 64 samples to bound drift.
using OscillatorySimpsonFn = std::complex<double> (*)(const double* f_re,
                                                      const double* f_im,
                                                      std::size_t panels,
                                                      double step,
                                                      double omega);

struct Backend {
  std::string_view name;
  SusceptibilityBatchFn susceptibility_batch;
  OscillatorySimpsonFn oscillatory_simpson;
};

const Backend& scalar_backend();

/// AVX2+FMA variant, or nullptr when the build or the CPU lacks it.
const Backend* avx2_backend();

/// Runtime-selected backend: AVX2 when available, unless the environment
/// variable VIAG_SIMD=scalar forces the reference path.
const Backend& active();

/// Test hook: pin the active backend by name ("scalar" or "avx2").
/// Throws std::invalid_argument for unknown or unavailable names.
void force(std::string_view name);

bool avx2_supported();

/// T_j = exp(i * half_kl * chi_j) with half_kl = k_p * l / 2: amplitude
/// exp(-half_kl * chi''), phase half_kl * chi'. Scalar only (libm-bound).
void transmission_batch(const double* chi_re, const double* chi_im,
                        std::size_t count, double half_kl, double* t_re,
                        double* t_im);

}  // namespace viag::kernels
