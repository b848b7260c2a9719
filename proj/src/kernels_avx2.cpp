#if defined(VIAG_HAVE_AVX2)

#include <immintrin.h>

#include <cassert>
#include <cmath>

#include "kernels_impl.hpp"

namespace viag::kernels::detail {

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

void susceptibility_batch_avx2(const double* omega_c_sq, std::size_t count,
                               const ChiParams& params, double* chi_re,
                               double* chi_im) {
  const double four_delta = 4.0 * params.delta;
  const __m256d v_four_delta = _mm256_set1_pd(four_delta);
  const __m256d v_num_re_c = _mm256_set1_pd(
      4.0 * params.delta_p * (params.gamma_ba * params.gamma_ba));
  const __m256d v_fd_dp = _mm256_set1_pd(four_delta * params.delta_p);
  const __m256d v_num_im_c = _mm256_set1_pd(
      8.0 * (params.delta * params.delta) * params.gamma_ca);
  const __m256d v_two_gba = _mm256_set1_pd(2.0 * params.gamma_ba);
  const __m256d v_gba_gca = _mm256_set1_pd(params.gamma_ba * params.gamma_ca);
  const __m256d v_gca = _mm256_set1_pd(params.gamma_ca);
  const __m256d v_den_re_c = _mm256_set1_pd(
      params.gamma_ba - (four_delta * params.delta_p) / params.gamma_ca);
  const double den_im = 2.0 * params.delta +
                        (2.0 * params.delta_p * params.gamma_ba) / params.gamma_ca;
  const __m256d v_den_im_sq = _mm256_set1_pd(den_im * den_im);
  const __m256d v_prefactor = _mm256_set1_pd(params.prefactor);

  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d s = _mm256_loadu_pd(omega_c_sq + i);
    const __m256d num_re = _mm256_add_pd(
        _mm256_mul_pd(v_four_delta, _mm256_sub_pd(v_fd_dp, s)), v_num_re_c);
    const __m256d num_im = _mm256_add_pd(
        v_num_im_c, _mm256_mul_pd(v_two_gba, _mm256_add_pd(s, v_gba_gca)));
    const __m256d den_re = _mm256_add_pd(_mm256_div_pd(s, v_gca), v_den_re_c);
    const __m256d den =
        _mm256_fmadd_pd(den_re, den_re, v_den_im_sq);
    const __m256d scale =
        _mm256_div_pd(v_prefactor, _mm256_mul_pd(den, v_gca));
    _mm256_storeu_pd(chi_re + i, _mm256_mul_pd(num_re, scale));
    _mm256_storeu_pd(chi_im + i, _mm256_mul_pd(num_im, scale));
  }
  for (; i < count; ++i) {
    eval_chi(omega_c_sq[i], params, chi_re[i], chi_im[i]);
  }
}

std::complex<double> oscillatory_simpson_avx2(const double* f_re,
                                              const double* f_im,
                                              std::size_t panels, double step,
                                              double omega) {
  assert(panels >= 2 && panels % 2 == 0);
  constexpr std::size_t kBlock = 64;
  const double step_re = std::cos(omega * step);
  const double step_im = -std::sin(omega * step);
  // step^4 for the 4-lane rotation
  const double s2_re = step_re * step_re - step_im * step_im;
  const double s2_im = 2.0 * step_re * step_im;
  const double s4_re = s2_re * s2_re - s2_im * s2_im;
  const double s4_im = 2.0 * s2_re * s2_im;
  const __m256d rot_re = _mm256_set1_pd(s4_re);
  const __m256d rot_im = _mm256_set1_pd(s4_im);
  const __m256d weights = _mm256_setr_pd(2.0, 4.0, 2.0, 4.0);

  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  double tail_re = 0.0;
  double tail_im = 0.0;

  for (std::size_t block = 0; block < panels; block += kBlock) {
    const std::size_t end = std::min(block + kBlock, panels);
    const std::size_t vec_end = block + ((end - block) / 4) * 4;
    const double phase = -omega * (static_cast<double>(block) * step);
    double lane_re[4];
    double lane_im[4];
    lane_re[0] = std::cos(phase);
    lane_im[0] = std::sin(phase);
    for (int k = 1; k < 4; ++k) {
      lane_re[k] = lane_re[k - 1] * step_re - lane_im[k - 1] * step_im;
      lane_im[k] = lane_re[k - 1] * step_im + lane_im[k - 1] * step_re;
    }
    __m256d p_re = _mm256_loadu_pd(lane_re);
    __m256d p_im = _mm256_loadu_pd(lane_im);
    for (std::size_t j = block; j < vec_end; j += 4) {
      const __m256d vr = _mm256_mul_pd(_mm256_loadu_pd(f_re + j), weights);
      const __m256d vi = _mm256_mul_pd(_mm256_loadu_pd(f_im + j), weights);
      acc_re = _mm256_fmadd_pd(vr, p_re, acc_re);
      acc_re = _mm256_fnmadd_pd(vi, p_im, acc_re);
      acc_im = _mm256_fmadd_pd(vr, p_im, acc_im);
      acc_im = _mm256_fmadd_pd(vi, p_re, acc_im);
      const __m256d next_re =
          _mm256_sub_pd(_mm256_mul_pd(p_re, rot_re), _mm256_mul_pd(p_im, rot_im));
      const __m256d next_im =
          _mm256_add_pd(_mm256_mul_pd(p_re, rot_im), _mm256_mul_pd(p_im, rot_re));
      p_re = next_re;
      p_im = next_im;
    }
    for (std::size_t j = vec_end; j < end; ++j) {
      const double w = (j % 2 == 0) ? 2.0 : 4.0;
      const double ph = -omega * (static_cast<double>(j) * step);
      const double pr = std::cos(ph);
      const double pi = std::sin(ph);
      tail_re += w * (f_re[j] * pr - f_im[j] * pi);
      tail_im += w * (f_re[j] * pi + f_im[j] * pr);
    }
  }

  double sum_re = hsum(acc_re) + tail_re;
  double sum_im = hsum(acc_im) + tail_im;
  sum_re -= f_re[0];
  sum_im -= f_im[0];
  const double phase_end = -omega * (static_cast<double>(panels) * step);
  const double pe_re = std::cos(phase_end);
  const double pe_im = std::sin(phase_end);
  sum_re += f_re[panels] * pe_re - f_im[panels] * pe_im;
  sum_im += f_re[panels] * pe_im + f_im[panels] * pe_re;
  const double third = step / 3.0;
  return {sum_re * third, sum_im * third};
}

}  // namespace viag::kernels::detail

#endif  // VIAG_HAVE_AVX2
