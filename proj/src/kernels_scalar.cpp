#include <cassert>
#include <cmath>

#include "kernels_impl.hpp"

namespace viag::kernels {

namespace detail {

void susceptibility_batch_scalar(const double* omega_c_sq, std::size_t count,
                                 const ChiParams& params, double* chi_re,
                                 double* chi_im) {
  for (std::size_t i = 0; i < count; ++i) {
    eval_chi(omega_c_sq[i], params, chi_re[i], chi_im[i]);
  }
}

std::complex<double> oscillatory_simpson_scalar(const double* f_re,
                                                const double* f_im,
                                                std::size_t panels, double step,
                                                double omega) {
  assert(panels >= 2 && panels % 2 == 0);
  // Simpson weights 1,4,2,...,2,4,1 folded as pattern (even j -> 2,
  // odd j -> 4) over j in [0, panels), endpoints fixed afterwards.
  constexpr std::size_t kBlock = 64;
  const double step_re = std::cos(omega * step);
  const double step_im = -std::sin(omega * step);
  double acc_re = 0.0;
  double acc_im = 0.0;
  for (std::size_t block = 0; block < panels; block += kBlock) {
    const std::size_t end = std::min(block + kBlock, panels);
    const double phase = -omega * (static_cast<double>(block) * step);
    double p_re = std::cos(phase);
    double p_im = std::sin(phase);
    for (std::size_t j = block; j < end; ++j) {
      const double w = (j % 2 == 0) ? 2.0 : 4.0;
      acc_re += w * (f_re[j] * p_re - f_im[j] * p_im);
      acc_im += w * (f_re[j] * p_im + f_im[j] * p_re);
      const double next_re = p_re * step_re - p_im * step_im;
      const double next_im = p_re * step_im + p_im * step_re;
      p_re = next_re;
      p_im = next_im;
    }
  }
  // j = 0 was counted with weight 2, wants 1; j = panels was not visited.
  acc_re -= f_re[0];
  acc_im -= f_im[0];
  const double phase_end = -omega * (static_cast<double>(panels) * step);
  const double pe_re = std::cos(phase_end);
  const double pe_im = std::sin(phase_end);
  acc_re += f_re[panels] * pe_re - f_im[panels] * pe_im;
  acc_im += f_re[panels] * pe_im + f_im[panels] * pe_re;
  const double third = step / 3.0;
  return {acc_re * third, acc_im * third};
}

}  // namespace detail

void transmission_batch(const double* chi_re, const double* chi_im,
                        std::size_t count, double half_kl, double* t_re,
                        double* t_im) {
  for (std::size_t i = 0; i < count; ++i) {
    const double amplitude = std::exp(-half_kl * chi_im[i]);
    const double phase = half_kl * chi_re[i];
    t_re[i] = amplitude * std::cos(phase);
    t_im[i] = amplitude * std::sin(phase);
  }
}

}  // namespace viag::kernels
