#pragma once

#include "viag/kernels.hpp"

namespace viag::kernels::detail {

void susceptibility_batch_scalar(const double* omega_c_sq, std::size_t count,
                                 const ChiParams& params, double* chi_re,
                                 double* chi_im);

std::complex<double> oscillatory_simpson_scalar(const double* f_re,
                                                const double* f_im,
                                                std::size_t panels, double step,
                                                double omega);

#if defined(VIAG_HAVE_AVX2)
void susceptibility_batch_avx2(const double* omega_c_sq, std::size_t count,
                               const ChiParams& params, double* chi_re,
                               double* chi_im);

std::complex<double> oscillatory_simpson_avx2(const double* f_re,
                                              const double* f_im,
                                              std::size_t panels, double step,
                                              double omega);
#endif

}  // namespace viag::kernels::detail
