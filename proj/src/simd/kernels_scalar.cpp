#include <cmath>

#include "varseq/simd.hpp"

namespace varseq::simd::scalar {

double exp_affine_sum(const double* offset, const double* slope, std::size_t n, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::exp(offset[i] - slope[i] * s);
  return acc;
}

void hilbert_rows(const double* b, std::size_t nb, std::int64_t b_first, double* out, std::size_t nout,
                  std::int64_t out_first) {
  for (std::size_t k = 0; k < nout; ++k) {
    const std::int64_t base = out_first + static_cast<std::int64_t>(k) - b_first;
    double acc = 0.0;
    for (std::size_t i = 0; i < nb; ++i) {
      const std::int64_t d = base - static_cast<std::int64_t>(i);
      if (d != 0) acc += b[i] / static_cast<double>(d);
    }
    out[k] = acc;
  }
}

void complex_multiply(std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    a[i] = {re, im};
  }
}

}  // namespace varseq::simd::scalar
