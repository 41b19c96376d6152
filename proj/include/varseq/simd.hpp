#pragma once

// Inner-loop kernels with a scalar reference and vector variants chosen at
// runtime. Every variant must agree with the scalar reference to rounding.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace varseq::simd {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

struct KernelTable {
  Backend backend;

  /// sum_i exp(offset[i] - slope[i] * s). Offsets of -inf contribute 0.
  double (*exp_affine_sum)(const double* offset, const double* slope, std::size_t n, double s);

  /// out[k] = sum_{i : d != 0} b[i] / d with d = (out_first + k) - (b_first + i).
  void (*hilbert_rows)(const double* b, std::size_t nb, std::int64_t b_first, double* out,
                       std::size_t nout, std::int64_t out_first);

  /// a[i] *= b[i] for interleaved complex arrays.
  void (*complex_multiply)(std::complex<double>* a, const std::complex<double>* b, std::size_t n);
};

/// Kernels for the best backend this CPU supports. Fixed after first use;
/// VARSEQ_SIMD=scalar in the environment forces the reference path.
const KernelTable& kernels();

/// Kernels for a specific backend; throws if it is not available here.
const KernelTable& kernels_for(Backend b);

/// Backends compiled in and supported by the running CPU, scalar first.
std::vector<Backend> available_backends();

namespace scalar {
double exp_affine_sum(const double* offset, const double* slope, std::size_t n, double s);
void hilbert_rows(const double* b, std::size_t nb, std::int64_t b_first, double* out, std::size_t nout,
                  std::int64_t out_first);
void complex_multiply(std::complex<double>* a, const std::complex<double>* b, std::size_t n);
}  // namespace scalar

#if defined(VARSEQ_HAVE_AVX2)
namespace avx2 {
double exp_affine_sum(const double* offset, const double* slope, std::size_t n, double s);
void hilbert_rows(const double* b, std::size_t nb, std::int64_t b_first, double* out, std::size_t nout,
                  std::int64_t out_first);
void complex_multiply(std::complex<double>* a, const std::complex<double>* b, std::size_t n);
}  // namespace avx2
#endif

}  // namespace varseq::simd
