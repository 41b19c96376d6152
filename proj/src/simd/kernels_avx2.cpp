// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "varseq/simd.hpp"

namespace varseq::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// exp on four lanes: range reduction x = n ln2 + r with |r| <= ln2/2, a
// degree-13 Taylor polynomial for exp(r), then scaling by 2^n in two halves
// so that gradual underflow and n = 1024 stay representable.
inline __m256d exp4(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-745.2);
  const __m256d hi = _mm256_set1_pd(709.8);
  const __m256d underflow = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  const __m256d overflow = _mm256_cmp_pd(x, hi, _CMP_GT_OQ);
  x = _mm256_max_pd(_mm256_min_pd(x, hi), lo);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125e-1), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212e-6), r);

  constexpr double c[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
                          1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,      1.0 / 720.0,
                          1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,         0.5,
                          1.0,                1.0};
  __m256d p = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 14; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[i]));

  const __m128i ni = _mm256_cvtpd_epi32(n);
  const __m128i n1 = _mm_srai_epi32(ni, 1);
  const __m128i n2 = _mm_sub_epi32(ni, n1);
  const __m256i bias = _mm256_set1_epi64x(1023);
  const __m256d s1 = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(n1), bias), 52));
  const __m256d s2 = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_add_epi64(_mm256_cvtepi32_epi64(n2), bias), 52));
  __m256d y = _mm256_mul_pd(_mm256_mul_pd(p, s1), s2);

  y = _mm256_andnot_pd(underflow, y);
  y = _mm256_blendv_pd(y, _mm256_set1_pd(HUGE_VAL), overflow);
  return y;
}

}  // namespace

double exp_affine_sum(const double* offset, const double* slope, std::size_t n, double s) {
  const __m256d sv = _mm256_set1_pd(s);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d a0 = _mm256_fnmadd_pd(_mm256_loadu_pd(slope + i), sv, _mm256_loadu_pd(offset + i));
    const __m256d a1 = _mm256_fnmadd_pd(_mm256_loadu_pd(slope + i + 4), sv, _mm256_loadu_pd(offset + i + 4));
    acc0 = _mm256_add_pd(acc0, exp4(a0));
    acc1 = _mm256_add_pd(acc1, exp4(a1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_fnmadd_pd(_mm256_loadu_pd(slope + i), sv, _mm256_loadu_pd(offset + i));
    acc0 = _mm256_add_pd(acc0, exp4(a));
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += std::exp(offset[i] - slope[i] * s);
  return acc;
}

void hilbert_rows(const double* b, std::size_t nb, std::int64_t b_first, double* out, std::size_t nout,
                  std::int64_t out_first) {
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t k = 0; k < nout; ++k) {
    const std::int64_t base = out_first + static_cast<std::int64_t>(k) - b_first;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= nb; i += 4) {
      const __m256d d = _mm256_sub_pd(_mm256_set1_pd(static_cast<double>(base - static_cast<std::int64_t>(i))), lane);
      const __m256d q = _mm256_div_pd(_mm256_loadu_pd(b + i), d);
      acc = _mm256_add_pd(acc, _mm256_and_pd(q, _mm256_cmp_pd(d, zero, _CMP_NEQ_OQ)));
    }
    double tail = hsum(acc);
    for (; i < nb; ++i) {
      const std::int64_t d = base - static_cast<std::int64_t>(i);
      if (d != 0) tail += b[i] / static_cast<double>(d);
    }
    out[k] = tail;
  }
}

void complex_multiply(std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
  auto* pa = reinterpret_cast<double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(pa + 2 * i);
    const __m256d bv = _mm256_loadu_pd(pb + 2 * i);
    const __m256d b_re = _mm256_movedup_pd(bv);
    const __m256d b_im = _mm256_permute_pd(bv, 0xF);
    const __m256d a_swap = _mm256_permute_pd(av, 0x5);
    _mm256_storeu_pd(pa + 2 * i, _mm256_fmaddsub_pd(av, b_re, _mm256_mul_pd(a_swap, b_im)));
  }
  for (; i < n; ++i) {
    const double re = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    a[i] = {re, im};
  }
}

}  // namespace varseq::simd::avx2
