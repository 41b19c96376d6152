#include <cstdlib>
#include <string>

#include "varseq/simd.hpp"
#include "varseq/types.hpp"

namespace varseq::simd {

namespace {

constexpr KernelTable scalar_table{Backend::scalar, &scalar::exp_affine_sum, &scalar::hilbert_rows,
                                   &scalar::complex_multiply};

#if defined(VARSEQ_HAVE_AVX2)
constexpr KernelTable avx2_table{Backend::avx2, &avx2::exp_affine_sum, &avx2::hilbert_rows,
                                 &avx2::complex_multiply};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable& select() {
  if (const char* env = std::getenv("VARSEQ_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return scalar_table;
  }
#if defined(VARSEQ_HAVE_AVX2)
  if (cpu_has_avx2()) return avx2_table;
#endif
  return scalar_table;
}

}  // namespace

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

const KernelTable& kernels() {
  static const KernelTable& table = select();
  return table;
}

const KernelTable& kernels_for(Backend b) {
  if (b == Backend::scalar) return scalar_table;
#if defined(VARSEQ_HAVE_AVX2)
  if (b == Backend::avx2 && cpu_has_avx2()) return avx2_table;
#endif
  throw InvalidArgument("SIMD backend " + std::string(backend_name(b)) + " is not available");
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::scalar};
#if defined(VARSEQ_HAVE_AVX2)
  if (cpu_has_avx2()) out.push_back(Backend::avx2);
#endif
  return out;
}

}  // namespace varseq::simd
