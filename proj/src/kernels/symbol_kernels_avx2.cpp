// Compiled with -mavx2 (no FMA) so results match the scalar kernel bit for bit.

#include "nccausal/symbol_kernels.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace nccausal::kernels::detail {

#if defined(__AVX2__)

void max_eigenvalues_avx2(const SymbolCoefficients& k, double shift, const double* dft,
                          const double* dfx, double* out, std::size_t n) noexcept {
  const __m256d a00 = _mm256_set1_pd(k.a00), a11 = _mm256_set1_pd(k.a11);
  const __m256d a01r = _mm256_set1_pd(k.a01r), a01i = _mm256_set1_pd(k.a01i);
  const __m256d b00 = _mm256_set1_pd(k.b00), b11 = _mm256_set1_pd(k.b11);
  const __m256d b01r = _mm256_set1_pd(k.b01r), b01i = _mm256_set1_pd(k.b01i);
  const __m256d s00 = _mm256_set1_pd(shift * k.c00), s11 = _mm256_set1_pd(shift * k.c11);
  const __m256d s01r = _mm256_set1_pd(shift * k.c01r), s01i = _mm256_set1_pd(shift * k.c01i);
  const __m256d half = _mm256_set1_pd(0.5);

  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d t = _mm256_loadu_pd(dft + j);
    const __m256d x = _mm256_loadu_pd(dfx + j);
    const __m256d p =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(t, a00), _mm256_mul_pd(x, b00)), s00);
    const __m256d r =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(t, a11), _mm256_mul_pd(x, b11)), s11);
    const __m256d cr =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(t, a01r), _mm256_mul_pd(x, b01r)), s01r);
    const __m256d ci =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(t, a01i), _mm256_mul_pd(x, b01i)), s01i);
    const __m256d mean = _mm256_mul_pd(_mm256_add_pd(p, r), half);
    const __m256d hd = _mm256_mul_pd(_mm256_sub_pd(p, r), half);
    const __m256d sq = _mm256_add_pd(
        _mm256_add_pd(_mm256_mul_pd(hd, hd), _mm256_mul_pd(cr, cr)), _mm256_mul_pd(ci, ci));
    _mm256_storeu_pd(out + j, _mm256_add_pd(mean, _mm256_sqrt_pd(sq)));
  }
  if (j < n) max_eigenvalues_scalar(k, shift, dft + j, dfx + j, out + j, n - j);
}

#else

void max_eigenvalues_avx2(const SymbolCoefficients& k, double shift, const double* dft,
                          const double* dfx, double* out, std::size_t n) noexcept {
  max_eigenvalues_scalar(k, shift, dft, dfx, out, n);
}

#endif

}  // namespace nccausal::kernels::detail
