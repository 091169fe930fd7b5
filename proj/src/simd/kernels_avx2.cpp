#include "meroform/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace meroform::simd {

namespace {

void bessel_reduced_avx2(int k, const double* x, double* out, std::size_t n) {
  const double nu = k - 0.5;
  const double g0 = 1.0 / std::tgamma(nu + 1.0);
  std::size_t i = 0;
  const __m256d quarter = _mm256_set1_pd(0.25);
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d t = _mm256_mul_pd(_mm256_mul_pd(xv, xv), quarter);
    __m256d term = _mm256_set1_pd(g0);
    __m256d sum = term;
    for (int m = 1; m < 200; ++m) {
      term = _mm256_mul_pd(term, _mm256_mul_pd(t, _mm256_set1_pd(1.0 / (m * (nu + m)))));
      sum = _mm256_add_pd(sum, term);
      // stop once every lane has converged
      __m256d lim = _mm256_mul_pd(sum, _mm256_set1_pd(1e-18));
      if (_mm256_movemask_pd(_mm256_cmp_pd(term, lim, _CMP_GE_OQ)) == 0) break;
    }
    _mm256_storeu_pd(out + i, sum);
  }
  if (i < n) scalar_kernels().bessel_reduced(k, x + i, out + i, n - i);
}

void cos_multiples_avx2(const double* c1, std::size_t n, int r_max, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = 1.0;
    if (r_max >= 1) out[n + i] = c1[i];
  }
  const __m256d two = _mm256_set1_pd(2.0);
  for (int r = 2; r <= r_max; ++r) {
    double* cur = out + static_cast<std::size_t>(r) * n;
    const double* p1 = out + static_cast<std::size_t>(r - 1) * n;
    const double* p2 = out + static_cast<std::size_t>(r - 2) * n;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      __m256d c = _mm256_mul_pd(two, _mm256_loadu_pd(c1 + i));
      __m256d v = _mm256_fmsub_pd(c, _mm256_loadu_pd(p1 + i), _mm256_loadu_pd(p2 + i));
      _mm256_storeu_pd(cur + i, v);
    }
    for (; i < n; ++i) cur[i] = 2.0 * c1[i] * p1[i] - p2[i];
  }
}

const Kernels kAvx2{"avx2", bessel_reduced_avx2, cos_multiples_avx2};

}  // namespace

const Kernels* avx2_kernels() { return &kAvx2; }

}  // namespace meroform::simd
