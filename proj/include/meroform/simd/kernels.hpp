#pragma once

// Double-precision batch kernels for the Bessel/exponential-sum tails, with a
// portable scalar version and an AVX2+FMA version chosen at runtime.

#include <cstddef>

namespace meroform::simd {

struct Kernels {
  const char* name;
  /// out[i] = I_{k-1/2}(x[i]) / (x[i]/2)^{k-1/2}, i.e. sum_m (x^2/4)^m / (m! Gamma(k+1/2+m)).
  /// Accurate for 0 <= x <= 40.
  void (*bessel_reduced)(int k, const double* x, double* out, std::size_t n);
  /// Given c1[i] = cos(theta_i), writes out[r*n + i] = cos(r*theta_i) for 0 <= r <= r_max
  /// by the Chebyshev recurrence.
  void (*cos_multiples)(const double* c1, std::size_t n, int r_max, double* out);
};

const Kernels& scalar_kernels();
/// Null when the binary was built without AVX2 support.
const Kernels* avx2_kernels();
/// AVX2 when the CPU supports AVX2 and FMA, unless MEROFORM_SIMD=scalar.
const Kernels& active_kernels();

}  // namespace meroform::simd
