#include "meroform/simd/kernels.hpp"

#include <cmath>

namespace meroform::simd {

namespace {

void bessel_reduced_scalar(int k, const double* x, double* out, std::size_t n) {
  const double nu = k - 0.5;
  const double g0 = std::tgamma(nu + 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double t = x[i] * x[i] * 0.25;
    double term = 1.0 / g0;
    double sum = term;
    for (int m = 1; m < 200; ++m) {
      term *= t / (m * (nu + m));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    out[i] = sum;
  }
}

void cos_multiples_scalar(const double* c1, std::size_t n, int r_max, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = 1.0;
    if (r_max >= 1) out[n + i] = c1[i];
  }
  for (int r = 2; r <= r_max; ++r)
    for (std::size_t i = 0; i < n; ++i)
      out[static_cast<std::size_t>(r) * n + i] =
          2.0 * c1[i] * out[static_cast<std::size_t>(r - 1) * n + i] - out[static_cast<std::size_t>(r - 2) * n + i];
}

const Kernels kScalar{"scalar", bessel_reduced_scalar, cos_multiples_scalar};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace meroform::simd
