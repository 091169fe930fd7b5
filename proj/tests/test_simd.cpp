#include <doctest.h>

#include "meroform/simd/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace meroform::simd;

namespace {

long double bessel_reduced_oracle(int k, long double x) {
  long double t = 1.0L / std::tgamma(static_cast<long double>(k) + 0.5L), s = 0;
  long double x2 = x * x / 4;
  for (int m = 0; m < 400; ++m) {
    s += t;
    t *= x2 / ((m + 1) * (k + 0.5L + m));
  }
  return s;
}

std::vector<double> random_points(size_t n, double lo, double hi, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar Bessel kernel against a long double series") {
  const Kernels& s = scalar_kernels();
  for (int k : {2, 3, 6, 12}) {
    auto x = random_points(101, 0.0, 40.0, static_cast<unsigned>(k));
    x[0] = 0.0;
    std::vector<double> out(x.size());
    s.bessel_reduced(k, x.data(), out.data(), x.size());
    for (size_t i = 0; i < x.size(); ++i) {
      long double ref = bessel_reduced_oracle(k, x[i]);
      CHECK(std::fabs(static_cast<long double>(out[i]) - ref) <= 1e-13L * ref);
    }
  }
}

TEST_CASE("Chebyshev cosines") {
  auto th = random_points(37, 0.0, 3.14, 5);
  std::vector<double> c1(th.size());
  for (size_t i = 0; i < th.size(); ++i) c1[i] = std::cos(th[i]);
  const int r_max = 20;
  std::vector<double> out((r_max + 1) * th.size());
  scalar_kernels().cos_multiples(c1.data(), th.size(), r_max, out.data());
  for (int r = 0; r <= r_max; ++r)
    for (size_t i = 0; i < th.size(); ++i)
      CHECK(std::fabs(out[static_cast<size_t>(r) * th.size() + i] - std::cos(r * th[i])) < 1e-12);
}

TEST_CASE("AVX2 kernels agree with the scalar kernels") {
  const Kernels* v = avx2_kernels();
  if (!v) {
    MESSAGE("AVX2 kernels not built; comparing the active kernels only");
    v = &active_kernels();
  }
  const Kernels& s = scalar_kernels();
  for (size_t n : {size_t{0}, size_t{1}, size_t{3}, size_t{4}, size_t{7}, size_t{64}, size_t{1003}}) {
    auto x = random_points(n, 0.0, 40.0, static_cast<unsigned>(n + 1));
    for (int k : {2, 5, 9}) {
      std::vector<double> a(n), b(n);
      s.bessel_reduced(k, x.data(), a.data(), n);
      v->bessel_reduced(k, x.data(), b.data(), n);
      for (size_t i = 0; i < n; ++i) CHECK(std::fabs(a[i] - b[i]) <= 4e-15 * std::fabs(a[i]));
    }
    std::vector<double> c1(n);
    for (size_t i = 0; i < n; ++i) c1[i] = std::cos(x[i]);
    const int r_max = 9;
    std::vector<double> a((r_max + 1) * n), b((r_max + 1) * n);
    s.cos_multiples(c1.data(), n, r_max, a.data());
    v->cos_multiples(c1.data(), n, r_max, b.data());
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::fabs(a[i] - b[i]) <= 1e-14);
  }
  CHECK(std::string(active_kernels().name).size() > 0);
}
