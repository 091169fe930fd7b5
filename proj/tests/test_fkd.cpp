#include <doctest.h>

#include "meroform/fkd.hpp"

#include <complex>

using namespace meroform;
namespace mp = boost::multiprecision;

namespace {

const Precision P(50);

// Oracle: sum over a <= A and |b| <= 2aN of (a z^2 + b z + c)^-k in long double.
std::complex<long double> lattice_oracle(int k, long long D, std::complex<long double> z, long A, long N) {
  std::complex<long double> s = 0;
  for (long a = 1; a <= A; ++a)
    for (long b = -2 * a * N; b <= 2 * a * N; ++b) {
      long long num = static_cast<long long>(b) * b - D;
      if (num % (4 * a)) continue;
      long long c = num / (4 * a);
      std::complex<long double> q = static_cast<long double>(a) * z * z + static_cast<long double>(b) * z +
                                    static_cast<long double>(c);
      s += std::pow(q, -k);
    }
  return s;
}

Complex to_c(std::complex<long double> z) {
  return Complex(Real(static_cast<double>(z.real())), Real(static_cast<double>(z.imag())));
}

}  // namespace

TEST_CASE("exponential sums against brute force") {
  PrecisionScope s(P);
  for (long long D : {-3LL, -4LL, -23LL, -12LL})
    for (long a = 1; a <= 40; ++a)
      for (long r = 0; r <= 5; ++r) {
        Real ref = 0;
        long n = 0;
        for (long b = 0; b < 2 * a; ++b)
          if (((static_cast<long long>(b) * b - D) % (4 * a)) == 0) {
            ref += mp::cos(real_pi() * r * b / a);
            ++n;
          }
        ExpSum e = exp_sum(a, D, r, P);
        CHECK(e.n_roots == n);
        CHECK(abs(e.value - ref) < Real("1e-45"));
        CHECK(abs(e.value) <= Real(n) + Real("1e-45"));
      }
}

TEST_CASE("half-integer Bessel functions against closed forms") {
  PrecisionScope s(P);
  for (const char* xs : {"0.01", "0.7", "3.5", "41.0"}) {
    Real x(xs);
    Real pre = mp::sqrt(2 / (real_pi() * x));
    Real i1 = pre * mp::sinh(x);
    Real i2 = pre * (mp::cosh(x) - mp::sinh(x) / x);
    Real i3 = pre * ((1 + 3 / (x * x)) * mp::sinh(x) - 3 * mp::cosh(x) / x);
    CHECK(abs(bessel_I_half(1, x, P) - i1) < Real("1e-40") * i1);
    CHECK(abs(bessel_I_half(2, x, P) - i2) < Real("1e-40") * i2);
    CHECK(abs(bessel_I_half(3, x, P) - i3) < Real("1e-35") * i3);
  }
}

TEST_CASE("direct summation against a naive lattice sum") {
  PrecisionScope s(P);
  std::complex<long double> zl(0.13L, 1.07L);
  for (auto [k, D] : {std::pair{2, -3LL}, std::pair{3, -3LL}, std::pair{3, -4LL}, std::pair{5, -7LL}}) {
    Complex got = f_direct_range(FkdSpec{k, D, std::nullopt}, to_c(zl), 1, 12, P);
    auto ref = lattice_oracle(k, D, zl, 12, 4000);
    Complex diff = got - to_c(ref);
    CHECK(diff.abs() < Real("1e-11") * to_c(ref).abs());
  }
}

TEST_CASE("modularity of f_{k,D} (property)") {
  PrecisionScope s(P);
  Real tol("1e-22");
  for (auto [k, D] : {std::pair{6, -3LL}, std::pair{6, -4LL}, std::pair{7, -7LL}}) {
    Complex z(Real("0.21"), Real("1.13"));
    FkdSpec sp{k, D, std::nullopt};
    Complex f = f_direct(sp, z, tol, P).value;
    Complex fs = f_direct(sp, Complex(-1) / z, tol, P).value;
    Complex ft = f_direct(sp, z + Complex(1), tol, P).value;
    Complex zk = pow(z, 2 * k);
    CHECK((fs - zk * f).abs() < Real("1e-18") * (zk * f).abs());
    CHECK((ft - f).abs() < Real("1e-18") * f.abs());
  }
}

TEST_CASE("class sums and poles") {
  PrecisionScope s(P);
  Real tol("1e-22");
  Complex z(Real("0.07"), Real("0.93"));
  Complex total = f_direct(FkdSpec{6, -23, std::nullopt}, z, tol, P).value;
  Complex parts;
  for (const auto& c : class_representatives(-23, true)) parts += f_class_direct(6, c, z, tol, P).value;
  CHECK((total - parts).abs() < Real("1e-18") * total.abs());

  Complex near_rho(Real(-1) / 2 + Real("1e-7"), mp::sqrt(Real(3)) / 2);
  CHECK_THROWS_AS(f_direct(FkdSpec{6, -3, std::nullopt}, near_rho, tol, P), PoleError);
  CHECK(pole_distance(-3, near_rho, P) < Real("1e-6"));
  CHECK_THROWS(FkdSpec{1, -3, std::nullopt}.validate());
  CHECK_THROWS(FkdSpec{2, -5, std::nullopt}.validate());
}

TEST_CASE("Fourier coefficients against a DFT of the direct sum") {
  // a-terms a <= 16 on both sides; Im z = 1.5 stays well above every pole height sqrt|D|/2a
  Precision p(60);
  PrecisionScope s(p);
  const int N = 32;
  const long A = 16;
  Real y("1.5");
  for (auto [k, D] : {std::pair{2, -3LL}, std::pair{3, -3LL}, std::pair{3, -4LL}}) {
    FkdSpec sp{k, D, std::nullopt};
    std::vector<Complex> samples;
    for (int j = 0; j < N; ++j) samples.push_back(f_direct_range(sp, Complex(Real(j) / N, y), 1, A, p));
    FourierOptions o;
    o.a_max = A;
    o.use_double_tail = false;
    o.raw = true;
    for (long r = 1; r <= 3; ++r) {
      Complex acc;
      for (int j = 0; j < N; ++j) {
        Real t = -2 * real_pi() * r * j / N;
        acc += samples[static_cast<size_t>(j)] * Complex(mp::cos(t), mp::sin(t));
      }
      Real dft = acc.re / N * mp::exp(2 * real_pi() * r * y);
      FourierCoefficient c = fourier_coeff(k, D, r, p, o);
      CHECK(abs(c.value - dft) < Real("1e-20") * rmax(abs(dft), Real(1)));
    }
  }
}

TEST_CASE("tail bounds dominate the true tail (property)") {
  PrecisionScope s(P);
  for (auto [k, D] : {std::pair{2, -3LL}, std::pair{4, -4LL}, std::pair{3, -23LL}})
    for (long r : {1L, 4L, 9L}) {
      FourierOptions lo, hi;
      lo.a_max = 40;
      lo.use_double_tail = false;
      hi.a_max = 4000;
      FourierCoefficient a = fourier_coeff(k, D, r, P, lo);
      FourierCoefficient b = fourier_coeff(k, D, r, P, hi);
      CHECK(abs(a.value - b.value) <= a.tail_bound + b.error());
      CHECK(b.error() < a.tail_bound);
    }
}

TEST_CASE("f_{2,-3} leading coefficient") {
  FourierCoefficient c = fourier_coeff(2, -3, 1, Precision(40));
  CHECK(abs(c.value + 256) < rmax(c.error(), Real("1e-30")) * 10);
  CHECK(fourier_coeff(2, -3, 0, Precision(40)).value == 0);
}
