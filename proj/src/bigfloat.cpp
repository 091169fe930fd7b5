#include "meroform/bigfloat.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace meroform {

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real to_real(const mpq_class& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real to_real(const mpz_class& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

mpz_class round_to_mpz(const Real& x) {
  Real r = boost::multiprecision::round(x);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), r.backend().data(), MPFR_RNDN);
  return z;
}

std::string to_decimal(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

long decimal_exponent(const Real& x) {
  if (x == 0) return std::numeric_limits<int>::min() / 2;
  mpfr_exp_t e2 = mpfr_get_exp(x.backend().data());
  // |x| in [2^(e2-1), 2^e2)
  long e10 = static_cast<long>(std::floor((static_cast<double>(e2) - 1) * std::log10(2.0)));
  Real a = boost::multiprecision::abs(x);
  Real p = boost::multiprecision::pow(Real(10), e10 + 1);
  while (a >= p) { ++e10; p *= 10; }
  p /= 10;
  while (a < p) { --e10; p /= 10; }
  return e10;
}

Real Complex::abs() const { return boost::multiprecision::sqrt(norm()); }

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  Real d = o.norm();
  Real r = (re * o.re + im * o.im) / d;
  im = (im * o.re - re * o.im) / d;
  re = std::move(r);
  return *this;
}

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return Complex(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

Complex pow(Complex z, long n) {
  if (n < 0) return Complex(1) / pow(std::move(z), -n);
  Complex r(1);
  while (n > 0) {
    if (n & 1) r *= z;
    n >>= 1;
    if (n) z *= z;
  }
  return r;
}

Complex q_of(const Complex& z) {
  Real twopi = 2 * real_pi();
  return exp(Complex(-twopi * z.im, twopi * z.re));
}

std::string to_string(const Complex& z, int digits) {
  std::string s = to_decimal(z.re, digits);
  if (z.im >= 0) s += " + "; else s += " - ";
  s += to_decimal(boost::multiprecision::abs(z.im), digits) + "*i";
  return s;
}

}  // namespace meroform
