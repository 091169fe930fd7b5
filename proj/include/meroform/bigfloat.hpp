#pragma once

// Arbitrary-precision real and complex scalars.

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace meroform {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Working precision in decimal digits.
struct Precision {
  int digits = 200;

  constexpr Precision() = default;
  constexpr explicit Precision(int d) : digits(d) {}
  Precision with_extra(int extra) const { return Precision(digits + extra); }
};

/// Raised when a requested accuracy cannot be certified at the given precision
/// or truncation. The CLI maps this to exit code 3.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Installs a working precision for every Real created inside the scope and
/// restores the previous one on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(Precision p) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(p.digits));
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

Real real_pi();
Real to_real(const mpq_class& q);
Real to_real(const mpz_class& z);
/// Nearest integer as an mpz.
mpz_class round_to_mpz(const Real& x);
/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const Real& x, int digits);
/// floor(log10|x|), or a large negative number for zero.
long decimal_exponent(const Real& x);

class Complex {
 public:
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT: implicit lift
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT: implicit lift

  static Complex i() { return Complex(Real(0), Real(1)); }

  Complex conj() const { return Complex(re, -im); }
  Real norm() const { return re * re + im * im; }
  Real abs() const;

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  Complex& operator*=(const Real& s) { re *= s; im *= s; return *this; }
  Complex& operator/=(const Real& s) { re /= s; im /= s; return *this; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const Real& s) { return a *= s; }
  friend Complex operator*(const Real& s, Complex a) { return a *= s; }
  friend Complex operator/(Complex a, const Real& s) { return a /= s; }
  Complex operator-() const { return Complex(-re, -im); }
};

Complex exp(const Complex& z);
/// z^n for any integer n (n < 0 inverts).
Complex pow(Complex z, long n);
/// e^{2 pi i z}
Complex q_of(const Complex& z);

std::string to_string(const Complex& z, int digits);

inline Real rmax(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real rmin(const Real& a, const Real& b) { return b < a ? b : a; }

}  // namespace meroform
