#include "meroform/numeric.hpp"

#include <cmath>
#include <sstream>

namespace meroform {

namespace mp = boost::multiprecision;

namespace {

Real eps_for(Precision prec) { return mp::pow(Real(10), -prec.digits); }

template <class C>
Certified eval_series_impl(const Series<C>& f, const Complex& z, Precision prec, Real (*conv)(const C&)) {
  PrecisionScope scope(prec.with_extra(10));
  if (z.im <= 0) throw PrecisionError("eval_qseries: z must lie in the upper half plane");
  Complex q = q_of(z);
  Real aq = mp::exp(-2 * real_pi() * z.im);
  int s = f.start(), t = f.trunc_order();
  // Horner from the top down
  Complex acc(0);
  for (int e = t - 1; e >= std::max(s, 0); --e) {
    acc *= q;
    acc += Complex(conv(f.coeff(e)));
  }
  if (s < 0) {
    Complex qi = Complex(1) / q;
    Complex neg(0);
    for (int e = s; e < std::min(0, t); ++e) {
      neg += Complex(conv(f.coeff(e)));
      neg *= qi;
    }
    // neg = sum_{e<0} c_e q^{e} after the final multiplication
    acc += neg;
  }
  // growth model over the last quarter of the coefficients
  int lo = std::max(s, t - std::max(4, (t - s) / 4));
  double log_rho = 0;
  double log_c = -1e300;
  double prev = std::nan("");
  for (int e = lo; e < t; ++e) {
    Real a = mp::abs(conv(f.coeff(e)));
    if (a == 0) {
      prev = std::nan("");
      continue;
    }
    double la = static_cast<double>(mp::log(a));
    if (!std::isnan(prev)) log_rho = std::max(log_rho, la - prev);
    prev = la;
  }
  for (int e = lo; e < t; ++e) {
    Real a = mp::abs(conv(f.coeff(e)));
    if (a == 0) continue;
    log_c = std::max(log_c, static_cast<double>(mp::log(a)) - log_rho * e);
  }
  double log_q = static_cast<double>(mp::log(aq));
  double log_ratio = log_rho + log_q;
  Real err = eps_for(prec);
  if (log_c > -1e299) {
    if (log_ratio >= -1e-3) throw PrecisionError("eval_qseries: coefficient growth outpaces |q| at this point");
    double log_tail = log_c + t * log_ratio - std::log1p(-std::exp(log_ratio));
    double target = -prec.digits * std::log(10.0);
    if (log_tail > target) {
      long need = static_cast<long>(std::ceil((target - log_c + std::log1p(-std::exp(log_ratio))) / log_ratio));
      throw PrecisionError("eval_qseries: truncation order " + std::to_string(t) + " too small; need about " +
                           std::to_string(need));
    }
    err += Real(std::exp(log_tail));
  }
  return Certified{acc, err};
}

Real conv_q(const mpq_class& c) { return to_real(c); }
Real conv_r(const Real& c) { return c; }

// Smallest N with sum_{n >= N} 2 n^p |q|^n below 10^-digits (relative to scale).
long lambert_terms(double log_q, int p, double log_scale, int digits) {
  double target = -digits * std::log(10.0) - log_scale;
  for (long n = 1; n < 10'000'000; ++n) {
    double ratio = log_q + p * std::log1p(1.0 / n);
    if (ratio >= 0) continue;
    double tail = std::log(2.0) + p * std::log(static_cast<double>(n)) + n * log_q - std::log1p(-std::exp(ratio));
    if (tail < target) return n;
  }
  throw PrecisionError("eval_forms: point too close to the real axis");
}

}  // namespace

Certified eval_qseries(const QSeries& f, const Complex& z, Precision prec) {
  return eval_series_impl<mpq_class>(f, z, prec, conv_q);
}

Certified eval_qseries(const RSeries& f, const Complex& z, Precision prec) {
  return eval_series_impl<Real>(f, z, prec, conv_r);
}

FormValues eval_forms(const Complex& z, Precision prec) {
  if (z.im <= 0) throw PrecisionError("eval_forms: z must lie in the upper half plane");
  Precision work = prec.with_extra(10);
  PrecisionScope scope(work);
  Complex q = q_of(z);
  Real pi = real_pi();
  double log_q = -2 * M_PI * static_cast<double>(z.im);
  long N = lambert_terms(log_q, 5, std::log(504.0), work.digits);

  // divisor sums sigma_1, sigma_3, sigma_5 up to N
  std::vector<mpz_class> s1(static_cast<size_t>(N) + 1), s3(s1.size()), s5(s1.size());
  for (long d = 1; d <= N; ++d) {
    mpz_class d1 = d, d3 = d1 * d1 * d1, d5 = d3 * d1 * d1;
    for (long m = d; m <= N; m += d) {
      s1[static_cast<size_t>(m)] += d1;
      s3[static_cast<size_t>(m)] += d3;
      s5[static_cast<size_t>(m)] += d5;
    }
  }
  Complex a1(0), a3(0), a5(0);
  for (long n = N; n >= 1; --n) {
    a1 += Complex(to_real(s1[static_cast<size_t>(n)]));
    a3 += Complex(to_real(s3[static_cast<size_t>(n)]));
    a5 += Complex(to_real(s5[static_cast<size_t>(n)]));
    a1 *= q;
    a3 *= q;
    a5 *= q;
  }
  FormValues v;
  v.e2 = Complex(1) - a1 * Real(24);
  v.e4 = Complex(1) + a3 * Real(240);
  v.e6 = Complex(1) - a5 * Real(504);
  v.e2star = v.e2 - Complex(Real(3) / (pi * z.im));

  // Delta = q prod (1 - q^n)^24; relative truncation error ~ 24|q|^{N+1}/(1-|q|)^2
  long M = lambert_terms(log_q, 0, std::log(24.0), work.digits);
  Complex prod(1), qn(1);
  for (long n = 1; n <= M; ++n) {
    qn *= q;
    prod *= Complex(1) - qn;
  }
  v.delta = q * pow(prod, 24);
  v.error = eps_for(prec);
  return v;
}

Complex eval_j(const Complex& z, Precision prec) {
  FormValues v = eval_forms(z, prec);
  PrecisionScope scope(prec.with_extra(10));
  return pow(v.e4, 3) / v.delta;
}

Complex eval_form(const FormExpr& f, const FormValues& v, Precision prec) {
  PrecisionScope scope(prec.with_extra(10));
  Complex sum(0);
  for (const auto& fr : f.fractions()) {
    Complex num(0);
    for (const auto& [m, c] : fr.numerator)
      num += Complex(c.to_real()) * pow(v.e4, m.e4) * pow(v.e6, m.e6) * pow(v.delta, m.delta);
    Complex den(1);
    for (const auto& p : fr.poles) den *= pow(pow(v.e4, 3) - v.delta * to_real(p.j0), p.power);
    sum += num / den;
  }
  return sum;
}

Complex eval_form(const FormExpr& f, const Complex& z, Precision prec) {
  return eval_form(f, eval_forms(z, prec), prec);
}

std::vector<Complex> maass_derivatives(const QuasiExpr& f, int n, const Complex& z, Precision prec) {
  FormValues v = eval_forms(z, prec);
  PrecisionScope scope(prec.with_extra(10));
  std::vector<Complex> out;
  for (const auto& g : derivative_tower(f, n)) out.push_back(g.evaluate(v.e2star, v.e4, v.e6));
  return out;
}

std::vector<Complex> modified_taylor(const QuasiExpr& f, const Complex& z, int n_terms, Precision prec) {
  if (n_terms < 1) throw SeriesError("modified_taylor: n_terms must be at least 1");
  auto d = maass_derivatives(f, n_terms - 1, z, prec);
  PrecisionScope scope(prec.with_extra(10));
  Real s = 4 * real_pi() * z.im;
  Real scale = 1;
  for (int m = 0; m < n_terms; ++m) {
    if (m > 0) scale = scale * s / m;
    d[static_cast<size_t>(m)] *= scale;
  }
  return d;
}

Real chowla_selberg(long long D, Precision prec) {
  if (!is_fundamental(D)) throw QuadFormError("chowla_selberg: discriminant must be fundamental");
  PrecisionScope scope(prec.with_extra(10));
  long long n = -D;
  Real log_prod = 0;
  for (long long m = 1; m < n; ++m) {
    int chi = kronecker(D, m);
    if (chi == 0) continue;
    Real g = mp::lgamma(Real(m) / Real(n));
    log_prod += chi * g;
  }
  int w = unit_w(D);
  long h = class_number(D);
  Real expo = Real(w) / Real(2 * h);
  return mp::exp(expo * log_prod) / mp::sqrt(2 * real_pi() * Real(n));
}

std::string ClassPolynomial::to_string() const {
  std::ostringstream os;
  int deg = degree();
  bool first = true;
  for (int i = deg; i >= 0; --i) {
    const mpz_class& c = coeffs[static_cast<size_t>(i)];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool show = !(a == 1 && i > 0);
    if (show) os << a.get_str();
    if (i > 0) {
      if (show) os << "*";
      os << "X";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

ClassPolynomial class_polynomial(long long D, Precision prec) {
  auto reps = class_representatives(D, true);
  for (int attempt = 0; attempt < 8; ++attempt) {
    PrecisionScope scope(prec);
    std::vector<Complex> poly{Complex(1)};  // low to high
    for (const auto& f : reps) {
      Complex j = eval_j(cm_point(f, prec).value, prec);
      std::vector<Complex> next(poly.size() + 1, Complex(0));
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= poly[i] * j;
      }
      poly = std::move(next);
    }
    ClassPolynomial out;
    out.D = D;
    bool ok = true;
    for (const auto& c : poly) {
      mpz_class r = round_to_mpz(c.re);
      Real dist = mp::abs(c.re - to_real(r)) + mp::abs(c.im);
      // enough digits for the size of the coefficient, and isolation by 0.25
      long size_digits = c.re == 0 ? 0 : decimal_exponent(c.re);
      if (dist > Real(0.25) || size_digits + 15 > prec.digits) ok = false;
      out.coeffs.push_back(r);
    }
    if (ok) return out;
    prec = Precision(prec.digits * 2);
  }
  throw PrecisionError("class_polynomial: rounding could not be certified for D = " + std::to_string(D));
}

}  // namespace meroform
