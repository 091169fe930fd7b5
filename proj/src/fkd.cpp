#include "meroform/fkd.hpp"

#include "meroform/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace meroform {

namespace mp = boost::multiprecision;

void FkdSpec::validate() const {
  if (k < 2) throw QuadFormError("k must be at least 2");
  check_discriminant(D);
  if (cls) {
    if (cls->disc() != D) throw QuadFormError("class representative has the wrong discriminant");
    if (!cls->is_reduced()) throw QuadFormError("class representative must be reduced");
  }
}

// ---------------------------------------------------------------------------

ExpSum exp_sum(long a, long long D, long r, Precision prec) {
  if (a < 1) throw QuadFormError("exp_sum: a must be positive");
  PrecisionScope scope(prec);
  ExpSum s{Real(0), 0};
  Real pi = real_pi();
  long long two_a = 2LL * a, four_a = 4LL * a;
  for (long long b = 0; b < two_a; ++b) {
    long long d = b * b - D;
    if (d % four_a != 0) continue;
    ++s.n_roots;
    long long m = static_cast<long long>((static_cast<__int128>(r) * b) % two_a);
    s.value += mp::cos(pi * Real(m) / Real(a));
  }
  return s;
}

Real bessel_I_half(int k, const Real& x, Precision prec) {
  if (k < 1) throw QuadFormError("bessel_I_half: k must be positive");
  if (x <= 0) throw QuadFormError("bessel_I_half: x must be positive");
  Precision work = prec.with_extra(12);
  PrecisionScope scope(work);
  Real nu = Real(k) - Real(0.5);
  if (x <= Real(2 * k + 20)) {
    // sum_m (x/2)^{nu+2m} / (m! Gamma(nu+m+1)), all terms positive
    Real t = x * x / 4;
    Real term = mp::pow(x / 2, nu) / mp::tgamma(nu + 1);
    Real sum = term;
    Real eps = mp::pow(Real(10), -work.digits);
    for (int m = 1; m < 100000; ++m) {
      term *= t / (Real(m) * (nu + m));
      sum += term;
      if (term < eps * sum) break;
    }
    return sum;
  }
  // closed form: I_{-1/2} = sqrt(2/(pi x)) cosh x, I_{1/2} = sqrt(2/(pi x)) sinh x,
  // then I_{n+1} = I_{n-1} - (2n/x) I_n
  Real c = mp::sqrt(2 / (real_pi() * x));
  Real im = c * mp::cosh(x), i0 = c * mp::sinh(x);
  for (int n = 1; n < k; ++n) {
    Real v = Real(n) - Real(0.5);
    Real next = im - (2 * v / x) * i0;
    im = i0;
    i0 = next;
  }
  return i0;
}

// ---------------------------------------------------------------------------
// Fourier coefficients

namespace {

long square_factor(long long D) {
  long f = 1;
  for (long g = 1; static_cast<long long>(g) * g <= -D; ++g)
    if (D % (static_cast<long long>(g) * g) == 0) f = g;
  return f;
}

// log of pi^-k c_r prefactor (or c_r when raw), without the a-sum
double log_prefactor(int k, long long D, long r, bool raw) {
  double l = (k + 0.5) * std::log(2.0) + (k + 1) * std::log(M_PI) + (k - 0.5) * std::log(static_cast<double>(r)) -
             (k / 2.0 - 0.25) * std::log(static_cast<double>(-D)) - std::lgamma(static_cast<double>(k));
  if (!raw) l -= k * std::log(M_PI);
  return l;
}

// log of the certified tail bound: prefactor * cosh(x/A) (x/2)^nu / Gamma(nu+1) * 2F * T(A)
double log_tail_bound(int k, long long D, long r, long A, bool raw) {
  double nu = k - 0.5;
  double x = M_PI * r * std::sqrt(static_cast<double>(-D));
  double s = k;
  double lA = std::log(static_cast<double>(A));
  double T = s * (lA / (s - 1) + 1 / ((s - 1) * (s - 1)) + 1 / (s - 1));
  double y = x / A;
  double log_cosh = y > 30 ? y - std::log(2.0) : std::log(std::cosh(y));
  return log_prefactor(k, D, r, raw) + log_cosh + nu * std::log(x / 2) - std::lgamma(nu + 1) +
         std::log(2.0 * square_factor(D)) + std::log(T) + (1 - s) * lA;
}

long choose_cutoff(int k, long long D, long r, bool raw, double log_target, long cap) {
  if (log_tail_bound(k, D, r, cap, raw) > log_target) return cap;
  long lo = 1, hi = cap;
  while (lo < hi) {
    long mid = lo + (hi - lo) / 2;
    if (log_tail_bound(k, D, r, mid, raw) <= log_target) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

}  // namespace

Real fourier_tail_bound(int k, long long D, long r, long A, bool raw, Precision prec) {
  PrecisionScope scope(prec);
  if (r <= 0) return Real(0);
  return mp::exp(Real(log_tail_bound(k, D, r, A, raw)));
}

std::vector<FourierCoefficient> fourier_coeffs(int k, long long D, long r_max, Precision prec,
                                               const FourierOptions& opt) {
  FkdSpec{k, D, std::nullopt}.validate();
  std::vector<FourierCoefficient> out;
  if (r_max < 1) return out;
  Precision work = prec.with_extra(15);
  PrecisionScope scope(work);

  const double log_eps = -prec.digits * std::log(10.0);
  long A = opt.a_max;
  if (A <= 0) {
    A = 1;
    for (long r = 1; r <= r_max; ++r) A = std::max(A, choose_cutoff(k, D, r, opt.raw, log_eps, opt.a_cap));
  }
  const double sqrtD = std::sqrt(static_cast<double>(-D));
  // full-precision segment: until the remaining terms are far below the final error
  long A_hi = A;
  if (opt.use_double_tail && r_max <= 1000) {
    A_hi = 1;
    for (long r = 1; r <= r_max; ++r) {
      double target = std::max(log_eps, log_tail_bound(k, D, r, A, opt.raw)) + 9 * std::log(10.0);
      long c = choose_cutoff(k, D, r, opt.raw, target, A);
      c = std::max(c, static_cast<long>(std::ceil(M_PI * r * sqrtD / 30.0)));
      A_hi = std::max(A_hi, c);
    }
    A_hi = std::min(A_hi, A);
  }

  ResidueTable table(D, A);
  Real pi = real_pi();
  Real sD = mp::sqrt(Real(-D));
  Real nu = Real(k) - Real(0.5);
  std::vector<Real> sums(static_cast<size_t>(r_max) + 1, Real(0));
  std::vector<Real> xr(static_cast<size_t>(r_max) + 1);
  for (long r = 1; r <= r_max; ++r) xr[static_cast<size_t>(r)] = pi * Real(r) * sD;

  for (long a = 1; a <= A_hi; ++a) {
    const auto& roots = table.roots(a);
    if (roots.empty()) continue;
    Real ra = Real(a);
    Real inv_sqrt_a = 1 / mp::sqrt(ra);
    for (long r = 1; r <= r_max; ++r) {
      Real S = 0;
      for (long b : roots) {
        long long m = static_cast<long long>((static_cast<__int128>(r) * b) % (2LL * a));
        S += mp::cos(pi * Real(m) / ra);
      }
      if (mp::abs(S) < mp::pow(Real(10), -work.digits)) continue;
      sums[static_cast<size_t>(r)] += inv_sqrt_a * S * bessel_I_half(k, xr[static_cast<size_t>(r)] / ra, work);
    }
  }

  // double segment: sum a^-k S_a(r) I~(x_r/a), with I_nu(y) = (y/2)^nu I~(y)
  std::vector<double> dsum(static_cast<size_t>(r_max) + 1, 0.0), dcomp(dsum.size(), 0.0);
  if (A_hi < A) {
    const auto& K = simd::active_kernels();
    constexpr long kBlock = 512;
    std::vector<double> c1, cosm, xs, Itil, Sa;
    std::vector<long> owner;
    for (long a0 = A_hi + 1; a0 <= A; a0 += kBlock) {
      long a1 = std::min(A, a0 + kBlock - 1);
      c1.clear();
      owner.clear();
      for (long a = a0; a <= a1; ++a)
        for (long b : table.roots(a)) {
          c1.push_back(std::cos(M_PI * static_cast<double>(b) / static_cast<double>(a)));
          owner.push_back(a);
        }
      size_t n = c1.size();
      if (n == 0) continue;
      cosm.assign(n * static_cast<size_t>(r_max + 1), 0.0);
      K.cos_multiples(c1.data(), n, static_cast<int>(r_max), cosm.data());
      size_t na = static_cast<size_t>(a1 - a0 + 1);
      xs.resize(na);
      Itil.resize(na);
      Sa.resize(na);
      for (long r = 1; r <= r_max; ++r) {
        std::fill(Sa.begin(), Sa.end(), 0.0);
        const double* row = cosm.data() + static_cast<size_t>(r) * n;
        for (size_t i = 0; i < n; ++i) Sa[static_cast<size_t>(owner[i] - a0)] += row[i];
        double x = M_PI * r * sqrtD;
        for (size_t i = 0; i < na; ++i) xs[i] = x / static_cast<double>(a0 + static_cast<long>(i));
        K.bessel_reduced(k, xs.data(), Itil.data(), na);
        double& s = dsum[static_cast<size_t>(r)];
        double& c = dcomp[static_cast<size_t>(r)];
        for (size_t i = 0; i < na; ++i) {
          if (Sa[i] == 0) continue;
          double term = std::pow(static_cast<double>(a0 + static_cast<long>(i)), -k) * Sa[i] * Itil[i];
          double yk = term - c;  // Kahan summation
          double t = s + yk;
          c = (t - s) - yk;
          s = t;
        }
      }
    }
  }

  for (long r = 1; r <= r_max; ++r) {
    FourierCoefficient fc;
    fc.r = r;
    Real rr = Real(r);
    Real pref = mp::pow(Real(2), Real(k) + Real(0.5)) * mp::pow(pi, k + 1) * mp::pow(rr, nu) /
                (mp::pow(Real(-D), Real(k) / 2 - Real(0.25)) * mp::tgamma(Real(k)));
    if (!opt.raw) pref /= mp::pow(pi, k);
    if (k % 2) pref = -pref;  // Q(it - b/2a) = -a(t^2 - |D|/4a^2)
    Real total = sums[static_cast<size_t>(r)];
    if (A_hi < A) total += Real(dsum[static_cast<size_t>(r)]) * mp::pow(xr[static_cast<size_t>(r)] / 2, nu);
    fc.value = pref * total;
    fc.tail_bound = mp::exp(Real(log_tail_bound(k, D, r, A, opt.raw)));
    fc.round_bound = mp::pow(Real(10), -prec.digits);
    if (A_hi < A) fc.round_bound += Real(1e-9) * mp::exp(Real(log_tail_bound(k, D, r, A_hi, opt.raw)));
    fc.a_max = A;
    fc.a_high = A_hi;
    if (opt.require_certified && fc.error() > mp::pow(Real(10), -prec.digits) * 2)
      throw PrecisionError("fourier_coeff: tail bound " + to_decimal(fc.error(), 3) + " exceeds 10^-" +
                           std::to_string(prec.digits) + " with a_max = " + std::to_string(A));
    out.push_back(std::move(fc));
  }
  return out;
}

FourierCoefficient fourier_coeff(int k, long long D, long r, Precision prec, const FourierOptions& opt) {
  if (r <= 0) {
    PrecisionScope scope(prec);
    FourierCoefficient fc;
    fc.r = r;
    fc.value = 0;
    fc.tail_bound = 0;
    fc.round_bound = 0;
    return fc;
  }
  // Compute the single row r with the shared machinery by asking for rows
  // 1..r but only the last matters; cheap since r is small in practice.
  auto all = fourier_coeffs(k, D, r, prec, opt);
  return all.back();
}

// ---------------------------------------------------------------------------
// Direct summation

namespace {

// d^n/dt^n cot t = P_n(cot t): P_0 = x, P_{n+1} = -(1 + x^2) P_n'
std::vector<std::vector<mpz_class>> cot_polys(int n_max) {
  std::vector<std::vector<mpz_class>> P;
  P.push_back({0, 1});
  for (int n = 0; n < n_max; ++n) {
    const auto& p = P.back();
    std::vector<mpz_class> d(p.size() > 1 ? p.size() - 1 : 1, 0);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
    std::vector<mpz_class> q(d.size() + 2, 0);
    for (size_t i = 0; i < d.size(); ++i) {
      q[i] -= d[i];
      q[i + 2] -= d[i];
    }
    while (q.size() > 1 && q.back() == 0) q.pop_back();
    P.push_back(q);
  }
  return P;
}

Complex cot_pi(const Complex& w) {
  // cot(pi w) = i (e + 1)/(e - 1), e = exp(2 pi i w), taken on the side where |e| <= 1
  if (w.im >= 0) {
    Complex e = q_of(w);
    return Complex::i() * (e + Complex(1)) / (e - Complex(1));
  }
  Complex e = q_of(-w);
  return -(Complex::i() * (e + Complex(1)) / (e - Complex(1)));
}

struct PerAEngine {
  int k;
  long long D;
  std::vector<std::vector<Complex>> P;  // cot polynomials as Complex coefficients
  std::vector<Complex> psi_scale;       // (-1)^{j-1} pi^j / (j-1)!, j = 1..k
  Real sD;

  PerAEngine(int k_, long long D_) : k(k_), D(D_) {
    auto Pz = cot_polys(k);
    for (const auto& p : Pz) {
      std::vector<Complex> c;
      for (const auto& x : p) c.emplace_back(to_real(x));
      P.push_back(std::move(c));
    }
    Real pi = real_pi();
    psi_scale.resize(static_cast<size_t>(k) + 1);
    Real fact = 1;
    for (int j = 1; j <= k; ++j) {
      if (j > 1) fact *= (j - 1);
      Real v = mp::pow(pi, j) / fact;
      if ((j - 1) % 2) v = -v;
      psi_scale[static_cast<size_t>(j)] = Complex(v);
    }
    sD = mp::sqrt(Real(-D));
  }

  // psi_j(w) = sum_n (w + n)^-j for j = 1..k
  void psi(const Complex& w, std::vector<Complex>& out) const {
    Complex c = cot_pi(w);
    out.assign(static_cast<size_t>(k) + 1, Complex(0));
    for (int j = 1; j <= k; ++j) {
      const auto& p = P[static_cast<size_t>(j - 1)];
      Complex acc(0);
      for (size_t i = p.size(); i-- > 0;) {
        acc *= c;
        acc += p[i];
      }
      out[static_cast<size_t>(j)] = acc * psi_scale[static_cast<size_t>(j)];
    }
  }

  // a^-k sum over b = b0 + 2an of ((z + b/2a)^2 + eta^2)^-k, summed over the given roots
  Complex term(long a, const std::vector<long>& roots, const Complex& z) const {
    Real ra = Real(a);
    Real eta = sD / (2 * ra);
    // A_j = (-1)^{k-j} C(2k-j-1, k-1) (2 i eta)^{j-2k}, B_j = (-1)^j A_j
    std::vector<Complex> Aj(static_cast<size_t>(k) + 1);
    Complex two_i_eta(Real(0), 2 * eta);
    for (int j = 1; j <= k; ++j) {
      mpz_class bin;
      mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(2 * k - j - 1), static_cast<unsigned long>(k - 1));
      Complex v = pow(two_i_eta, j - 2 * k) * to_real(bin);
      if ((k - j) % 2) v = -v;
      Aj[static_cast<size_t>(j)] = v;
    }
    Complex total(0);
    std::vector<Complex> p1, p2;
    for (long b0 : roots) {
      Complex u = z + Complex(Real(b0) / (2 * ra));
      psi(u - Complex(Real(0), eta), p1);
      psi(u + Complex(Real(0), eta), p2);
      Complex g(0);
      for (int j = 1; j <= k; ++j) {
        Complex s = p1[static_cast<size_t>(j)];
        if (j % 2) s -= p2[static_cast<size_t>(j)];
        else s += p2[static_cast<size_t>(j)];
        g += Aj[static_cast<size_t>(j)] * s;
      }
      total += g;
    }
    return total * mp::pow(ra, -k);
  }
};

int guard_digits(int k, long a_max) {
  return static_cast<int>(std::ceil(2 * k * std::log10(static_cast<double>(std::max<long>(a_max, 2))))) + 10;
}

// reduce z into the standard fundamental domain
Complex to_fundamental(Complex z) {
  for (int it = 0; it < 10000; ++it) {
    Real n = mp::round(z.re);
    z.re -= n;
    if (z.norm() < Real(1) - Real(1e-30)) {
      z = Complex(-1) / z;
      continue;
    }
    break;
  }
  return z;
}

Complex sum_over_a(const PerAEngine& eng, const ResidueTable& table, const std::optional<BQF>& cls, const Complex& z,
                   long a_lo, long a_hi) {
  Complex s(0);
  std::vector<long> keep;
  for (long a = a_lo; a <= a_hi; ++a) {
    const auto& roots = table.roots(a);
    if (roots.empty()) continue;
    if (!cls) {
      s += eng.term(a, roots, z);
      continue;
    }
    keep.clear();
    for (long b0 : roots) {
      long long c0 = (static_cast<long long>(b0) * b0 - eng.D) / (4LL * a);
      if (reduce_form(BQF{a, b0, c0}).first == *cls) keep.push_back(b0);
    }
    if (!keep.empty()) s += eng.term(a, keep, z);
  }
  return s;
}

std::optional<Real> fourier_tail_at(int k, long long D, const Complex& z, long A) {
  double y = static_cast<double>(z.im);
  double sD = std::sqrt(static_cast<double>(-D));
  if (y <= sD / 2 * 1.001) return std::nullopt;
  double log_q = -2 * M_PI * y;
  double total = 0;
  for (long r = 1; r < 100000; ++r) {
    double t = std::exp(log_tail_bound(k, D, r, A, false) + r * log_q);
    total += t;
    if (r > 5 && t < 1e-40 * total) break;
    if (!std::isfinite(total)) return std::nullopt;
  }
  return Real(total);
}

DirectResult direct_impl(const FkdSpec& spec, const Complex& z, const Real& tol, Precision prec,
                         const DirectOptions& opt) {
  spec.validate();
  {
    PrecisionScope scope(Precision(30));
    Real d = pole_distance(spec.D, z, Precision(30));
    if (d < Real(opt.pole_threshold))
      throw PoleError("f_direct: z lies within " + to_decimal(d, 3) + " of a CM point of discriminant dividing " +
                      std::to_string(spec.D));
  }
  long cap = opt.a_max > 0 ? opt.a_max : opt.a_cap;
  Precision work = prec.with_extra(guard_digits(spec.k, cap));
  PrecisionScope scope(work);
  Complex zz(Real(z.re), Real(z.im));
  PerAEngine eng(spec.k, spec.D);
  ResidueTable table(spec.D, cap);
  Real pik = mp::pow(real_pi(), spec.k);
  Real ratio = mp::pow(Real(2), spec.k - 1) - 1;

  DirectResult res;
  if (opt.a_max > 0) {
    long half = std::max<long>(1, opt.a_max / 2);
    Complex s_half = sum_over_a(eng, table, spec.cls, zz, 1, half);
    Complex s = s_half + sum_over_a(eng, table, spec.cls, zz, half + 1, opt.a_max);
    res.value = s / pik;
    res.tail_estimate = (s - s_half).abs() / pik / ratio;
    res.a_max = opt.a_max;
  } else {
    long A = std::min(opt.a_start, cap);
    Complex s = sum_over_a(eng, table, spec.cls, zz, 1, A);
    for (;;) {
      long A2 = std::min(2 * A, cap);
      if (A2 == A) throw PrecisionError("f_direct: tolerance not reached with a_max = " + std::to_string(cap));
      Complex s2 = s + sum_over_a(eng, table, spec.cls, zz, A + 1, A2);
      Real est = (s2 - s).abs() / pik / ratio;
      s = s2;
      A = A2;
      if (est < tol) {
        res.value = s / pik;
        res.tail_estimate = est;
        res.a_max = A;
        break;
      }
    }
  }
  if (!spec.cls) {
    auto b = fourier_tail_at(spec.k, spec.D, z, res.a_max);
    if (b) res.tail_bound = *b;
  }
  return res;
}

}  // namespace

Real pole_distance(long long D, const Complex& z, Precision prec) {
  PrecisionScope scope(prec);
  Complex w = to_fundamental(z);
  Real best = std::numeric_limits<double>::max();
  for (const auto& f : class_representatives(D, false)) {
    Complex p = cm_point(f, prec).value;
    const Complex cand[] = {p,
                            p + Complex(1),
                            p - Complex(1),
                            Complex(-1) / p,
                            Complex(-1) / p + Complex(1),
                            Complex(-1) / p - Complex(1),
                            Complex(-1) / (p + Complex(1)),
                            Complex(-1) / (p - Complex(1))};
    for (const auto& c : cand) best = rmin(best, (w - c).abs());
  }
  return best;
}

Complex f_direct_range(const FkdSpec& spec, const Complex& z, long a_lo, long a_hi, Precision prec) {
  spec.validate();
  PrecisionScope scope(prec.with_extra(guard_digits(spec.k, a_hi)));
  Complex zz(Real(z.re), Real(z.im));
  PerAEngine eng(spec.k, spec.D);
  ResidueTable table(spec.D, a_hi);
  return sum_over_a(eng, table, spec.cls, zz, a_lo, a_hi);
}

DirectResult f_direct(const FkdSpec& spec, const Complex& z, const Real& tol, Precision prec,
                      const DirectOptions& opt) {
  return direct_impl(spec, z, tol, prec, opt);
}

DirectResult f_class_direct(int k, const BQF& cls, const Complex& z, const Real& tol, Precision prec,
                            const DirectOptions& opt) {
  FkdSpec spec{k, cls.disc(), cls};
  return direct_impl(spec, z, tol, prec, opt);
}

}  // namespace meroform
