#include "meroform/quadforms.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace meroform {

bool BQF::is_reduced() const {
  if (a <= 0) return false;
  long long ab = b < 0 ? -b : b;
  if (!(ab <= a && a <= c)) return false;
  if ((ab == a || a == c) && b < 0) return false;
  return true;
}

bool BQF::is_primitive() const { return std::gcd(std::gcd(a, b < 0 ? -b : b), c) == 1; }

std::string BQF::to_string() const { return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c); }

BQF act(const BQF& f, const SL2Z& g) {
  BQF r;
  r.a = f.a * g.p * g.p + f.b * g.p * g.r + f.c * g.r * g.r;
  r.b = 2 * f.a * g.p * g.q + f.b * (g.p * g.s + g.q * g.r) + 2 * f.c * g.r * g.s;
  r.c = f.a * g.q * g.q + f.b * g.q * g.s + f.c * g.s * g.s;
  return r;
}

namespace {

SL2Z mul(const SL2Z& x, const SL2Z& y) {
  return {x.p * y.p + x.q * y.r, x.p * y.q + x.q * y.s, x.r * y.p + x.s * y.r, x.r * y.q + x.s * y.s};
}

long long floor_div(long long n, long long d) {
  long long q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) --q;
  return q;
}

}  // namespace

std::pair<BQF, SL2Z> reduce_form(const BQF& f) {
  if (f.disc() >= 0) throw QuadFormError("reduce_form: discriminant must be negative");
  if (f.a <= 0) throw QuadFormError("reduce_form: leading coefficient must be positive");
  BQF g = f;
  SL2Z m;
  const SL2Z S{0, -1, 1, 0};
  for (;;) {
    // translate so that -a < b <= a
    long long t = floor_div(g.a - g.b, 2 * g.a);
    if (t != 0) {
      SL2Z T{1, t, 0, 1};
      g = act(g, T);
      m = mul(m, T);
    }
    if (g.c < g.a) {
      g = act(g, S);
      m = mul(m, S);
      continue;
    }
    break;
  }
  if (g.a == g.c && g.b < 0) {
    g = act(g, S);
    m = mul(m, S);
  }
  return {g, m};
}

void check_discriminant(long long D) {
  if (D >= 0) throw QuadFormError("discriminant must be negative, got " + std::to_string(D));
  long long r = ((D % 4) + 4) % 4;
  if (r != 0 && r != 1) throw QuadFormError("discriminant must be 0 or 1 mod 4, got " + std::to_string(D));
}

namespace {

bool squarefree(long long n) {
  if (n < 0) n = -n;
  for (long long p = 2; p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

}  // namespace

bool is_fundamental(long long D) {
  check_discriminant(D);
  long long r = ((D % 4) + 4) % 4;
  if (r == 1) return squarefree(D);
  long long m = D / 4;
  long long mr = ((m % 4) + 4) % 4;
  return (mr == 2 || mr == 3) && squarefree(m);
}

std::vector<BQF> class_representatives(long long D, bool primitive_only) {
  check_discriminant(D);
  std::vector<BQF> out;
  for (long long a = 1; 3 * a * a <= -D; ++a)
    for (long long b = -a + 1; b <= a; ++b) {
      long long num = b * b - D;
      if (num % (4 * a)) continue;
      BQF f{a, b, num / (4 * a)};
      if (!f.is_reduced()) continue;
      if (primitive_only && !f.is_primitive()) continue;
      out.push_back(f);
    }
  std::sort(out.begin(), out.end(), [](const BQF& x, const BQF& y) { return x.a != y.a ? x.a < y.a : x.b > y.b; });
  return out;
}

long class_number(long long D) { return static_cast<long>(class_representatives(D, true).size()); }

CMPoint cm_point(const BQF& f, Precision prec) {
  if (f.disc() >= 0 || f.a <= 0) throw QuadFormError("cm_point: need a > 0 and negative discriminant");
  PrecisionScope scope(prec);
  Real two_a = Real(2 * f.a);
  Real re = Real(-f.b) / two_a;
  Real im = boost::multiprecision::sqrt(Real(-f.disc())) / two_a;
  return CMPoint{f, Complex(re, im)};
}

// ---------------------------------------------------------------------------
// Square roots of D modulo 4a

namespace {

long long mod(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

long long mulmod(long long x, long long y, long long m) {
  return static_cast<long long>(static_cast<__int128>(x) * y % m);
}

long long powmod(long long b, long long e, long long m) {
  long long r = 1 % m;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Square roots of n mod an odd prime p (n a nonzero residue); empty if none.
std::vector<long long> sqrt_mod_prime(long long n, long long p) {
  n = mod(n, p);
  if (n == 0) return {0};
  if (powmod(n, (p - 1) / 2, p) != 1) return {};
  long long q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  long long z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  long long m = s, c = powmod(z, q, p), t = powmod(n, q, p), r = powmod(n, (q + 1) / 2, p);
  while (t != 1) {
    long long i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    long long b = c;
    for (long long j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  if (r == p - r) return {r};
  return {std::min(r, p - r), std::max(r, p - r)};
}

// All x mod p^e with x^2 = D mod p^e.
std::vector<long long> sqrt_mod_prime_power(long long D, long long p, int e) {
  std::vector<long long> sols;
  long long pk = p;
  if (p == 2) {
    for (long long x = 0; x < 2; ++x)
      if (mod(x * x - D, 2) == 0) sols.push_back(x);
  } else {
    sols = sqrt_mod_prime(D, p);
  }
  for (int k = 1; k < e; ++k) {
    long long next = pk * p;
    std::vector<long long> lifted;
    for (long long x : sols)
      for (long long t = 0; t < p; ++t) {
        long long y = x + t * pk;
        if (mod(mulmod(y, y, next) - D, next) == 0) lifted.push_back(y);
      }
    sols = std::move(lifted);
    pk = next;
  }
  return sols;
}

}  // namespace

ResidueTable::ResidueTable(long long D, long a_max) : D_(D), a_max_(a_max), roots_(static_cast<size_t>(a_max) + 1) {
  check_discriminant(D);
  long long n_max = 4LL * a_max;
  std::vector<int> spf(static_cast<size_t>(n_max) + 1, 0);
  for (long long i = 2; i <= n_max; ++i) {
    if (spf[static_cast<size_t>(i)] != 0) continue;
    for (long long j = i; j <= n_max; j += i)
      if (spf[static_cast<size_t>(j)] == 0) spf[static_cast<size_t>(j)] = static_cast<int>(i);
  }
  for (long a = 1; a <= a_max; ++a) {
    long long n = 4LL * a;
    // CRT over the prime-power factorisation of 4a
    std::vector<long long> sols{0};
    long long modulus = 1;
    long long rest = n;
    bool dead = false;
    while (rest > 1 && !dead) {
      long long p = spf[static_cast<size_t>(rest)];
      int e = 0;
      long long pe = 1;
      while (rest % p == 0) {
        rest /= p;
        ++e;
        pe *= p;
      }
      auto local = sqrt_mod_prime_power(D, p, e);
      if (local.empty()) {
        dead = true;
        break;
      }
      // combine x = s mod modulus, x = t mod pe
      mpz_class inv;
      mpz_class mm(static_cast<long>(modulus)), pp(static_cast<long>(pe));
      mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), pp.get_mpz_t());
      long long inv_m = inv.get_si();
      std::vector<long long> next;
      for (long long s : sols)
        for (long long t : local) {
          long long k = mulmod(mod(t - s, pe), inv_m, pe);
          next.push_back(s + modulus * k);
        }
      sols = std::move(next);
      modulus *= pe;
    }
    auto& out = roots_[static_cast<size_t>(a)];
    if (dead) continue;
    long long two_a = 2LL * a;
    for (long long s : sols) out.push_back(static_cast<long>(mod(s, two_a)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.shrink_to_fit();
  }
}

void enumerate_forms(long long D, long a_max, const std::function<std::pair<long long, long long>(long)>& b_window,
                     const std::function<void(const BQF&)>& visit) {
  ResidueTable table(D, a_max);
  for (long a = 1; a <= a_max; ++a) {
    auto [lo, hi] = b_window(a);
    long long two_a = 2LL * a;
    for (long r : table.roots(a)) {
      long long b = r + two_a * floor_div(lo - r + two_a - 1, two_a);
      for (; b <= hi; b += two_a) visit(BQF{a, b, (b * b - D) / (4LL * a)});
    }
  }
}

int unit_w(long long D) {
  if (D == -3) return 3;
  if (D == -4) return 2;
  return 1;
}

int kronecker(long long D, long long n) {
  if (n < 1) throw QuadFormError("kronecker: n must be positive");
  mpz_class d(static_cast<long>(D)), m(static_cast<long>(n));
  return mpz_kronecker(d.get_mpz_t(), m.get_mpz_t());
}

std::vector<long long> square_divisors(long long D) {
  std::vector<long long> out;
  for (long long f = 1; f * f <= -D; ++f) {
    if (D % (f * f)) continue;
    long long d = D / (f * f);
    long long r = ((d % 4) + 4) % 4;
    if (r == 0 || r == 1) out.push_back(f);
  }
  return out;
}

}  // namespace meroform
