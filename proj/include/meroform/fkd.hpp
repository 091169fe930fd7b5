#pragma once

// f_{k,D}(z) = pi^-k sum_{b^2-4ac=D, a>0} (a z^2 + b z + c)^-k: lattice summation,
// exponential sums, half-integer Bessel functions and the Fourier coefficients.

#include "meroform/bigfloat.hpp"
#include "meroform/quadforms.hpp"

#include <optional>
#include <vector>

namespace meroform {

struct FkdSpec {
  int k = 2;
  long long D = -3;
  std::optional<BQF> cls;  ///< restrict to one class (reduced representative)
  void validate() const;
};

// ---------------------------------------------------------------------------
// Exponential sums and Bessel functions

struct ExpSum {
  Real value;     ///< sum over b mod 2a, b^2 = D mod 4a, of cos(pi r b / a)
  long n_roots;   ///< number of such b
};
ExpSum exp_sum(long a, long long D, long r, Precision prec);

/// I_{k-1/2}(x), x > 0.
Real bessel_I_half(int k, const Real& x, Precision prec);

// ---------------------------------------------------------------------------
// Fourier coefficients

struct FourierOptions {
  long a_max = 0;          ///< 0: choose from the tail bound
  long a_cap = 1L << 15;   ///< upper limit for the automatic choice
  bool raw = false;        ///< return c_r instead of pi^-k c_r
  bool use_double_tail = true;  ///< sum negligible terms in double precision
  bool require_certified = false;  ///< throw PrecisionError if the tail exceeds 10^-digits
};

struct FourierCoefficient {
  long r = 0;
  Real value;
  Real tail_bound;   ///< certified bound on the discarded a > a_max terms
  Real round_bound;  ///< bound on the double-precision segment's rounding
  long a_max = 0;
  long a_high = 0;   ///< terms with a <= a_high used full precision
  Real error() const { return tail_bound + round_bound; }
};

/// Certified bound on sum_{a > A} of the a-terms of coefficient r.
Real fourier_tail_bound(int k, long long D, long r, long A, bool raw, Precision prec);

/// q^r coefficient of f_{k,D}; zero for r <= 0.
FourierCoefficient fourier_coeff(int k, long long D, long r, Precision prec, const FourierOptions& opt = {});
/// Coefficients for r = 1..r_max sharing one a-range (the largest needed).
std::vector<FourierCoefficient> fourier_coeffs(int k, long long D, long r_max, Precision prec,
                                               const FourierOptions& opt = {});

// ---------------------------------------------------------------------------
// Direct summation

struct DirectOptions {
  long a_max = 0;          ///< fixed a-cutoff; 0 = adaptive doubling until the tail estimate < tol
  long a_start = 64;
  long a_cap = 1L << 17;
  double pole_threshold = 1e-3;
};

struct DirectResult {
  Complex value;
  Real tail_estimate;  ///< empirical (Cauchy) estimate of the neglected a > a_max part
  std::optional<Real> tail_bound;  ///< Fourier-derived bound when Im z > sqrt|D|/2
  long a_max = 0;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Each a contributes a^-k sum_b0 sum_n ((u+n)^2 + eta^2)^-k (u = z + b0/2a,
/// eta = sqrt|D|/2a); the n-sum is done in closed form by partial fractions and
/// derivatives of cot.
DirectResult f_direct(const FkdSpec& spec, const Complex& z, const Real& tol, Precision prec,
                      const DirectOptions& opt = {});
DirectResult f_class_direct(int k, const BQF& cls, const Complex& z, const Real& tol, Precision prec,
                            const DirectOptions& opt = {});

/// Sum of the a-terms a in [a_lo, a_hi] only (without pi^-k).
Complex f_direct_range(const FkdSpec& spec, const Complex& z, long a_lo, long a_hi, Precision prec);

/// Distance from z (after reduction to the fundamental domain) to the nearest
/// CM point of discriminant D/f^2, f^2 | D.
Real pole_distance(long long D, const Complex& z, Precision prec);

}  // namespace meroform
