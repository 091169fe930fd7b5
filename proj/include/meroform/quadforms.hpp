#pragma once

// Integral binary quadratic forms of negative discriminant.

#include "meroform/bigfloat.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace meroform {

class QuadFormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// a x^2 + b xy + c y^2.
struct BQF {
  long long a = 0;
  long long b = 0;
  long long c = 0;

  long long disc() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  bool is_primitive() const;
  std::string to_string() const;  ///< "a,b,c"
  friend bool operator==(const BQF&, const BQF&) = default;
};

/// Integer matrix [[p, q], [r, s]] with ps - qr = 1.
struct SL2Z {
  long long p = 1, q = 0, r = 0, s = 1;
  friend bool operator==(const SL2Z&, const SL2Z&) = default;
};

/// Acts by f|g (x, y) = f(p x + q y, r x + s y).
BQF act(const BQF& f, const SL2Z& g);

/// Reduced form and the matrix g with act(f, g) == reduced.
std::pair<BQF, SL2Z> reduce_form(const BQF& f);

/// Checks D < 0 and D = 0, 1 mod 4; throws QuadFormError otherwise.
void check_discriminant(long long D);
bool is_fundamental(long long D);

/// All reduced forms of discriminant D, by ascending a, then descending b.
std::vector<BQF> class_representatives(long long D, bool primitive_only);
long class_number(long long D);

/// Upper-half-plane root of a z^2 + b z + c.
struct CMPoint {
  BQF form;
  Complex value;  ///< (-b + i sqrt|D|) / (2a) at the precision it was built with
  Real y() const { return value.im; }
};

CMPoint cm_point(const BQF& f, Precision prec);

/// Square-root residues b in [0, 2a) with b^2 = D mod 4a, for each a in [1, a_max].
/// Uses a smallest-prime-factor sieve with Hensel lifting and CRT.
class ResidueTable {
 public:
  ResidueTable(long long D, long a_max);
  long long D() const { return D_; }
  long a_max() const { return a_max_; }
  /// Sorted residues for modulus 2a (b taken mod 2a).
  const std::vector<long>& roots(long a) const { return roots_.at(static_cast<size_t>(a)); }

 private:
  long long D_;
  long a_max_;
  std::vector<std::vector<long>> roots_;
};

/// Calls visit(BQF) for every form with 1 <= a <= a_max and b in [b_lo(a), b_hi(a)].
void enumerate_forms(long long D, long a_max, const std::function<std::pair<long long, long long>(long)>& b_window,
                     const std::function<void(const BQF&)>& visit);

int unit_w(long long D);
/// Kronecker symbol (D | n) for n >= 1.
int kronecker(long long D, long long n);

/// Square factors f >= 1 with f^2 | D and D/f^2 a discriminant, ascending.
std::vector<long long> square_divisors(long long D);

}  // namespace meroform
