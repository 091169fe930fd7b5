#pragma once

// Integer-relation detection (LLL) and recognition of numbers in Q(j_A, sqrt|D|, i).

#include "meroform/bigfloat.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace meroform {

/// LLL-reduces the rows of `basis` in place (delta = 3/4, exact rational arithmetic).
void lll_reduce(std::vector<std::vector<mpz_class>>& basis);

/// Embedded basis {sqrt(s)^e * i^t : e, t in {0,1}}, s the squarefree part of |D|.
struct HBasis {
  long long D = 0;
  mpz_class j;  ///< j(z_A) when rational; degree 1
  std::vector<Complex> values;
  std::vector<std::string> labels;
};

/// The basis for a rational j-value (degree 1 class polynomial factor).
HBasis make_hbasis(long long D, const mpz_class& j_value, Precision prec);

struct HNumber {
  long long D = 0;
  std::vector<mpq_class> coords;  ///< on the HBasis the number was recognised against
  std::vector<std::string> labels;

  bool is_rational() const;
  std::string to_string() const;
  Complex embed(const HBasis& b, Precision prec) const;
};

/// Finds rational coordinates of x on the basis with numerator/denominator
/// heights up to height_bound, verified by re-embedding to 0.8*digits.
std::optional<HNumber> recognize_in_H(const Complex& x, const HBasis& basis, const mpz_class& height_bound,
                                      Precision prec);

}  // namespace meroform
