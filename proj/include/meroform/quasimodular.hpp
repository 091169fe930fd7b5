#pragma once

// Polynomials in E2*, E4, E6 and the Maass-Shimura derivation on them:
//   d E2* = (E2*^2 - E4)/12,  d E4 = (E2* E4 - E6)/3,  d E6 = (E2* E6 - E4^2)/2.

#include "meroform/bigfloat.hpp"
#include "meroform/form_expr.hpp"

#include <gmpxx.h>

#include <array>
#include <map>
#include <string>

namespace meroform {

class QuasiExpr {
 public:
  using Exps = std::array<int, 3>;  ///< powers of E2*, E4, E6

  QuasiExpr() = default;
  static QuasiExpr constant(const mpq_class& c);
  static QuasiExpr e2star();
  static QuasiExpr e4();
  static QuasiExpr e6();
  static QuasiExpr delta();  ///< (E4^3 - E6^2)/1728
  /// E4^a E6^b Delta^c with nonnegative exponents.
  static QuasiExpr from_monomial(const Monomial& m);

  const std::map<Exps, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Common weight; throws if the polynomial is not homogeneous.
  int weight() const;

  QuasiExpr& operator+=(const QuasiExpr& o);
  QuasiExpr& operator*=(const mpq_class& c);
  friend QuasiExpr operator+(QuasiExpr a, const QuasiExpr& b) { return a += b; }
  friend QuasiExpr operator-(QuasiExpr a, const QuasiExpr& b) { return a += b * mpq_class(-1); }
  friend QuasiExpr operator*(QuasiExpr a, const mpq_class& c) { return a *= c; }
  friend QuasiExpr operator*(const QuasiExpr& a, const QuasiExpr& b);
  friend bool operator==(const QuasiExpr& a, const QuasiExpr& b) { return a.terms_ == b.terms_; }
  QuasiExpr pow(int n) const;

  /// One application of the Maass-Shimura operator (weight + 2).
  QuasiExpr derivative() const;

  Complex evaluate(const Complex& e2s, const Complex& e4, const Complex& e6) const;
  std::string to_string() const;

 private:
  std::map<Exps, mpq_class> terms_;
};

/// d^0 f, ..., d^n f.
std::vector<QuasiExpr> derivative_tower(const QuasiExpr& f, int n);

}  // namespace meroform
