#pragma once

// Closed-form meromorphic modular forms: rational functions in E4, E6, Delta
// (and poles along E4^3 - j0*Delta) with coefficients in Q(sqrt(s)).

#include "meroform/series.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace meroform {

/// a + b*sqrt(s) with rational a, b and a fixed squarefree s >= 1.
class QuadRational {
 public:
  QuadRational() = default;
  QuadRational(mpq_class a) : a_(std::move(a)) {}  // NOLINT: implicit lift
  QuadRational(long a) : a_(a) {}                  // NOLINT: implicit lift
  QuadRational(mpq_class a, mpq_class b, long s);

  const mpq_class& rational() const { return a_; }
  const mpq_class& surd() const { return b_; }
  long base() const { return s_; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QuadRational& operator+=(const QuadRational& o);
  QuadRational& operator-=(const QuadRational& o);
  QuadRational& operator*=(const QuadRational& o);
  friend QuadRational operator+(QuadRational x, const QuadRational& y) { return x += y; }
  friend QuadRational operator-(QuadRational x, const QuadRational& y) { return x -= y; }
  friend QuadRational operator*(QuadRational x, const QuadRational& y) { return x *= y; }
  QuadRational operator-() const { return QuadRational(-a_, -b_, s_); }
  QuadRational inverse() const;
  friend bool operator==(const QuadRational& x, const QuadRational& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.s_ == y.s_);
  }

  Real to_real() const;
  std::string to_string() const;

 private:
  static long merge_base(const QuadRational& x, const QuadRational& y);
  mpq_class a_ = 0;
  mpq_class b_ = 0;
  long s_ = 1;
};

/// Series with coefficients a_n + b_n*sqrt(s).
struct SurdSeries {
  QSeries rational;
  QSeries surd;
  long base = 1;

  QuadRational coeff(int e) const { return QuadRational(rational.coeff(e), surd.coeff(e), base); }
  int trunc_order() const { return std::min(rational.trunc_order(), surd.trunc_order()); }
  RSeries to_real() const;
};

/// E4^e4 * E6^e6 * Delta^delta; exponents may be negative.
struct Monomial {
  int e4 = 0;
  int e6 = 0;
  int delta = 0;
  int weight() const { return 4 * e4 + 6 * e6 + 12 * delta; }
  auto operator<=>(const Monomial&) const = default;
};

/// (E4^3 - j0*Delta)^power in a denominator.
struct PoleFactor {
  mpz_class j0;
  int power = 0;
  bool operator==(const PoleFactor& o) const { return j0 == o.j0 && power == o.power; }
};

struct FormFraction {
  std::map<Monomial, QuadRational> numerator;
  std::vector<PoleFactor> poles;  ///< sorted by j0, distinct
};

class FormExpr {
 public:
  FormExpr() = default;

  static FormExpr constant(QuadRational c);
  static FormExpr monomial(Monomial m, QuadRational c = QuadRational(1));
  static FormExpr generator(Canonical g);  ///< E4, E6, Delta or j = E4^3/Delta
  /// E4^3 - j0*Delta.
  static FormExpr pole_form(const mpz_class& j0);

  FormExpr& operator+=(const FormExpr& o);
  FormExpr& operator*=(const QuadRational& c);
  friend FormExpr operator+(FormExpr a, const FormExpr& b) { return a += b; }
  friend FormExpr operator-(FormExpr a, const FormExpr& b) { return a += b * QuadRational(-1); }
  friend FormExpr operator*(FormExpr a, const QuadRational& c) { return a *= c; }
  friend FormExpr operator*(const FormExpr& a, const FormExpr& b);
  FormExpr pow(int n) const;

  /// Divides by Phi^power with Phi = E4 (j0 = 0), E6 (j0 = 1728), else E4^3 - j0*Delta.
  FormExpr divided_by_pole(const mpz_class& j0, int power) const;

  const std::vector<FormFraction>& fractions() const { return parts_; }
  bool is_zero() const;
  /// Common weight of every nonzero term; throws if not homogeneous.
  int weight() const;
  /// Largest sqrt base among the coefficients (1 if all rational).
  long surd_base() const;

  /// Expansion to O(q^trunc).
  SurdSeries expand(int trunc) const;

  /// Exact equality as meromorphic forms (Sturm-bound comparison of expansions).
  bool same_form(const FormExpr& o) const;

  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<FormFraction> parts_;
};

}  // namespace meroform
