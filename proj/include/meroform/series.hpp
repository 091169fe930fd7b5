#pragma once

// Truncated Laurent q-expansions and the level-one modular forms built from them.

#include "meroform/bigfloat.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace meroform {

class SeriesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// sum_{e = start}^{trunc-1} c_e q^e + O(q^trunc). Coefficients below `start`
/// are exactly zero; nothing is known at or beyond `trunc`.
template <class C>
class Series {
 public:
  Series() = default;
  /// The zero series known up to O(q^trunc).
  Series(int start, int trunc) : start_(start), trunc_(std::max(start, trunc)),
                                 c_(static_cast<size_t>(trunc_ - start_), C(0)) {}
  Series(int start, std::vector<C> coeffs)
      : start_(start), trunc_(start + static_cast<int>(coeffs.size())), c_(std::move(coeffs)) {}

  int start() const { return start_; }
  int trunc_order() const { return trunc_; }

  /// Smallest exponent with a nonzero coefficient, or trunc_order() when the
  /// series vanishes to its known order.
  int valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) return start_ + static_cast<int>(i);
    return trunc_;
  }
  bool is_zero() const { return valuation() == trunc_; }

  C coeff(int e) const {
    if (e >= trunc_) throw SeriesError("coefficient q^" + std::to_string(e) + " lies beyond truncation order " +
                                       std::to_string(trunc_));
    if (e < start_) return C(0);
    return c_[static_cast<size_t>(e - start_)];
  }
  C& at(int e) {
    if (e < start_ || e >= trunc_) throw SeriesError("exponent outside stored range");
    return c_[static_cast<size_t>(e - start_)];
  }
  const std::vector<C>& raw() const { return c_; }

  /// Drops everything at or beyond q^t (t may not exceed the current order).
  Series truncated(int t) const {
    if (t > trunc_) throw SeriesError("cannot extend a series beyond its truncation order");
    Series r(std::min(start_, t), t);
    for (int e = start_; e < t; ++e) r.at(e) = coeff(e);
    return r;
  }

  /// Multiplies by q^s.
  Series shifted(int s) const {
    Series r = *this;
    r.start_ += s;
    r.trunc_ += s;
    return r;
  }

  Series& operator*=(const C& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Series operator*(Series a, const C& s) { return a *= s; }
  friend Series operator*(const C& s, Series a) { return a *= s; }

  friend Series operator+(const Series& a, const Series& b) { return combine(a, b, false); }
  friend Series operator-(const Series& a, const Series& b) { return combine(a, b, true); }
  Series operator-() const {
    Series r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Series operator*(const Series& a, const Series& b) {
    int va = a.valuation(), vb = b.valuation();
    int t = std::min(a.trunc_ + vb, b.trunc_ + va);
    int s = va + vb;
    if (va == a.trunc_ || vb == b.trunc_) return Series(std::min(s, t), t);
    Series r(s, t);
    for (int i = va; i < a.trunc_; ++i) {
      const C& x = a.c_[static_cast<size_t>(i - a.start_)];
      if (x == 0) continue;
      for (int j = vb; j < b.trunc_ && i + j < t; ++j) {
        const C& y = b.c_[static_cast<size_t>(j - b.start_)];
        if (y == 0) continue;
        r.c_[static_cast<size_t>(i + j - s)] += x * y;
      }
    }
    return r;
  }

  /// Multiplicative inverse; the leading coefficient must be nonzero.
  Series inverse() const {
    int v = valuation();
    if (v == trunc_) throw SeriesError("cannot invert a series that vanishes to its truncation order");
    int len = trunc_ - v;
    std::vector<C> u(static_cast<size_t>(len));
    for (int i = 0; i < len; ++i) u[static_cast<size_t>(i)] = coeff(v + i);
    std::vector<C> g(static_cast<size_t>(len), C(0));
    C inv0 = C(1) / u[0];
    g[0] = inv0;
    for (int n = 1; n < len; ++n) {
      C acc(0);
      for (int i = 1; i <= n; ++i)
        if (u[static_cast<size_t>(i)] != 0) acc += u[static_cast<size_t>(i)] * g[static_cast<size_t>(n - i)];
      g[static_cast<size_t>(n)] = -acc * inv0;
    }
    return Series(-v, std::move(g));
  }

  Series pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    Series base = *this;
    std::optional<Series> acc;
    while (n > 0) {
      if (n & 1) acc = acc ? *acc * base : base;
      n >>= 1;
      if (n) base = base * base;
    }
    if (!acc) {
      // f^0 = 1, known to the relative precision of f.
      int rel = trunc_ - valuation();
      Series one(0, rel);
      if (rel > 0) one.at(0) = C(1);
      return one;
    }
    return *acc;
  }

  friend bool operator==(const Series& a, const Series& b) {
    if (a.trunc_ != b.trunc_) return false;
    int lo = std::min(a.start_, b.start_);
    for (int e = lo; e < a.trunc_; ++e)
      if (a.coeff(e) != b.coeff(e)) return false;
    return true;
  }

 private:
  static Series combine(const Series& a, const Series& b, bool subtract) {
    int t = std::min(a.trunc_, b.trunc_);
    int s = std::min({a.start_, b.start_, t});
    Series r(s, t);
    for (int e = s; e < t; ++e) {
      C x = a.coeff(e);
      if (subtract) x -= b.coeff(e); else x += b.coeff(e);
      r.c_[static_cast<size_t>(e - s)] = std::move(x);
    }
    return r;
  }

  int start_ = 0;
  int trunc_ = 0;
  std::vector<C> c_;
};

using QSeries = Series<mpq_class>;
using RSeries = Series<Real>;

RSeries to_real_series(const QSeries& f);

// ---------------------------------------------------------------------------
// Canonical forms

enum class Canonical { E2, E4, E6, Delta, J };

std::optional<Canonical> parse_canonical(const std::string& name);
std::string canonical_name(Canonical c);

/// `n_terms` coefficients starting at the form's leading exponent
/// (so j gets exponents -1 .. n_terms-2 and Delta gets 1 .. n_terms).
QSeries canonical_form(Canonical name, int n_terms);

/// sigma_k(n) for n >= 1.
mpz_class divisor_sigma(long k, long n);

/// Normalised Eisenstein series E_weight (weight in {2,4,6,8,10,14}) to trunc.
QSeries eisenstein(int weight, int trunc);

// ---------------------------------------------------------------------------
// Spaces of level-one forms

/// weight = 4*delta + 6*epsilon + 12*M with delta in {0,1,2}, epsilon in {0,1}.
struct WeightTriple {
  int delta = 0;
  int epsilon = 0;
  int M = 0;
  friend bool operator==(const WeightTriple&, const WeightTriple&) = default;
};

WeightTriple weight_triple(int weight);

int dim_modular(int weight);
int dim_cusp(int weight);

/// Echelon basis of S_weight: the i-th form is q^{i+1} + O(q^{dim+1}).
std::vector<QSeries> cusp_basis(int weight, int n_terms);
/// Echelon basis of M_weight: the i-th form is q^i + O(q^dim).
std::vector<QSeries> modular_basis(int weight, int n_terms);

/// Hecke operator T_m of the given weight on a series holomorphic at infinity:
/// n-th coefficient sum_{a | (n,m)} a^{weight-1} c_{nm/a^2}.
template <class C>
Series<C> hecke_on_series(const Series<C>& f, int weight, long m) {
  if (m < 1) throw SeriesError("Hecke index must be positive");
  if (f.valuation() < 0 && f.valuation() < f.trunc_order())
    throw SeriesError("Hecke action on a series with a principal part is not supported");
  int t = f.trunc_order();
  int out_t = t <= 0 ? 0 : static_cast<int>((t - 1) / m + 1);
  Series<C> r(0, out_t);
  for (int n = 0; n < out_t; ++n) {
    C acc(0);
    long g = n == 0 ? m : std::gcd(static_cast<long>(n), m);
    for (long a = 1; a <= g; ++a) {
      if (g % a) continue;
      long idx = static_cast<long>(n) * m / (a * a);
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(weight - 1));
      C term = f.coeff(static_cast<int>(idx));
      if constexpr (std::is_same_v<C, mpq_class>) {
        acc += term * mpq_class(p);
      } else {
        acc += term * to_real(p);
      }
    }
    r.at(n) = acc;
  }
  return r;
}

/// Result of testing sum lambda_n c_n = 0 against every form of an echelon
/// basis of S_{2k}.
struct Obstruction {
  bool pass = true;
  std::vector<mpq_class> pairings;  ///< one per basis element
};

/// lambda[i] is the coefficient lambda_{i+1}.
Obstruction borcherds_obstruction(int k, const std::vector<long long>& lambda);

struct NoExistence {
  std::vector<mpq_class> pairings;
};

/// g = sum lambda_n q^{-n} + O(1) in M^!_weight, when it exists.
std::variant<QSeries, NoExistence> weakly_holomorphic(int weight, const std::vector<long long>& lambda,
                                                      int n_terms);

// ---------------------------------------------------------------------------
// Serialisation

/// {"valuation":…, "trunc_order":…, "coeffs":[[e,"n/d"],…]} with nonzero
/// coefficients in ascending order.
std::string to_json(const QSeries& f);
QSeries qseries_from_json(const std::string& text);
std::string to_text(const QSeries& f);

}  // namespace meroform
