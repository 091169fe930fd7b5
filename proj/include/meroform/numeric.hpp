#pragma once

// Evaluation of q-series and level-one forms in the upper half plane, Maass-Shimura
// derivatives at CM points, Chowla-Selberg periods and class polynomials.

#include "meroform/bigfloat.hpp"
#include "meroform/form_expr.hpp"
#include "meroform/quadforms.hpp"
#include "meroform/quasimodular.hpp"
#include "meroform/series.hpp"

#include <vector>

namespace meroform {

/// Value with an a-priori bound on its absolute error.
struct Certified {
  Complex value;
  Real error;
};

/// sum c_n q^n over the known coefficients; the tail beyond trunc_order is
/// bounded by a geometric model C*rho^n fitted to the last quarter of the
/// coefficients. Throws PrecisionError naming the order needed when the tail
/// exceeds 10^-digits.
Certified eval_qseries(const QSeries& f, const Complex& z, Precision prec);
Certified eval_qseries(const RSeries& f, const Complex& z, Precision prec);

struct FormValues {
  Complex e2;     ///< holomorphic E2
  Complex e2star; ///< E2 - 3/(pi y)
  Complex e4;
  Complex e6;
  Complex delta;  ///< from the product formula
  Real error;     ///< common absolute error bound for the Eisenstein values
};

/// E2, E4, E6 by Lambert series with explicit tail bounds; Delta by q prod (1-q^n)^24.
FormValues eval_forms(const Complex& z, Precision prec);
Complex eval_j(const Complex& z, Precision prec);
/// Value of a closed form at z.
Complex eval_form(const FormExpr& f, const Complex& z, Precision prec);
Complex eval_form(const FormExpr& f, const FormValues& v, Precision prec);

/// [d^0 f(z), ..., d^n f(z)].
std::vector<Complex> maass_derivatives(const QuasiExpr& f, int n, const Complex& z, Precision prec);
/// d^m f(z) (4 pi y)^m / m!, m < n_terms: the coefficients of w^m in
/// (1+w)^-weight f((z + conj(z) w)/(1 + w)), i.e. of the expansion at z in the
/// variable -w.
std::vector<Complex> modified_taylor(const QuasiExpr& f, const Complex& z, int n_terms, Precision prec);

/// Omega_K for a fundamental discriminant.
Real chowla_selberg(long long D, Precision prec);

/// Monic prod (X - j(z_A)) over primitive reduced forms; coefficients low to high.
struct ClassPolynomial {
  long long D = 0;
  std::vector<mpz_class> coeffs;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::string to_string() const;
};

/// Rounds the CM product with isolation margin 0.25, doubling the precision
/// until every coefficient is isolated (up to 8 doublings).
ClassPolynomial class_polynomial(long long D, Precision prec);

}  // namespace meroform
