#include <doctest.h>

#include "meroform/form_expr.hpp"

#include <random>

using namespace meroform;

TEST_CASE("quadratic rationals") {
  QuadRational x(mpq_class(1, 2), mpq_class(3), 3), y(mpq_class(-2), mpq_class(1, 5), 3);
  QuadRational p = x * y;
  // (1/2 + 3 r)(-2 + r/5) with r^2 = 3
  CHECK(p.rational() == mpq_class(-1) + mpq_class(9, 5));
  CHECK(p.surd() == mpq_class(1, 10) - 6);
  CHECK(x * x.inverse() == QuadRational(1));
  CHECK((x - x).is_zero());
  CHECK(QuadRational(0, mpq_class(-512, 9), 3).to_string() == "(-512/9)*sqrt(3)");
  CHECK_THROWS(QuadRational(0).inverse());
}

TEST_CASE("expansion of a closed form equals series arithmetic") {
  // -256 Delta / E4^2
  FormExpr f = (FormExpr::monomial({0, 0, 1}) * QuadRational(-256)).divided_by_pole(0, 2);
  SurdSeries s = f.expand(12);
  QSeries ref = canonical_form(Canonical::Delta, 14) * eisenstein(4, 14).pow(-2) * mpq_class(-256);
  for (int e = 0; e < 12; ++e) CHECK(s.coeff(e) == QuadRational(ref.coeff(e)));
  CHECK(s.coeff(1) == QuadRational(-256));
  CHECK(s.coeff(2) == QuadRational(129024));
  CHECK(f.weight() == 4);
}

TEST_CASE("poles at j0 and E6") {
  FormExpr pf = FormExpr::pole_form(mpz_class(54000));
  FormExpr g = FormExpr::monomial({0, 0, 2}).divided_by_pole(mpz_class(54000), 1);
  SurdSeries s = g.expand(10);
  QSeries d = canonical_form(Canonical::Delta, 12);
  QSeries ref = d.pow(2) * (eisenstein(4, 12).pow(3) - d * mpq_class(54000)).inverse();
  for (int e = 0; e < 10; ++e) CHECK(s.coeff(e) == QuadRational(ref.coeff(e)));

  FormExpr h = FormExpr::monomial({0, 0, 1}).divided_by_pole(mpz_class(1728), 2);
  CHECK(h.weight() == 0);
  QSeries ref2 = d * eisenstein(6, 12).pow(-2);
  SurdSeries s2 = h.expand(10);
  for (int e = 0; e < 10; ++e) CHECK(s2.coeff(e) == QuadRational(ref2.coeff(e)));
  CHECK(pf.weight() == 12);
}

TEST_CASE("same_form recognises rewritten expressions (property)") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    long a = static_cast<long>(rng() % 50) - 25, b = static_cast<long>(rng() % 50) - 25;
    // a Delta^2/E4^4 + b Delta/E4 written two ways: E4^3 = 1728 Delta + E6^2
    FormExpr f = (FormExpr::monomial({0, 0, 2}) * QuadRational(a) + FormExpr::monomial({3, 0, 1}) * QuadRational(b))
                     .divided_by_pole(0, 4);
    FormExpr g = (FormExpr::monomial({0, 0, 2}) * QuadRational(a + 1728 * b) +
                  FormExpr::monomial({0, 2, 1}) * QuadRational(b))
                     .divided_by_pole(0, 4);
    CHECK(f.same_form(g));
    FormExpr h = g + FormExpr::monomial({0, 0, 1}).divided_by_pole(0, 1) * QuadRational(mpq_class(1, 7));
    CHECK_FALSE(f.same_form(h));
  }
}

TEST_CASE("surd coefficients") {
  FormExpr f = (FormExpr::monomial({0, 1, 1}) * QuadRational(0, mpq_class(-512, 9), 3)).divided_by_pole(0, 3);
  CHECK(f.surd_base() == 3);
  SurdSeries s = f.expand(5);
  CHECK(s.coeff(1) == QuadRational(0, mpq_class(-512, 9), 3));
  CHECK(f.to_string() == "(-(512/9)*sqrt(3)*E6*Delta)/(E4^3)");
}
