#include <doctest.h>

#include "meroform/numeric.hpp"

#include <boost/math/special_functions/gamma.hpp>

using namespace meroform;
namespace mp = boost::multiprecision;

namespace {

const Precision P(60);

Complex rho() { return Complex(Real(-1) / 2, mp::sqrt(Real(3)) / 2); }

// Oracle: coefficients of w^m in (1+w)^-wt f((z + conj(z) w)/(1 + w)) by a
// discrete Cauchy integral on |w| = 1/2.
std::vector<Complex> taylor_oracle(const FormExpr& f, const Complex& z, int n) {
  const int N = 96;
  Real r = Real(1) / 2;
  int wt = f.weight();
  std::vector<Complex> c(static_cast<size_t>(n));
  for (int j = 0; j < N; ++j) {
    Real t = 2 * real_pi() * j / N;
    Complex w(r * mp::cos(t), r * mp::sin(t));
    Complex one_w = Complex(1) + w;
    Complex g = eval_form(f, (z + z.conj() * w) / one_w, P) * pow(one_w, -wt);
    Complex wi = pow(w, -1), wm(1);
    for (int m = 0; m < n; ++m) {
      c[static_cast<size_t>(m)] += g * wm / Real(N);
      wm = wm * wi;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("special values") {
  PrecisionScope s(P);
  Real tol("1e-50");
  Complex i = Complex::i();
  FormValues vi = eval_forms(i, P), vr = eval_forms(rho(), P);
  CHECK(vi.e6.abs() < tol);
  CHECK(vr.e4.abs() < tol);
  CHECK((eval_j(i, P) - Complex(1728)).abs() < Real("1e-45"));
  CHECK(eval_j(rho(), P).abs() < Real("1e-45"));
  // E2*(i) = 0 and E2*(rho) = 0
  CHECK(vi.e2star.abs() < tol);
  CHECK(vr.e2star.abs() < tol);
  // Delta from the product agrees with (E4^3 - E6^2)/1728
  Complex z(Real("0.3"), Real("0.9"));
  FormValues v = eval_forms(z, P);
  CHECK(((v.e4 * v.e4 * v.e4 - v.e6 * v.e6) / Real(1728) - v.delta).abs() < Real("1e-48"));
}

TEST_CASE("modularity of the Eisenstein series (property)") {
  PrecisionScope s(P);
  for (const char* x : {"0.11", "-0.37", "0.45"}) {
    Complex z(Real(x), Real("1.05"));
    FormValues a = eval_forms(z, P);
    FormValues b = eval_forms(Complex(-1) / z, P);
    Complex z4 = pow(z, 4), z6 = pow(z, 6), z12 = pow(z, 12);
    CHECK((b.e4 - z4 * a.e4).abs() < Real("1e-45") * z4.abs());
    CHECK((b.e6 - z6 * a.e6).abs() < Real("1e-45") * z6.abs());
    CHECK((b.delta - z12 * a.delta).abs() < Real("1e-45") * (z12 * a.delta).abs());
    CHECK((b.e2star - z * z * a.e2star).abs() < Real("1e-45") * (z * z).abs());
  }
}

TEST_CASE("Chowla-Selberg period against Gamma values") {
  PrecisionScope s(P);
  Real om = chowla_selberg(-4, P);
  Real g14 = boost::math::tgamma(Real(1) / 4), g34 = boost::math::tgamma(Real(3) / 4);
  CHECK(abs(om - g14 / g34 / mp::sqrt(8 * real_pi())) < Real("1e-50"));
  // E4(i) = 12 Omega^4
  FormValues vi = eval_forms(Complex::i(), P);
  CHECK((vi.e4 - Complex(12 * mp::pow(om, 4))).abs() < Real("1e-45"));
  // Delta(rho)^3 = -Omega_{-3}^36
  Real o3 = chowla_selberg(-3, P);
  FormValues vr = eval_forms(rho(), P);
  Complex d3 = vr.delta * vr.delta * vr.delta;
  CHECK((d3 + Complex(mp::pow(o3, 36))).abs() < Real("1e-40") * mp::pow(o3, 36));
  CHECK_THROWS(chowla_selberg(-12, P));
}

TEST_CASE("class polynomials") {
  ClassPolynomial h3 = class_polynomial(-3, P);
  CHECK(h3.degree() == 1);
  CHECK(h3.coeffs[0] == 0);
  ClassPolynomial h4 = class_polynomial(-4, P);
  CHECK(h4.coeffs[0] == -1728);
  ClassPolynomial h12 = class_polynomial(-12, P);
  CHECK(h12.coeffs[0] == -54000);
  ClassPolynomial h23 = class_polynomial(-23, P);
  REQUIRE(h23.degree() == 3);
  CHECK(h23.coeffs[3] == 1);
  CHECK(h23.coeffs[2] == 3491750);
  CHECK(h23.coeffs[1] == -5151296875);
  CHECK(h23.coeffs[0] == mpz_class("12771880859375"));
  CHECK(h23.to_string() == "X^3 + 3491750*X^2 - 5151296875*X + 12771880859375");
  ClassPolynomial h163 = class_polynomial(-163, P);
  CHECK(h163.coeffs[0] == mpz_class("262537412640768000"));
}

TEST_CASE("modified Taylor expansion against a Cauchy integral oracle") {
  PrecisionScope s(P);
  Complex z(Real("0.2"), Real("1.1"));
  for (auto [qf, ff] : {std::pair{QuasiExpr::e4(), FormExpr::generator(Canonical::E4)},
                        std::pair{QuasiExpr::e6(), FormExpr::generator(Canonical::E6)},
                        std::pair{QuasiExpr::delta(), FormExpr::generator(Canonical::Delta)}}) {
    auto got = modified_taylor(qf, z, 8, P);
    auto want = taylor_oracle(ff, z, 8);
    Real scale = 0;
    for (const auto& c : want) scale = rmax(scale, c.abs());
    for (int m = 0; m < 8; ++m) CHECK((got[static_cast<size_t>(m)] - want[static_cast<size_t>(m)]).abs() < Real("1e-18") * scale);
  }
}

TEST_CASE("Maass-Shimura derivatives vanish where expected") {
  PrecisionScope s(P);
  // d E4 = (E2* E4 - E6)/3 reduces to -E6/3 at rho since E2*(rho) = E4(rho) = 0
  auto d = maass_derivatives(QuasiExpr::e4(), 2, rho(), P);
  FormValues v = eval_forms(rho(), P);
  CHECK(d[0].abs() < Real("1e-45"));
  CHECK((d[1] + v.e6 / Real(3)).abs() < Real("1e-45"));
  // and vanishes at i, where E2* = E6 = 0
  auto di = maass_derivatives(QuasiExpr::e4(), 2, Complex::i(), P);
  CHECK(di[1].abs() < Real("1e-45"));
  CHECK(QuasiExpr::e4().derivative().weight() == 6);
}

TEST_CASE("q-series evaluation certificate") {
  PrecisionScope s(P);
  QSeries e4 = eisenstein(4, 200);
  Complex z(Real("0.1"), Real("1.2"));
  Certified c = eval_qseries(e4, z, Precision(40));
  FormValues v = eval_forms(z, P);
  CHECK((c.value - v.e4).abs() <= c.error + Real("1e-45"));
  CHECK(c.error < Real("1.01e-40"));
  // too few terms for the requested digits
  CHECK_THROWS_AS(eval_qseries(eisenstein(4, 10), z, Precision(40)), PrecisionError);
}
