#include <doctest.h>

#include "meroform/decomp.hpp"

using namespace meroform;
namespace mp = boost::multiprecision;

namespace {

FkdCombination compose(int k, const FkdCombination& c, long n) {
  FkdCombination out;
  for (const auto& [D, alpha] : c)
    for (const auto& [D2, beta] : hecke_on_f(k, D, n)) out[D2] += alpha * beta;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

// Oracle: (f|T_n)(z) = n^{2k-1} sum_{ad=n} sum_{b mod d} d^-2k f((az+b)/d), f by direct summation.
Complex hecke_direct(int k, long long D, long n, const Complex& z, Precision p) {
  Real tol("1e-24");
  Complex s;
  for (long d = 1; d <= n; ++d) {
    if (n % d) continue;
    long a = n / d;
    for (long b = 0; b < d; ++b) {
      Complex w = (Complex(Real(a)) * z + Complex(Real(b))) / Real(d);
      s += f_direct(FkdSpec{k, D, std::nullopt}, w, tol, p).value / mp::pow(Real(d), 2 * k);
    }
  }
  return s * mp::pow(Real(n), 2 * k - 1);
}

}  // namespace

TEST_CASE("Phi_D") {
  CHECK(phi(-3).same_form(FormExpr::generator(Canonical::E4)));
  CHECK(phi(-4).same_form(FormExpr::generator(Canonical::E6)));
  CHECK(phi(-23).weight() == 36);
  CHECK(phi_class(mpz_class(54000)).same_form(FormExpr::pole_form(mpz_class(54000))));
}

TEST_CASE("vanishing orders of Psi_m (property)") {
  for (int w = 12; w <= 60; w += 2) {
    WeightTriple t = weight_triple(w);
    auto basis0 = psi_basis(w, 0);
    CHECK(static_cast<int>(basis0.size()) == t.M);
    for (int m = 0; m < t.M; ++m) {
      CHECK(psi_order(w, 0, m) == 3 * m + t.delta);
      CHECK(psi_order(w, 1728, m) == 2 * m + t.epsilon);
      CHECK(psi_order(w, 54000, m) == m);
      CHECK(basis0[static_cast<size_t>(m)].weight() == w);
    }
  }
}

TEST_CASE("f_{2,-3} and f_{3,-3} closed forms") {
  Precision p(60);
  Decomposition d2 = decompose(2, -3, p);
  FormExpr ref2 = (FormExpr::monomial({0, 0, 1}) * QuadRational(-256)).divided_by_pole(0, 2);
  CHECK(d2.algebraic_part.same_form(ref2));
  CHECK(d2.cusp_dim == 0);
  CHECK(d2.remainder_zero);
  // certified remainder is within its error bars
  for (const auto& c : d2.cusp_remainder) CHECK(abs(c.value) <= c.error);

  Decomposition d3 = decompose(3, -3, p);
  FormExpr ref3 = (FormExpr::monomial({0, 1, 1}) * QuadRational(0, mpq_class(512, 9), 3)).divided_by_pole(0, 3);
  CHECK(d3.algebraic_part.same_form(ref3));
  CHECK(d3.algebraic_part.surd_base() == 3);
}

TEST_CASE("closed form agrees with direct summation at a point") {
  Precision p(50);
  PrecisionScope s(p);
  Complex z(Real("0.17"), Real("1.21"));
  Decomposition d = decompose(5, -3, p);
  REQUIRE(d.remainder_zero);
  Complex alg = eval_form(d.algebraic_part, z, p);
  Complex dir = f_direct(FkdSpec{5, -3, std::nullopt}, z, Real("1e-20"), p).value;
  CHECK((alg - dir).abs() < Real("1e-15") * dir.abs());

  // weight 12 with a cusp form: f = algebraic part + c Delta
  Decomposition d12 = decompose(6, -12, p);
  CHECK(d12.cusp_dim == 1);
  CHECK_FALSE(d12.remainder_zero);
  REQUIRE(!d12.cusp_remainder.empty());
  Real c1 = d12.cusp_remainder.front().value;
  FormValues v = eval_forms(z, p);
  Complex model = eval_form(d12.algebraic_part, z, p) + v.delta * c1;
  Complex dir12 = f_direct(FkdSpec{6, -12, std::nullopt}, z, Real("1e-22"), p).value;
  CHECK((model - dir12).abs() < Real("1e-15") * dir12.abs());
  CHECK(d12.membership_ratio < 1);
}

TEST_CASE("class number above one is rejected") {
  CHECK_THROWS_AS(decompose(2, -23, Precision(40)), DecompositionError);
}

TEST_CASE("Hecke operators on f_{k,D}") {
  FkdCombination t2 = hecke_on_f(6, -3, 2);
  CHECK(t2 == FkdCombination{{-12, mpz_class(2048)}, {-3, mpz_class(-32)}});
  CHECK(combination_to_string(6, t2) == "-32*f_{6,-3} + 2048*f_{6,-12}");
  // T_4 = T_2^2 - 2^{2k-1}, T_6 = T_2 T_3 = T_3 T_2
  for (auto [k, D] : {std::pair{6, -3LL}, std::pair{4, -4LL}, std::pair{5, -7LL}}) {
    FkdCombination sq = compose(k, hecke_on_f(k, D, 2), 2);
    sq[D] -= mpz_class(1) << (2 * k - 1);
    for (auto it = sq.begin(); it != sq.end();) it = it->second == 0 ? sq.erase(it) : std::next(it);
    CHECK(hecke_on_f(k, D, 4) == sq);
    CHECK(hecke_on_f(k, D, 6) == compose(k, hecke_on_f(k, D, 2), 3));
    CHECK(hecke_on_f(k, D, 6) == compose(k, hecke_on_f(k, D, 3), 2));
  }
}

TEST_CASE("Hecke closed form against the double-coset sum") {
  Precision p(40);
  PrecisionScope s(p);
  Complex z(Real("0.11"), Real("1.37"));
  for (long n : {2L, 3L}) {
    Complex lhs = hecke_direct(6, -3, n, z, p);
    Complex rhs;
    for (const auto& [D, alpha] : hecke_on_f(6, -3, n))
      rhs += f_direct(FkdSpec{6, D, std::nullopt}, z, Real("1e-24"), p).value * to_real(alpha);
    CHECK((lhs - rhs).abs() < Real("1e-15") * rhs.abs());
  }
}

TEST_CASE("Hecke combination without cusp part") {
  HeckeCombination h = hecke_combination(6, -3, {24, 1}, Precision(60));
  CHECK(h.obstruction.pass);
  CHECK(h.combination == FkdCombination{{-12, mpz_class(2048)}, {-3, mpz_class(-8)}});
  CHECK(h.remainder_zero);
  for (const auto& c : h.transported_remainder) CHECK(c.value == 0);
  CHECK(h.algebraic_part.weight() == 12);
}
