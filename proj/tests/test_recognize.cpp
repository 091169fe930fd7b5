#include <doctest.h>

#include "meroform/recognize.hpp"

using namespace meroform;
namespace mp = boost::multiprecision;

TEST_CASE("LLL finds a short vector") {
  // rows (1, 0, N*a), (0, 1, N*b) with a/b = 3/7: expect +-(7, -3, 0)
  mpz_class N("1000000000000");
  std::vector<std::vector<mpz_class>> b = {{1, 0, N * 3}, {0, 1, N * 7}};
  lll_reduce(b);
  CHECK(abs(b[0][0]) == 7);
  CHECK(abs(b[0][1]) == 3);
  CHECK(b[0][2] == 0);
}

TEST_CASE("LLL keeps the lattice and shortens the first vector") {
  std::vector<std::vector<mpz_class>> b = {{1, 0, 0, 9123}, {0, 1, 0, 47211}, {0, 0, 1, 88817}};
  auto orig = b;
  lll_reduce(b);
  // determinant of the Gram matrix is invariant
  auto gram = [](const std::vector<std::vector<mpz_class>>& m) -> mpz_class {
    mpz_class g[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        g[i][j] = 0;
        for (size_t t = 0; t < m[0].size(); ++t) g[i][j] += m[static_cast<size_t>(i)][t] * m[static_cast<size_t>(j)][t];
      }
    return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
           g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  };
  CHECK(gram(b) == gram(orig));
  mpz_class n0 = 0;
  for (const auto& x : b[0]) n0 += x * x;
  mpz_class n_orig = 0;
  for (const auto& x : orig[0]) n_orig += x * x;
  CHECK(n0 <= n_orig);
}

TEST_CASE("recognition in Q(sqrt 3, i)") {
  Precision p(80);
  PrecisionScope s(p);
  HBasis b = make_hbasis(-3, 0, p);
  REQUIRE(b.values.size() == 4);
  Real r3 = mp::sqrt(Real(3));
  Complex x(Real(3) / 7 + Real(5) / 11 * r3, Real(-2) / 13 * r3);
  auto h = recognize_in_H(x, b, mpz_class(1000000), p);
  REQUIRE(h.has_value());
  CHECK(h->coords == std::vector<mpq_class>{mpq_class(3, 7), mpq_class(5, 11), 0, mpq_class(-2, 13)});
  CHECK_FALSE(h->is_rational());
  CHECK((h->embed(b, p) - x).abs() < Real("1e-70"));

  auto none = recognize_in_H(Complex(real_pi()), b, mpz_class(1000000), p);
  CHECK_FALSE(none.has_value());
}

TEST_CASE("basis uses the squarefree part of |D|") {
  Precision p(60);
  HBasis b4 = make_hbasis(-4, 1728, p);
  CHECK(b4.values.size() == 2);
  HBasis b12 = make_hbasis(-12, 54000, p);
  REQUIRE(b12.values.size() == 4);
  PrecisionScope s(p);
  CHECK(abs(b12.values[1].re - mp::sqrt(Real(3))) < Real("1e-55"));
  auto h = recognize_in_H(Complex(Real(-54000)), b12, mpz_class(1000000), p);
  REQUIRE(h.has_value());
  CHECK(h->is_rational());
  CHECK(h->coords[0] == -54000);
}
