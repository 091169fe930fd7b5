#include <doctest.h>

#include "meroform/series.hpp"

#include <random>

using namespace meroform;

namespace {

// Oracle: coefficients of q prod (1 - q^n)^24 by repeated multiplication with machine integers.
std::vector<long> delta_oracle(int n) {
  std::vector<long> p(static_cast<size_t>(n), 0);
  p[0] = 1;
  for (int m = 1; m < n; ++m)
    for (int rep = 0; rep < 24; ++rep)
      for (int e = n - 1; e >= m; --e) p[static_cast<size_t>(e)] -= p[static_cast<size_t>(e - m)];
  return p;  // p[e] is the coefficient of q^{e+1}
}

long sigma_oracle(int k, int n) {
  long s = 0;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) {
      long t = 1;
      for (int i = 0; i < k; ++i) t *= d;
      s += t;
    }
  return s;
}

}  // namespace

TEST_CASE("Eisenstein series against divisor sums") {
  QSeries e4 = eisenstein(4, 30), e6 = eisenstein(6, 30);
  CHECK(e4.coeff(0) == 1);
  CHECK(e6.coeff(0) == 1);
  for (int n = 1; n < 30; ++n) {
    CHECK(e4.coeff(n) == 240 * sigma_oracle(3, n));
    CHECK(e6.coeff(n) == -504 * sigma_oracle(5, n));
  }
  QSeries e2 = canonical_form(Canonical::E2, 10);
  CHECK(e2.coeff(1) == -24);
  CHECK(e2.coeff(6) == -24 * 12);
}

TEST_CASE("Delta from E4, E6 matches the product formula") {
  QSeries d = canonical_form(Canonical::Delta, 40);
  auto o = delta_oracle(40);
  CHECK(d.valuation() == 1);
  for (int e = 1; e <= 40; ++e) CHECK(d.coeff(e) == o[static_cast<size_t>(e - 1)]);
  CHECK(d.coeff(2) == -24);
  CHECK(d.coeff(12) == -370944);
}

TEST_CASE("j expansion") {
  QSeries j = canonical_form(Canonical::J, 4);
  CHECK(j.start() == -1);
  CHECK(j.coeff(-1) == 1);
  CHECK(j.coeff(0) == 744);
  CHECK(j.coeff(1) == 196884);
  CHECK(j.coeff(2) == 21493760);
  CHECK(to_text(canonical_form(Canonical::J, 3)) == "q^-1 + 744 + 196884*q + O(q^2)");
}

TEST_CASE("weight triples and dimensions") {
  for (int w = 0; w <= 200; w += 2) {
    // oracle: count monomials E4^a E6^b of weight w
    int count = 0;
    for (int a = 0; 4 * a <= w; ++a)
      if ((w - 4 * a) % 6 == 0) ++count;
    CHECK(dim_modular(w) == count);
    if (w >= 4) CHECK(dim_cusp(w) == (w == 2 ? 0 : count - 1));
    if (w == 2) continue;
    WeightTriple t = weight_triple(w);
    CHECK(4 * t.delta + 6 * t.epsilon + 12 * t.M == w);
    CHECK(t.delta >= 0);
    CHECK(t.delta <= 2);
    CHECK(t.epsilon >= 0);
    CHECK(t.epsilon <= 1);
  }
  CHECK(dim_cusp(12) == 1);
  CHECK(dim_cusp(24) == 2);
}

TEST_CASE("cusp basis is echelon and consists of cusp forms") {
  for (int w : {12, 24, 36, 38}) {
    auto b = cusp_basis(w, 20);
    REQUIRE(static_cast<int>(b.size()) == dim_cusp(w));
    for (size_t i = 0; i < b.size(); ++i) {
      CHECK(b[i].coeff(0) == 0);
      for (size_t j = 0; j < b.size(); ++j) CHECK(b[i].coeff(static_cast<int>(j) + 1) == (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("Hecke operators on eigenforms") {
  QSeries d = canonical_form(Canonical::Delta, 60);
  auto tau = [&](int n) { return d.coeff(n); };
  for (long m : {2L, 3L, 5L, 6L}) {
    QSeries t = hecke_on_series(d, 12, m);
    CHECK(t.trunc_order() == static_cast<int>((60 + 1 - 1) / m + 1));
    for (int n = 1; n < t.trunc_order(); ++n) CHECK(t.coeff(n) == tau(static_cast<int>(m)) * tau(n));
  }
  QSeries e4 = eisenstein(4, 40);
  QSeries t2 = hecke_on_series(e4, 4, 2);
  for (int n = 0; n < t2.trunc_order(); ++n) CHECK(t2.coeff(n) == 9 * e4.coeff(n));
}

TEST_CASE("Hecke operators commute and multiply (property)") {
  std::mt19937 rng(7);
  QSeries e4 = eisenstein(4, 200), e6 = eisenstein(6, 200);
  for (int trial = 0; trial < 6; ++trial) {
    int a = static_cast<int>(rng() % 4), b = static_cast<int>(rng() % 3);
    QSeries f = e4.pow(a + 3) * e6.pow(2 * b) * mpq_class(static_cast<long>(rng() % 17) - 8);
    int w = 4 * (a + 3) + 12 * b;
    QSeries lhs = hecke_on_series(hecke_on_series(f, w, 2), w, 3);
    QSeries rhs = hecke_on_series(hecke_on_series(f, w, 3), w, 2);
    QSeries t6 = hecke_on_series(f, w, 6);
    for (int n = 0; n < std::min(lhs.trunc_order(), rhs.trunc_order()); ++n) {
      CHECK(lhs.coeff(n) == rhs.coeff(n));
      CHECK(lhs.coeff(n) == t6.coeff(n));
    }
  }
}

TEST_CASE("obstruction and weakly holomorphic forms") {
  CHECK(borcherds_obstruction(6, {24, 1}).pass);
  CHECK_FALSE(borcherds_obstruction(6, {1}).pass);
  CHECK_FALSE(borcherds_obstruction(6, {1, 24}).pass);
  CHECK(borcherds_obstruction(5, {1}).pass);

  auto g = weakly_holomorphic(-10, {24, 1}, 10);
  REQUIRE(std::holds_alternative<QSeries>(g));
  QSeries s = std::get<QSeries>(g);
  CHECK(s.coeff(-2) == 1);
  CHECK(s.coeff(-1) == 24);
  // E4^2 E6 / Delta^2 has the same principal part
  QSeries ref = eisenstein(4, 12).pow(2) * eisenstein(6, 12) * canonical_form(Canonical::Delta, 12).pow(-2);
  for (int e = -2; e < std::min(ref.trunc_order(), s.trunc_order()); ++e) CHECK(s.coeff(e) == ref.coeff(e));

  auto bad = weakly_holomorphic(-10, {1}, 10);
  CHECK(std::holds_alternative<NoExistence>(bad));
}

TEST_CASE("json round trip") {
  QSeries j = canonical_form(Canonical::J, 12) * mpq_class(3, 7);
  CHECK(qseries_from_json(to_json(j)) == j);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(hecke_on_series(eisenstein(4, 10), 4, 0), SeriesError);
  CHECK_THROWS_AS(eisenstein(4, 5).coeff(7), SeriesError);
  CHECK_FALSE(parse_canonical("E8").has_value());
}
