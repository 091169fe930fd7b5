#include <doctest.h>

#include "meroform/quadforms.hpp"

#include <numeric>
#include <random>
#include <set>

using namespace meroform;

namespace {

// Oracle: count SL2(Z)-classes by brute force over all reduced triples.
long class_number_oracle(long long D, bool primitive) {
  long h = 0;
  for (long long a = 1; 3 * a * a <= -D; ++a)
    for (long long b = -a + 1; b <= a; ++b) {
      if ((b * b - D) % (4 * a)) continue;
      long long c = (b * b - D) / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (primitive && std::gcd(std::gcd(a, b), c) != 1) continue;
      ++h;
    }
  return h;
}

int legendre_oracle(long long a, long long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long long r = 1, base = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("discriminant validation") {
  CHECK_NOTHROW(check_discriminant(-3));
  CHECK_NOTHROW(check_discriminant(-12));
  CHECK_THROWS_AS(check_discriminant(-5), QuadFormError);
  CHECK_THROWS_AS(check_discriminant(4), QuadFormError);
  CHECK_THROWS_AS(check_discriminant(0), QuadFormError);
  CHECK(is_fundamental(-3));
  CHECK(is_fundamental(-4));
  CHECK(is_fundamental(-23));
  CHECK_FALSE(is_fundamental(-12));
  CHECK_FALSE(is_fundamental(-27));
  CHECK(unit_w(-3) == 3);
  CHECK(unit_w(-4) == 2);
  CHECK(unit_w(-23) == 1);
}

TEST_CASE("reduction (property)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    // random form of negative discriminant: start reduced, then act by a random word
    long long a = static_cast<long long>(rng() % 20) + 1;
    long long b = static_cast<long long>(rng() % (2 * a + 1)) - a;
    long long c = (b * b) / (4 * a) + static_cast<long long>(rng() % 30) + 1;
    BQF f{a, b, c};
    if (f.disc() >= 0) continue;
    SL2Z T{1, 1, 0, 1}, Ti{1, -1, 0, 1}, S{0, -1, 1, 0};
    for (int s = 0; s < 6; ++s) {
      int m = static_cast<int>(rng() % 3);
      f = act(f, m == 0 ? T : m == 1 ? Ti : S);
    }
    auto [r, g] = reduce_form(f);
    CHECK(r.is_reduced());
    CHECK(r.disc() == f.disc());
    CHECK(g.p * g.s - g.q * g.r == 1);
    CHECK(act(f, g) == r);
    CHECK(reduce_form(BQF{a, b, c}).first == r);
  }
}

TEST_CASE("class numbers against brute force") {
  for (long long D = -3; D >= -2000; --D) {
    if (((D % 4) + 4) % 4 > 1) continue;
    CHECK(class_number(D) == class_number_oracle(D, true));
    CHECK(static_cast<long>(class_representatives(D, false).size()) == class_number_oracle(D, false));
  }
  CHECK(class_number(-23) == 3);
  CHECK(class_number(-163) == 1);
  auto reps = class_representatives(-23, true);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0] == BQF{1, 1, 6});
  CHECK(reps[1] == BQF{2, 1, 3});
  CHECK(reps[2] == BQF{2, -1, 3});
  auto r12 = class_representatives(-12, false);
  REQUIRE(r12.size() == 2);
  CHECK(r12[0] == BQF{1, 0, 3});
  CHECK(r12[1] == BQF{2, 2, 2});
}

TEST_CASE("Kronecker symbol against Euler's criterion") {
  for (long long D : {-3LL, -4LL, -7LL, -23LL, -163LL, -20LL})
    for (long long p : {3LL, 5LL, 7LL, 11LL, 13LL, 101LL, 163LL})
      CHECK(kronecker(D, p) == legendre_oracle(D, p));
  CHECK(kronecker(-3, 2) == -1);
  CHECK(kronecker(-7, 2) == 1);
  CHECK(kronecker(-4, 2) == 0);
  CHECK(kronecker(-23, 1) == 1);
  // multiplicativity in n
  for (long long D : {-23LL, -15LL})
    for (long long m = 1; m < 30; ++m)
      for (long long n = 1; n < 30; ++n) CHECK(kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n));
}

TEST_CASE("residue table against brute force") {
  for (long long D : {-3LL, -4LL, -12LL, -23LL, -48LL, -163LL}) {
    ResidueTable t(D, 300);
    for (long a = 1; a <= 300; ++a) {
      std::vector<long> expect;
      for (long b = 0; b < 2 * a; ++b)
        if (((b * b - D) % (4 * a) + 4 * a) % (4 * a) == 0) expect.push_back(b);
      CHECK(t.roots(a) == expect);
    }
  }
}

TEST_CASE("form enumeration") {
  std::vector<BQF> seen;
  enumerate_forms(-23, 12, [](long a) { return std::pair<long long, long long>(-a, a); },
                  [&](const BQF& f) { seen.push_back(f); });
  long expect = 0;
  for (long long a = 1; a <= 12; ++a)
    for (long long b = -a; b <= a; ++b)
      if ((b * b + 23) % (4 * a) == 0) ++expect;
  CHECK(static_cast<long>(seen.size()) == expect);
  for (const auto& f : seen) CHECK(f.disc() == -23);
}

TEST_CASE("square divisors and CM points") {
  CHECK(square_divisors(-3) == std::vector<long long>{1});
  CHECK(square_divisors(-12) == std::vector<long long>{1, 2});
  CHECK(square_divisors(-48) == std::vector<long long>{1, 2, 4});
  CHECK(square_divisors(-16) == std::vector<long long>{1, 2});
  CHECK(square_divisors(-27) == std::vector<long long>{1, 3});

  PrecisionScope s(Precision(50));
  CMPoint p = cm_point(BQF{1, 1, 1}, Precision(50));
  CHECK(abs(p.value.re + Real(0.5)) < Real(1e-45));
  CHECK(abs(p.value.im * p.value.im - Real(3) / 4) < Real(1e-45));
  CHECK(BQF{2, 1, 3}.to_string() == "2,1,3");
}
