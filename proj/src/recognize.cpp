#include "meroform/recognize.hpp"

#include <sstream>

namespace meroform {

namespace mp = boost::multiprecision;

namespace {

mpz_class round_q(const mpq_class& q) {
  mpq_class h = q + mpq_class(1, 2);
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return r;
}

}  // namespace

void lll_reduce(std::vector<std::vector<mpz_class>>& b) {
  size_t n = b.size();
  if (n == 0) return;
  std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n, 0));
  std::vector<mpq_class> B(n, 0);

  // Gram-Schmidt from scratch; small dimensions make the recomputation cheap.
  auto gso = [&]() {
    std::vector<std::vector<mpq_class>> bstar(n);
    for (size_t i = 0; i < n; ++i) {
      bstar[i].assign(b[i].size(), 0);
      for (size_t c = 0; c < b[i].size(); ++c) bstar[i][c] = b[i][c];
      for (size_t j = 0; j < i; ++j) {
        mpq_class num = 0;
        for (size_t c = 0; c < b[i].size(); ++c) num += mpq_class(b[i][c]) * bstar[j][c];
        mu[i][j] = B[j] == 0 ? mpq_class(0) : mpq_class(num / B[j]);
        for (size_t c = 0; c < b[i].size(); ++c) bstar[i][c] -= mu[i][j] * bstar[j][c];
      }
      B[i] = 0;
      for (const auto& x : bstar[i]) B[i] += x * x;
    }
  };
  gso();
  size_t k = 1;
  const mpq_class delta(3, 4);
  while (k < n) {
    for (size_t jj = k; jj-- > 0;) {
      mpz_class r = round_q(mu[k][jj]);
      if (r == 0) continue;
      for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= r * b[jj][c];
      for (size_t l = 0; l < jj; ++l) mu[k][l] -= mpq_class(r) * mu[jj][l];
      mu[k][jj] -= mpq_class(r);
    }
    if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gso();
      k = std::max<size_t>(k - 1, 1);
    }
  }
}

HBasis make_hbasis(long long D, const mpz_class& j_value, Precision prec) {
  PrecisionScope scope(prec);
  HBasis h;
  h.D = D;
  h.j = j_value;
  long long n = -D;
  for (long long p = 2; p * p <= n; ++p)
    while (n % (p * p) == 0) n /= p * p;
  h.values = {Complex(1), Complex(Real(0), Real(1))};
  h.labels = {"1", "i"};
  if (n != 1) {
    Real s = mp::sqrt(Real(n));
    std::string sl = "sqrt(" + std::to_string(n) + ")";
    h.values = {Complex(1), Complex(s), Complex(Real(0), Real(1)), Complex(Real(0), s)};
    h.labels = {"1", sl, "i", "i*" + sl};
  }
  return h;
}

bool HNumber::is_rational() const {
  for (size_t i = 1; i < coords.size(); ++i)
    if (coords[i] != 0) return false;
  return true;
}

std::string HNumber::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coords[i].get_str() << ")";
    if (labels[i] != "1") os << "*" << labels[i];
  }
  if (first) os << "0";
  return os.str();
}

Complex HNumber::embed(const HBasis& b, Precision prec) const {
  PrecisionScope scope(prec);
  Complex s(0);
  for (size_t i = 0; i < coords.size(); ++i) s += b.values[i] * to_real(coords[i]);
  return s;
}

std::optional<HNumber> recognize_in_H(const Complex& x, const HBasis& basis, const mpz_class& height_bound,
                                      Precision prec) {
  PrecisionScope scope(prec);
  size_t n = basis.values.size();
  Real scale_abs = rmax(Real(1), x.abs());
  int lattice_digits = prec.digits * 7 / 10;
  Real N = mp::pow(Real(10), lattice_digits) / scale_abs;
  // rows: x, then each basis element; columns: identity | N*Re | N*Im
  std::vector<std::vector<mpz_class>> rows;
  auto make_row = [&](size_t idx, const Complex& v) {
    std::vector<mpz_class> r(n + 3, 0);
    r[idx] = 1;
    r[n + 1] = round_to_mpz(v.re * N);
    r[n + 2] = round_to_mpz(v.im * N);
    return r;
  };
  rows.push_back(make_row(0, x));
  for (size_t i = 0; i < n; ++i) rows.push_back(make_row(i + 1, basis.values[i]));
  lll_reduce(rows);

  Real tol = mp::pow(Real(10), -(prec.digits * 8 / 10)) * scale_abs;
  for (const auto& r : rows) {
    if (r[0] == 0) continue;
    bool small = true;
    for (size_t i = 0; i <= n; ++i)
      if (abs(r[i]) > height_bound) small = false;
    if (!small) continue;
    HNumber h;
    h.D = basis.D;
    h.labels = basis.labels;
    for (size_t i = 0; i < n; ++i) {
      mpq_class c(-r[i + 1], r[0]);
      c.canonicalize();
      h.coords.push_back(c);
    }
    Complex diff = h.embed(basis, prec) - x;
    if (diff.abs() <= tol) return h;
  }
  return std::nullopt;
}

}  // namespace meroform
