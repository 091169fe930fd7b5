#include "meroform/series.hpp"

#include <json.hpp>

#include <numeric>
#include <sstream>

namespace meroform {

RSeries to_real_series(const QSeries& f) {
  std::vector<Real> c;
  c.reserve(f.raw().size());
  for (const auto& x : f.raw()) c.push_back(to_real(x));
  return RSeries(f.start(), std::move(c));
}

std::optional<Canonical> parse_canonical(const std::string& name) {
  if (name == "E2") return Canonical::E2;
  if (name == "E4") return Canonical::E4;
  if (name == "E6") return Canonical::E6;
  if (name == "Delta" || name == "delta" || name == "D") return Canonical::Delta;
  if (name == "j" || name == "J") return Canonical::J;
  return std::nullopt;
}

std::string canonical_name(Canonical c) {
  switch (c) {
    case Canonical::E2: return "E2";
    case Canonical::E4: return "E4";
    case Canonical::E6: return "E6";
    case Canonical::Delta: return "Delta";
    case Canonical::J: return "j";
  }
  return "?";
}

mpz_class divisor_sigma(long k, long n) {
  mpz_class s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    mpz_class t;
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    s += t;
    long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
      s += t;
    }
  }
  return s;
}

QSeries eisenstein(int weight, int trunc) {
  long factor = 0;
  switch (weight) {
    case 2: factor = -24; break;
    case 4: factor = 240; break;
    case 6: factor = -504; break;
    case 8: factor = 480; break;
    case 10: factor = -264; break;
    case 14: factor = -24; break;
    default: throw SeriesError("eisenstein: unsupported weight " + std::to_string(weight));
  }
  QSeries e(0, trunc);
  if (trunc > 0) e.at(0) = 1;
  for (int n = 1; n < trunc; ++n) e.at(n) = mpq_class(factor * divisor_sigma(weight - 1, n));
  return e;
}

namespace {

QSeries delta_series(int trunc) {
  QSeries e4 = eisenstein(4, trunc), e6 = eisenstein(6, trunc);
  QSeries d = e4.pow(3) - e6.pow(2);
  d *= mpq_class(1, 1728);
  return d;
}

}  // namespace

QSeries canonical_form(Canonical name, int n_terms) {
  if (n_terms < 1) throw SeriesError("n_terms must be at least 1");
  switch (name) {
    case Canonical::E2: return eisenstein(2, n_terms);
    case Canonical::E4: return eisenstein(4, n_terms);
    case Canonical::E6: return eisenstein(6, n_terms);
    case Canonical::Delta: {
      QSeries d = delta_series(n_terms + 1);
      return d.truncated(n_terms + 1);
    }
    case Canonical::J: {
      int t = n_terms + 1;
      QSeries j = eisenstein(4, t).pow(3) * delta_series(t).inverse();
      return j.truncated(n_terms - 1);
    }
  }
  throw SeriesError("unknown canonical form");
}

WeightTriple weight_triple(int weight) {
  if (weight < 0 || weight % 2 != 0 || weight == 2)
    throw SeriesError("weight " + std::to_string(weight) + " is not of the form 4d+6e+12M");
  WeightTriple t;
  t.epsilon = (weight / 2) % 2;
  int rest = weight - 6 * t.epsilon;
  t.delta = (rest / 4) % 3;
  t.M = (rest - 4 * t.delta) / 12;
  return t;
}

int dim_modular(int weight) {
  if (weight < 0 || weight % 2 != 0 || weight == 2) return 0;
  return weight_triple(weight).M + 1;
}

int dim_cusp(int weight) {
  if (weight < 12) return 0;
  return dim_modular(weight) - 1;
}

namespace {

// Delta^i E4^delta E6^epsilon E4^{3(M-i)} for i = 0..M, reduced to echelon form.
std::vector<QSeries> miller_forms(int weight, int trunc) {
  WeightTriple t = weight_triple(weight);
  QSeries e4 = eisenstein(4, trunc), e6 = eisenstein(6, trunc), d = delta_series(trunc);
  QSeries base = e4.pow(t.delta) * e6.pow(t.epsilon);
  QSeries e4cubed = e4.pow(3);
  std::vector<QSeries> g;
  for (int i = 0; i <= t.M; ++i) g.push_back(d.pow(i) * e4cubed.pow(t.M - i) * base);
  for (int i = t.M; i >= 0; --i)
    for (int j = i + 1; j <= t.M; ++j) {
      mpq_class c = g[i].coeff(j);
      if (c != 0) g[i] = g[i] - g[j] * c;
    }
  return g;
}

}  // namespace

std::vector<QSeries> modular_basis(int weight, int n_terms) {
  int dim = dim_modular(weight);
  if (dim == 0) return {};
  return miller_forms(weight, std::max(n_terms, dim));
}

std::vector<QSeries> cusp_basis(int weight, int n_terms) {
  if (weight < 4) throw SeriesError("cusp_basis: weight must be at least 4");
  int dim = dim_cusp(weight);
  if (dim == 0) return {};
  auto g = miller_forms(weight, std::max(n_terms, dim + 1));
  return std::vector<QSeries>(g.begin() + 1, g.end());
}

Obstruction borcherds_obstruction(int k, const std::vector<long long>& lambda) {
  Obstruction out;
  int n_max = static_cast<int>(lambda.size());
  auto basis = cusp_basis(2 * k, std::max(n_max, dim_cusp(2 * k)) + 2);
  for (const auto& f : basis) {
    mpq_class s = 0;
    for (int n = 1; n <= n_max; ++n) s += mpq_class(mpz_class(std::to_string(lambda[n - 1]))) * f.coeff(n);
    if (s != 0) out.pass = false;
    out.pairings.push_back(s);
  }
  return out;
}

std::variant<QSeries, NoExistence> weakly_holomorphic(int weight, const std::vector<long long>& lambda,
                                                      int n_terms) {
  if (weight > 0 || weight % 2 != 0) throw SeriesError("weakly_holomorphic: weight must be even and <= 0");
  int N = 0;
  for (int n = 1; n <= static_cast<int>(lambda.size()); ++n)
    if (lambda[n - 1] != 0) N = n;
  if (N == 0) return QSeries(0, n_terms);

  int wprime = weight + 12 * N;
  int dim = dim_modular(wprime);
  int tb = std::max({n_terms + N, 2 * N + 1, dim + 1});

  // First N coefficients of F = g * Delta^N are forced by the principal part.
  std::vector<mpq_class> principal(static_cast<size_t>(N));
  for (int n = 1; n <= N; ++n) principal[static_cast<size_t>(N - n)] = mpq_class(mpz_class(std::to_string(lambda[n - 1])));
  QSeries P(-N, principal);  // known to O(q^0)
  QSeries dN = delta_series(tb).pow(N);
  QSeries target = P * dN;

  auto basis = modular_basis(wprime, tb);
  QSeries F(0, tb);
  for (int i = 0; i < std::min(N, dim); ++i) F = F + basis[static_cast<size_t>(i)] * target.coeff(i);
  for (int i = dim; i < N; ++i) {
    if (F.coeff(i) != target.coeff(i)) {
      NoExistence none;
      none.pairings = borcherds_obstruction((2 - weight) / 2, lambda).pairings;
      return none;
    }
  }
  QSeries g = F * dN.inverse();
  return g.truncated(std::min(g.trunc_order(), n_terms - N));
}

std::string to_json(const QSeries& f) {
  nlohmann::ordered_json j;
  j["valuation"] = f.valuation();
  j["trunc_order"] = f.trunc_order();
  auto arr = nlohmann::json::array();
  for (int e = f.start(); e < f.trunc_order(); ++e) {
    mpq_class c = f.coeff(e);
    if (c == 0) continue;
    arr.push_back({e, c.get_num().get_str() + "/" + c.get_den().get_str()});
  }
  j["coeffs"] = arr;
  return j.dump();
}

QSeries qseries_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  int val = j.at("valuation").get<int>();
  int trunc = j.at("trunc_order").get<int>();
  QSeries f(std::min(val, trunc), trunc);
  int last = std::numeric_limits<int>::min();
  for (const auto& item : j.at("coeffs")) {
    int e = item.at(0).get<int>();
    if (e <= last) throw SeriesError("qseries json: exponents must be strictly ascending");
    last = e;
    mpq_class c(item.at(1).get<std::string>());
    c.canonicalize();
    f.at(e) = c;
  }
  return f;
}

std::string to_text(const QSeries& f) {
  std::ostringstream os;
  bool first = true;
  for (int e = f.start(); e < f.trunc_order(); ++e) {
    mpq_class c = f.coeff(e);
    if (c == 0) continue;
    bool neg = c < 0;
    mpq_class a = neg ? mpq_class(-c) : c;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    bool unit = a == 1 && e != 0;
    if (!unit) os << a.get_str();
    if (e != 0) {
      if (!unit) os << "*";
      os << "q";
      if (e != 1) os << "^" << e;
    }
  }
  if (first) os << "0";
  os << " + O(q";
  if (f.trunc_order() != 1) os << "^" << f.trunc_order();
  os << ")";
  return os.str();
}

}  // namespace meroform
