#include "meroform/decomp.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace meroform {

namespace mp = boost::multiprecision;

FormExpr phi_class(const mpz_class& jA) {
  if (jA == 0) return FormExpr::generator(Canonical::E4);
  if (jA == 1728) return FormExpr::generator(Canonical::E6);
  return FormExpr::pole_form(jA);
}

FormExpr phi(long long D, Precision prec) {
  check_discriminant(D);
  if (D == -3) return FormExpr::generator(Canonical::E4);
  if (D == -4) return FormExpr::generator(Canonical::E6);
  ClassPolynomial H = class_polynomial(D, prec);
  int h = H.degree();
  FormExpr out;
  for (int i = 0; i <= h; ++i) {
    const mpz_class& c = H.coeffs[static_cast<size_t>(i)];
    if (c == 0) continue;
    out += FormExpr::monomial({3 * i, 0, h - i}, QuadRational(mpq_class(c)));
  }
  return out;
}

namespace {

int j_order(const mpz_class& jA) {
  if (jA == 0) return 3;
  if (jA == 1728) return 2;
  return 1;
}

int phi_weight(const mpz_class& jA) {
  if (jA == 0) return 4;
  if (jA == 1728) return 6;
  return 12;
}

QuasiExpr to_quasi(const FormExpr& f) {
  QuasiExpr q;
  for (const auto& fr : f.fractions()) {
    if (!fr.poles.empty()) throw DecompositionError("to_quasi: expression has poles");
    for (const auto& [m, c] : fr.numerator) {
      if (c.surd() != 0) throw DecompositionError("to_quasi: irrational coefficient");
      q += QuasiExpr::from_monomial(m) * c.rational();
    }
  }
  return q;
}

long squarefree_part(long long n) {
  if (n < 0) n = -n;
  long s = 1;
  for (long long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e % 2) s *= static_cast<long>(p);
  }
  return s * static_cast<long>(n);
}

std::string exp_string(const Real& e) {
  if (e == 0) return "-inf";
  return std::to_string(decimal_exponent(e));
}

}  // namespace

std::vector<FormExpr> psi_basis(int weight, const mpz_class& jA) {
  WeightTriple t = weight_triple(weight);
  std::vector<FormExpr> out;
  FormExpr base = FormExpr::monomial({t.delta, t.epsilon, 0});
  FormExpr pf = FormExpr::pole_form(jA);
  for (int m = 0; m < t.M; ++m) out.push_back(base * pf.pow(m) * FormExpr::monomial({0, 0, t.M - m}));
  return out;
}

int psi_order(int weight, const mpz_class& jA, int m) {
  WeightTriple t = weight_triple(weight);
  int o = m * j_order(jA);
  if (jA == 0) o += t.delta;
  if (jA == 1728) o += t.epsilon;
  return o;
}

// ---------------------------------------------------------------------------

namespace {

// Expresses an exact cusp form (coefficients of q^1..q^dim) on the monomials
// Delta^i E4^{delta+3(M-i)} E6^epsilon, i = 1..M.
FormExpr cusp_series_to_expr(const QSeries& f, int weight) {
  int dim = dim_cusp(weight);
  FormExpr out;
  if (dim == 0) return out;
  WeightTriple t = weight_triple(weight);
  int n = dim + 2;
  QSeries e4 = eisenstein(4, n), e6 = eisenstein(6, n);
  QSeries d = (e4.pow(3) - e6.pow(2)) * mpq_class(1, 1728);
  QSeries rest = f.truncated(std::min(f.trunc_order(), n));
  for (int i = 1; i <= t.M; ++i) {
    mpq_class c = rest.coeff(i);
    if (c == 0) continue;
    QSeries mono = d.pow(i) * e4.pow(t.delta + 3 * (t.M - i)) * e6.pow(t.epsilon);
    rest = rest - mono.truncated(std::min(mono.trunc_order(), rest.trunc_order())) * c;
    out += FormExpr::monomial({t.delta + 3 * (t.M - i), t.epsilon, i}, QuadRational(c));
  }
  return out;
}

QuadRational to_quad(const HNumber& h, long s) {
  // coords on {1, sqrt(s)} or {1, sqrt(s), i, i sqrt(s)}
  for (size_t i = 2; i < h.coords.size(); ++i)
    if (h.coords[i] != 0) throw DecompositionError("non-real algebraic coefficient " + h.to_string());
  mpq_class b = h.coords.size() > 1 ? h.coords[1] : mpq_class(0);
  return QuadRational(h.coords[0], b, s);
}

HBasis real_basis(long long D, Precision prec) {
  PrecisionScope scope(prec);
  HBasis b;
  b.D = D;
  long s = squarefree_part(D);
  b.values = {Complex(1)};
  b.labels = {"1"};
  if (s != 1) {
    b.values.emplace_back(mp::sqrt(Real(s)));
    b.labels.push_back("sqrt(" + std::to_string(s) + ")");
  }
  return b;
}

}  // namespace

Decomposition decompose(int k, long long D, Precision prec, const DecomposeOptions& opt) {
  FkdSpec{k, D, std::nullopt}.validate();
  Decomposition out;
  out.k = k;
  out.D = D;
  PrecisionScope scope(prec);
  out.consistency_residual = 0;
  out.membership_ratio = 0;
  long s_base = squarefree_part(D);
  // recognition needs headroom independent of the requested output precision
  Precision rec(std::max(prec.digits, 150));
  Precision work = rec.with_extra(20);

  for (long long g : square_divisors(D)) {
    long long Dp = D / (g * g);
    auto reps = class_representatives(Dp, true);
    ClassPolynomial H = class_polynomial(Dp, rec);
    if (H.degree() != 1)
      throw DecompositionError("exact decomposition needs rational CM values; h(" + std::to_string(Dp) +
                               ") = " + std::to_string(H.degree()));
    mpz_class jA = -H.coeffs[0];
    const BQF& cls = reps.front();
    PrecisionScope wscope(work);
    CMPoint zA = cm_point(cls, work);
    Real y = zA.y();
    Real pi = real_pi();

    FormExpr phiA = phi_class(jA);
    int W = 2 * k + k * phi_weight(jA);
    auto psis = psi_basis(W, jA);
    auto T_phi = modified_taylor(to_quasi(phiA.pow(k)), zA.value, 2 * k, work);
    // principal part in the modified_taylor variable: pi^-k a^-k (4y^2)^-k w^-k
    Real P = 1 / (mp::pow(pi, k) * mp::pow(Real(cls.a), k) * mp::pow(4 * y * y, k));
    std::vector<Complex> target(static_cast<size_t>(k));
    Real scale = 0;
    for (int n = 0; n < k; ++n) {
      target[static_cast<size_t>(n)] = T_phi[static_cast<size_t>(n + k)] * P;
      scale = rmax(scale, target[static_cast<size_t>(n)].abs());
    }

    std::vector<std::pair<int, std::vector<Complex>>> alg;  // (m, Taylor coefficients)
    for (int m = 0; m < static_cast<int>(psis.size()); ++m) {
      int o = psi_order(W, jA, m);
      if (o >= k) continue;
      alg.emplace_back(m, modified_taylor(to_quasi(psis[static_cast<size_t>(m)]), zA.value, k, work));
    }
    std::vector<Complex> c(alg.size());
    std::vector<bool> pivot_row(static_cast<size_t>(k), false);
    for (size_t i = 0; i < alg.size(); ++i) {
      int o = psi_order(W, jA, alg[i].first);
      pivot_row[static_cast<size_t>(o)] = true;
      Complex rhs = target[static_cast<size_t>(o)];
      for (size_t l = 0; l < i; ++l) rhs -= c[l] * alg[l].second[static_cast<size_t>(o)];
      const Complex& diag = alg[i].second[static_cast<size_t>(o)];
      if (diag.abs() < mp::pow(Real(10), -(work.digits / 2)))
        throw DecompositionError("vanishing diagonal in the triangular solve");
      c[i] = rhs / diag;
    }
    for (int n = 0; n < k; ++n) {
      Complex r = target[static_cast<size_t>(n)];
      for (size_t i = 0; i < alg.size(); ++i) r -= c[i] * alg[i].second[static_cast<size_t>(n)];
      Real rel = scale == 0 ? r.abs() : r.abs() / scale;
      out.consistency_residual = rmax(out.consistency_residual, rel);
    }

    HBasis basis = real_basis(Dp, rec);
    FormExpr sum;
    for (size_t i = 0; i < alg.size(); ++i) {
      AlgebraicCoefficient ac;
      ac.cls = cls;
      ac.g = static_cast<long>(g);
      ac.m = alg[i].first;
      ac.order = psi_order(W, jA, ac.m);
      ac.raw = c[i];
      Real im_tol = mp::pow(Real(10), -(rec.digits * 8 / 10)) * rmax(Real(1), c[i].abs());
      if (mp::abs(c[i].im) > im_tol)
        throw DecompositionError("coefficient c_" + std::to_string(ac.m) + " is not real: " + to_string(c[i], 30));
      mpz_class bound;
      mpz_ui_pow_ui(bound.get_mpz_t(), 10, static_cast<unsigned long>(rec.digits * 3 / 10));
      auto h = recognize_in_H(Complex(c[i].re), basis, bound, rec);
      if (!h)
        throw DecompositionError("could not recognise c_" + std::to_string(ac.m) + " = " + to_decimal(c[i].re, 40) +
                                 " for class [" + cls.to_string() + "]");
      ac.value = *h;
      sum += psis[static_cast<size_t>(ac.m)] * to_quad(*h, s_base);
      out.coeffs.push_back(std::move(ac));
    }
    mpq_class weight_g(1);
    mpz_class gk;
    mpz_ui_pow_ui(gk.get_mpz_t(), static_cast<unsigned long>(g), static_cast<unsigned long>(k));
    weight_g = mpq_class(1) / mpq_class(gk);
    out.algebraic_part += sum.divided_by_pole(jA, k) * QuadRational(weight_g);
  }

  out.cusp_dim = dim_cusp(2 * k);
  if (!opt.compute_remainder) {
    out.remainder_zero = out.cusp_dim == 0;
    out.remainder_reason = out.cusp_dim == 0 ? "S_2k is trivial" : "not computed";
    return out;
  }
  int R = opt.remainder_terms > 0 ? opt.remainder_terms : out.cusp_dim + 5;
  auto fc = fourier_coeffs(k, D, R, prec, opt.fourier);
  RSeries alg = out.algebraic_part.expand(R + 1).to_real();
  bool all_small = true;
  for (int r = 1; r <= R; ++r) {
    const auto& f = fc[static_cast<size_t>(r - 1)];
    RemainderCoeff rc;
    rc.r = r;
    rc.value = f.value - alg.coeff(r);
    rc.error = f.error();
    if (mp::abs(rc.value) > 10 * rc.error) all_small = false;
    out.cusp_remainder.push_back(rc);
  }
  if (out.cusp_dim == 0) {
    out.remainder_zero = true;
    out.remainder_reason = "S_2k is trivial";
  } else {
    out.remainder_zero = all_small;
    out.remainder_reason = all_small ? "numerically zero within certified error" : "nonzero cusp form";
    auto basis = cusp_basis(2 * k, R + 1);
    for (int r = out.cusp_dim + 1; r <= R; ++r) {
      Real pred = 0, err = out.cusp_remainder[static_cast<size_t>(r - 1)].error;
      for (int i = 0; i < out.cusp_dim; ++i) {
        Real bc = to_real(basis[static_cast<size_t>(i)].coeff(r));
        pred += out.cusp_remainder[static_cast<size_t>(i)].value * bc;
        err += mp::abs(bc) * out.cusp_remainder[static_cast<size_t>(i)].error;
      }
      Real ratio = mp::abs(pred - out.cusp_remainder[static_cast<size_t>(r - 1)].value) / err;
      out.membership_ratio = rmax(out.membership_ratio, ratio);
    }
  }
  return out;
}

std::string Decomposition::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["D"] = D;
  j["algebraic"] = algebraic_part.to_string();
  auto coeffs_h = nlohmann::json::array();
  for (const auto& c : coeffs) {
    auto coords = nlohmann::json::array();
    for (const auto& x : c.value.coords) coords.push_back(x.get_str());
    coeffs_h.push_back({{"class", c.cls.to_string()},
                        {"content", c.g},
                        {"m", c.m},
                        {"value", c.value.to_string()},
                        {"basis", c.value.labels},
                        {"coords", coords}});
  }
  j["coeffs_H"] = coeffs_h;
  j["consistency_residual_exp"] = exp_string(consistency_residual);
  j["cusp_dim"] = cusp_dim;
  auto rem = nlohmann::json::array();
  for (const auto& r : cusp_remainder) rem.push_back({r.r, to_decimal(r.value, 40), exp_string(r.error)});
  j["cusp_remainder"] = rem;
  j["remainder_zero"] = remainder_zero;
  j["remainder_reason"] = remainder_reason;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Hecke operators on f_{k,D}

namespace {

mpz_class ipow(long b, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
  return r;
}

void add_to(FkdCombination& c, long long D, const mpz_class& x) {
  if (x == 0) return;
  mpz_class& v = c[D];
  v += x;
  if (v == 0) c.erase(D);
}

FkdCombination apply_Tp(int k, const FkdCombination& in, long p) {
  FkdCombination out;
  mpz_class top = ipow(p, 2 * k - 1), mid = ipow(p, k - 1);
  for (const auto& [D, a] : in) {
    add_to(out, D * p * p, a * top);
    add_to(out, D, a * mid * kronecker(D, p));
    long long pp = static_cast<long long>(p) * p;
    if (D % pp == 0) {
      long long d = D / pp;
      long long r = ((d % 4) + 4) % 4;
      if (r == 0 || r == 1) add_to(out, d, a);
    }
  }
  return out;
}

FkdCombination combine(const FkdCombination& a, const FkdCombination& b, const mpz_class& sb) {
  FkdCombination out = a;
  for (const auto& [D, x] : b) add_to(out, D, x * sb);
  return out;
}

}  // namespace

FkdCombination hecke_on_f(int k, long long D, long n) {
  if (n < 1) throw DecompositionError("hecke_on_f: n must be positive");
  check_discriminant(D);
  FkdCombination cur{{D, 1}};
  long m = n;
  for (long p = 2; p <= m; ++p) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    // T_{p^{r+1}} = T_{p^r} T_p - p^{2k-1} T_{p^{r-1}}
    FkdCombination prev = cur, now = apply_Tp(k, cur, p);
    for (int r = 1; r < e; ++r) {
      FkdCombination next = combine(apply_Tp(k, now, p), prev, -ipow(p, 2 * k - 1));
      prev = std::move(now);
      now = std::move(next);
    }
    cur = std::move(now);
  }
  return cur;
}

std::string combination_to_string(int k, const FkdCombination& c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    const auto& [D, a] = *it;
    if (!first) os << (a < 0 ? " - " : " + ");
    else if (a < 0) os << "-";
    first = false;
    mpz_class ab = abs(a);
    if (ab != 1) os << ab.get_str() << "*";
    os << "f_{" << k << "," << D << "}";
  }
  return os.str();
}

HeckeCombination hecke_combination(int k, long long D, const std::vector<long long>& lambda, Precision prec,
                                   const DecomposeOptions& opt) {
  HeckeCombination out;
  out.k = k;
  out.D = D;
  out.lambda = lambda;
  out.obstruction = borcherds_obstruction(k, lambda);
  PrecisionScope scope(prec);
  for (size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == 0) continue;
    auto t = hecke_on_f(k, D, static_cast<long>(i + 1));
    out.combination = combine(out.combination, t, mpz_class(std::to_string(lambda[i])));
  }
  long n_max = static_cast<long>(lambda.size());
  int cusp_dim = dim_cusp(2 * k);
  // enough terms that the transported series still covers cusp_dim + 3 coefficients
  int R = std::max(opt.remainder_terms, static_cast<int>((cusp_dim + 4) * std::max<long>(n_max, 1)));
  DecomposeOptions sub = opt;
  sub.remainder_terms = R;

  Decomposition base = decompose(k, D, prec, sub);
  std::map<long long, Decomposition> parts;
  for (const auto& [Dp, a] : out.combination) parts.emplace(Dp, Dp == D ? base : decompose(k, Dp, prec, sub));

  FormExpr alg_sum;
  std::vector<RemainderCoeff> cons(static_cast<size_t>(R));
  for (int r = 1; r <= R; ++r) {
    cons[static_cast<size_t>(r - 1)].r = r;
    cons[static_cast<size_t>(r - 1)].value = 0;
    cons[static_cast<size_t>(r - 1)].error = 0;
  }
  for (const auto& [Dp, a] : out.combination) {
    const auto& d = parts.at(Dp);
    alg_sum += d.algebraic_part * QuadRational(mpq_class(a));
    for (int r = 1; r <= R; ++r) {
      auto& c = cons[static_cast<size_t>(r - 1)];
      c.value += to_real(a) * d.cusp_remainder[static_cast<size_t>(r - 1)].value;
      c.error += mp::abs(to_real(a)) * d.cusp_remainder[static_cast<size_t>(r - 1)].error;
    }
  }

  // sum lambda_n T_n on the projection of the base remainder onto S_2k
  auto cb = cusp_basis(2 * k, R + 1);
  QSeries zero(0, R + 1);
  std::vector<QSeries> transported_basis;
  for (const auto& B : cb) {
    QSeries acc(0, (R + 1 + static_cast<int>(n_max) - 1) / static_cast<int>(std::max<long>(n_max, 1)));
    for (long n = 1; n <= n_max; ++n) {
      if (lambda[static_cast<size_t>(n - 1)] == 0) continue;
      QSeries t = hecke_on_series(B, 2 * k, n);
      acc = acc + t.truncated(std::min(t.trunc_order(), acc.trunc_order())) *
                      mpq_class(mpz_class(std::to_string(lambda[static_cast<size_t>(n - 1)])));
    }
    transported_basis.push_back(acc);
  }
  int Rt = transported_basis.empty() ? R : transported_basis.front().trunc_order() - 1;
  bool zero_rem = true;
  for (int r = 1; r <= Rt; ++r) {
    RemainderCoeff rc;
    rc.r = r;
    rc.value = 0;
    rc.error = 0;
    for (size_t i = 0; i < transported_basis.size(); ++i) {
      mpq_class t = transported_basis[i].coeff(r);
      if (t == 0) continue;
      rc.value += base.cusp_remainder[i].value * to_real(t);
      rc.error += base.cusp_remainder[i].error * mp::abs(to_real(t));
    }
    if (rc.value != 0) zero_rem = false;
    out.transported_remainder.push_back(rc);
  }
  out.remainder_zero = zero_rem;

  // alg_D | phi_lambda - sum alpha_i alg_i, exact; must match the constituent remainders
  SurdSeries base_alg = base.algebraic_part.expand(R + 1);
  QSeries tr_rat(0, Rt + 1), tr_surd(0, Rt + 1);
  for (long n = 1; n <= n_max; ++n) {
    if (lambda[static_cast<size_t>(n - 1)] == 0) continue;
    mpq_class l(mpz_class(std::to_string(lambda[static_cast<size_t>(n - 1)])));
    QSeries a = hecke_on_series(base_alg.rational, 2 * k, n), b = hecke_on_series(base_alg.surd, 2 * k, n);
    tr_rat = tr_rat + a.truncated(std::min(a.trunc_order(), tr_rat.trunc_order())) * l;
    tr_surd = tr_surd + b.truncated(std::min(b.trunc_order(), tr_surd.trunc_order())) * l;
  }
  SurdSeries sum_alg = alg_sum.expand(R + 1);
  QSeries diff_rat = tr_rat - sum_alg.rational.truncated(tr_rat.trunc_order());
  QSeries diff_surd = tr_surd - sum_alg.surd.truncated(tr_surd.trunc_order());
  out.transport_mismatch = 0;
  Real sq = mp::sqrt(Real(std::max<long>(base_alg.base, sum_alg.base)));
  for (int r = 1; r < diff_rat.trunc_order(); ++r) {
    Real d = to_real(diff_rat.coeff(r)) + to_real(diff_surd.coeff(r)) * sq;
    const auto& c = cons[static_cast<size_t>(r - 1)];
    Real ratio = mp::abs(d - c.value) / rmax(c.error, mp::pow(Real(10), -prec.digits));
    out.transport_mismatch = rmax(out.transport_mismatch, ratio);
  }
  out.constituent_remainder = cons;

  // exact closed form: sum alpha_i alg_i plus the exact cusp form alg_D|phi - sum alpha_i alg_i
  FormExpr cusp_rat = cusp_series_to_expr(diff_rat, 2 * k);
  FormExpr cusp_surd = cusp_series_to_expr(diff_surd, 2 * k);
  long s = std::max<long>(base_alg.base, sum_alg.base);
  out.algebraic_part = alg_sum + cusp_rat + cusp_surd * QuadRational(0, 1, s);
  return out;
}

std::string HeckeCombination::to_json() const {
  nlohmann::ordered_json j;
  j["k"] = k;
  j["D"] = D;
  j["lambda"] = lambda;
  j["obstruction_pass"] = obstruction.pass;
  auto pr = nlohmann::json::array();
  for (const auto& p : obstruction.pairings) pr.push_back(p.get_str());
  j["obstruction_pairings"] = pr;
  j["combination"] = combination_to_string(k, combination);
  j["algebraic"] = algebraic_part.to_string();
  auto rem = nlohmann::json::array();
  for (const auto& r : transported_remainder) rem.push_back({r.r, to_decimal(r.value, 40), exp_string(r.error)});
  j["cusp_remainder"] = rem;
  auto cons = nlohmann::json::array();
  for (const auto& r : constituent_remainder) cons.push_back({r.r, to_decimal(r.value, 40), exp_string(r.error)});
  j["constituent_remainder"] = cons;
  j["transport_mismatch_ratio"] = to_decimal(transport_mismatch, 6);
  j["remainder_zero"] = remainder_zero;
  return j.dump(2);
}

}  // namespace meroform
