#include "appendix.hpp"

#include "meroform/decomp.hpp"

#include <complex>
#include <sstream>

namespace meroform::appendix {

namespace mp = boost::multiprecision;

namespace {

std::string sci(const Real& x, int digits = 3) { return to_decimal(x, digits); }

std::string mono_string(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  auto put = [&](const char* name, int e) {
    if (e == 0) return;
    if (!first) os << "*";
    first = false;
    os << name;
    if (e != 1) os << "^" << e;
  };
  put("E4", m.e4);
  put("E6", m.e6);
  put("Delta", m.delta);
  if (first) os << "1";
  return os.str();
}

FormExpr over_e4(int k, const std::vector<std::pair<Monomial, QuadRational>>& terms) {
  FormExpr num;
  for (const auto& [m, c] : terms) num += FormExpr::monomial(m, c);
  return num.divided_by_pole(0, k);
}

// Per-monomial ratio ours/printed for single-fraction expressions with equal poles.
std::string ratio_report(const FormExpr& ours, const FormExpr& printed) {
  const auto& a = ours.fractions();
  const auto& b = printed.fractions();
  if (a.size() != 1 || b.size() != 1 || !(a[0].poles == b[0].poles)) return "different pole structure";
  std::ostringstream os;
  std::map<Monomial, std::pair<QuadRational, QuadRational>> u;
  for (const auto& [m, c] : a[0].numerator) u[m].first = c;
  for (const auto& [m, c] : b[0].numerator) u[m].second = c;
  bool first = true;
  for (const auto& [m, cc] : u) {
    if (!first) os << "; ";
    first = false;
    os << mono_string(m) << ": ";
    if (cc.second.is_zero()) os << "absent in printed form";
    else if (cc.first.is_zero()) os << "absent in computed form";
    else os << "computed/printed = " << (cc.first * cc.second.inverse()).to_string();
  }
  return os.str();
}

QuadRational surd3(const mpq_class& b) { return QuadRational(0, b, 3); }

mpq_class q(const char* s) { return mpq_class(s); }

// ---------------------------------------------------------------------------

CheckResult criterion1(const Options& opt) {
  CheckResult r{1, "D=-3 closed forms for k in {2,3,4,5,7} with zero cusp remainder", true, {}};
  struct Row {
    int k;
    const char* printed_text;
    FormExpr printed;
  };
  std::vector<Row> rows = {
      {2, "-2^8 Delta/E4^2", over_e4(2, {{{0, 0, 1}, q("-256")}})},
      {3, "-2^9 E6 Delta/(3 sqrt3 E4^3)", over_e4(3, {{{0, 1, 1}, surd3(q("-512/9"))}})},
      {4, "(2^16 3^2 Delta^2 - 2^6 Delta E4^3)/(3 E4^4)",
       over_e4(4, {{{0, 0, 2}, q("196608")}, {{3, 0, 1}, q("-64/3")}})},
      {5, "(2^17 3^3 E6 Delta^2 - 2^5 13 E4^3 E6 Delta)/(3^4 sqrt3 E4^5)",
       over_e4(5, {{{0, 1, 2}, surd3(q("131072/9"))}, {{3, 1, 1}, surd3(q("-416/243"))}})},
      {7, "(-2^25 3^5 5 E6 Delta^3 + 2^13 3^2 31 E4^3 E6 Delta^2 - 2^7 E4^6 E6 Delta)/(3^6 5 sqrt3 E4^7)",
       over_e4(7, {{{0, 1, 3}, surd3(q("-33554432/9"))},
                   {{3, 1, 2}, surd3(q("253952/1215"))},
                   {{6, 1, 1}, surd3(q("-128/10935"))}})},
  };
  int verbatim = 0;
  for (const auto& row : rows) {
    Decomposition d = decompose(row.k, -3, opt.prec);
    bool same = d.algebraic_part.same_form(row.printed);
    Real worst = 0;
    for (const auto& c : d.cusp_remainder) worst = rmax(worst, mp::abs(c.value) / rmax(c.error, Real(1e-300)));
    bool rem_ok = d.remainder_zero && worst <= 1;
    std::ostringstream os;
    os << "k=" << row.k << ": " << (same ? "matches printed form" : "DIFFERS from printed form") << "; remainder "
       << (rem_ok ? "zero" : "NONZERO") << " (dim S_" << 2 * row.k << " = " << d.cusp_dim
       << ", max |fourier - closed form|/certified error = " << sci(worst) << ")";
    r.details.push_back(os.str());
    r.details.push_back("    computed: " + d.algebraic_part.to_string());
    if (!same) {
      r.details.push_back("    printed:  " + std::string(row.printed_text));
      r.details.push_back("    diff:     " + ratio_report(d.algebraic_part, row.printed));
    }
    if (same) ++verbatim;
    if (!same || !rem_ok) r.pass = false;
  }
  // k = 6 row: the algebraic part of the table entry
  Decomposition d6 = decompose(6, -3, opt.prec, {0, {}, false});
  FormExpr printed6 = over_e4(6, {{{0, 0, 3}, q("-16777216")}, {{3, 0, 2}, q("8192")}});
  bool same6 = d6.algebraic_part.same_form(printed6);
  if (same6) ++verbatim;
  r.details.push_back(std::string("k=6: algebraic part ") + (same6 ? "matches" : "DIFFERS from") +
                      " printed (-2^24 Delta^3 + 2^13 Delta^2 E4^3)/E4^6");
  r.details.push_back(std::to_string(verbatim) + "/6 table rows reproduced verbatim");
  return r;
}

CheckResult criterion2(const Options& opt) {
  CheckResult r{2, "k=6, D=-3: C0 = -2^24, C1 = 2^13, cusp coefficient C", true, {}};
  PrecisionScope scope(opt.prec);
  Decomposition d = decompose(6, -3, opt.prec);
  mpq_class want0 = opt.inject_wrong_constant ? mpq_class(-16777215) : mpq_class(-16777216);
  mpq_class want1(8192);
  bool c_ok = d.coeffs.size() == 2 && d.coeffs[0].value.is_rational() && d.coeffs[1].value.is_rational() &&
              d.coeffs[0].value.coords[0] == want0 && d.coeffs[1].value.coords[0] == want1;
  for (const auto& c : d.coeffs) r.details.push_back("C" + std::to_string(c.m) + " = " + c.value.to_string());
  if (!c_ok) {
    r.pass = false;
    r.details.push_back("expected C0 = " + want0.get_str() + ", C1 = " + want1.get_str());
  }
  const auto& cf = d.cusp_remainder.front();
  r.details.push_back("C (fourier) = " + to_decimal(cf.value, 30) + " +- " + sci(cf.error));

  Precision p60(60);
  PrecisionScope s60(p60.with_extra(10));
  Complex z(Real("0.1"), Real("1.0"));
  DirectResult dr = f_direct(FkdSpec{6, -3, std::nullopt}, z, Real("1e-25"), p60);
  Complex cd = (dr.value - eval_form(d.algebraic_part, z, p60)) / eval_forms(z, p60).delta;
  Real rel = mp::abs(cd.re - cf.value) / mp::abs(cf.value);
  bool self_ok = rel < Real("1e-20");
  r.details.push_back("C (direct, z = 0.1+1.0i, a <= " + std::to_string(dr.a_max) + ") = " + to_decimal(cd.re, 30) +
                      "; relative difference " + sci(rel) + (self_ok ? " (>= 20 digits)" : " (FAIL: < 20 digits)"));
  if (!self_ok) r.pass = false;

  Real printed("-550.5139");
  Real diff = mp::abs(cf.value - printed);
  bool lit_ok = diff < Real("5e-4");
  r.details.push_back(std::string("printed C ~ -550.5139: ") + (lit_ok ? "matches" : "DIFFERS") + " (|C - printed| = " +
                      sci(diff) + ")");
  if (!lit_ok) {
    r.pass = false;
    Real alt = 2 * mp::pow(real_pi(), 6) * cf.value;
    r.details.push_back("    2*pi^6*C = " + to_decimal(alt, 12) + " (|2 pi^6 C - printed| = " +
                        sci(mp::abs(alt - printed)) + "): the printed value is twice c_1 before the pi^-k factor");
  }
  return r;
}

CheckResult criterion3(const Options& opt) {
  CheckResult r{3, "Delta(z_-3)^3 = -Omega_-3^36", true, {}};
  PrecisionScope scope(opt.prec);
  CMPoint z = cm_point(class_representatives(-3, true).front(), opt.prec);
  Complex d = eval_forms(z.value, opt.prec).delta;
  Real om = chowla_selberg(-3, opt.prec);
  Real target = -mp::pow(om, 36);
  if (opt.inject_wrong_constant) target *= Real(1) + mp::pow(Real(10), -30);
  Complex d3 = d * d * d;
  Real err = (d3 - Complex(target)).abs();
  r.pass = err < mp::pow(Real(10), -50);
  r.details.push_back("Omega_-3 = " + to_decimal(om, 30));
  r.details.push_back("|Delta^3 + Omega^36| = " + sci(err) + " (tolerance 1e-50)");
  return r;
}

CheckResult criterion4(const Options& opt) {
  CheckResult r{4, "modified Taylor expansions at z_-3", true, {}};
  PrecisionScope scope(opt.prec);
  CMPoint z = cm_point(class_representatives(-3, true).front(), opt.prec);
  Real om = chowla_selberg(-3, opt.prec), pi = real_pi();
  Real tol = mp::pow(Real(10), -40);
  auto D = QuasiExpr::delta(), E4 = QuasiExpr::e4();
  struct Expect {
    const char* name;
    QuasiExpr f;
    int order;                                     // checked for m < order
    std::vector<std::pair<int, Real>> nonzero;     // (m, value)
  };
  Real om36 = mp::pow(om, 36), om42 = mp::pow(om, 42);
  Real wrong = opt.inject_wrong_constant ? Real(1) + mp::pow(Real(10), -30) : Real(1);
  std::vector<Expect> ex = {
      {"Delta^3", D.pow(3), 6, {{0, -om36 * wrong}, {3, -24 * mp::pow(pi, 3) * om42}}},
      {"Delta^2 E4^3", D.pow(2) * E4.pow(3), 6, {{3, -110592 * mp::pow(pi, 3) * om42}}},
      {"Delta E4^6", D * E4.pow(6), 6, {}},
      {"E4^6", E4.pow(6), 12, {{6, 12230590464 * mp::pow(pi, 6) * om36}, {9, -366917713920 * mp::pow(pi, 9) * om42}}},
  };
  for (const auto& e : ex) {
    auto t = modified_taylor(e.f, z.value, e.order, opt.prec);
    Real worst = 0;
    for (int m = 0; m < e.order; ++m) {
      Real want = 0;
      for (const auto& [mm, v] : e.nonzero)
        if (mm == m) want = v;
      worst = rmax(worst, (t[static_cast<size_t>(m)] - Complex(want)).abs());
    }
    bool ok = worst < tol;
    if (!ok) r.pass = false;
    r.details.push_back(std::string(e.name) + ": coefficients w^0..w^" + std::to_string(e.order - 1) +
                        " max deviation " + sci(worst) + (ok ? "" : " FAIL"));
  }
  // principal part of f_{6,-3}: w^-6 / (pi^6 3^6)
  Real y = z.y();
  Real P = 1 / (mp::pow(pi, 6) * mp::pow(4 * y * y, 6));
  Real dev = mp::abs(P - 1 / (mp::pow(pi, 6) * 729));
  if (dev >= tol) r.pass = false;
  r.details.push_back("f_{6,-3} principal part coefficient vs 1/(pi^6 3^6): deviation " + sci(dev));
  return r;
}

// Coefficients r = 1..rmax of sum_{a <= A} f^a extracted by a discrete Fourier transform.
std::vector<Real> dft_coefficients(int k, long long D, long A, int r_max, Precision prec) {
  const int N = 32;
  const Real y("1.5");
  PrecisionScope scope(prec);
  Real pi = real_pi();
  std::vector<Complex> vals;
  for (int j = 0; j < N; ++j) {
    Complex z(Real(j) / N, y);
    vals.push_back(f_direct_range(FkdSpec{k, D, std::nullopt}, z, 1, A, prec));
  }
  std::vector<Real> out;
  for (int r = 1; r <= r_max; ++r) {
    Complex s(0);
    for (int j = 0; j < N; ++j) s += vals[static_cast<size_t>(j)] * exp(Complex(Real(0), -2 * pi * r * j / N));
    out.push_back(s.re / N * mp::exp(2 * pi * r * y) / mp::pow(pi, k));
  }
  return out;
}

CheckResult criterion5(const Options& /*opt*/) {
  CheckResult r{5, "Fourier coefficients: Bessel formula vs direct summation vs closed form", true, {}};
  Precision p60(60);
  const long A = 128;
  const int r_max = 10;
  for (long long D : {-3LL, -4LL}) {
    for (int k = 2; k <= 7; ++k) {
      PrecisionScope scope(p60.with_extra(40));
      FourierOptions fo;
      fo.a_max = A;
      fo.use_double_tail = false;
      auto fc = fourier_coeffs(k, D, r_max, p60.with_extra(40), fo);
      auto dc = dft_coefficients(k, D, A, r_max, p60.with_extra(40));
      Real worst = 0;
      for (int i = 0; i < r_max; ++i)
        worst = rmax(worst, mp::abs(fc[static_cast<size_t>(i)].value - dc[static_cast<size_t>(i)]) /
                                mp::abs(fc[static_cast<size_t>(i)].value));
      bool ok = worst < Real("1e-25");
      // third leg: full certified coefficients against the exact closed form when S_2k = 0
      std::string third;
      if (dim_cusp(2 * k) == 0) {
        Decomposition d = decompose(k, D, p60, {r_max, {}, true});
        Real w = 0;
        for (const auto& c : d.cusp_remainder) w = rmax(w, mp::abs(c.value) / c.error);
        third = "; |full - closed form|/certified error <= " + sci(w);
        if (w > 1) ok = false;
      }
      if (!ok) r.pass = false;
      r.details.push_back("k=" + std::to_string(k) + " D=" + std::to_string(D) + ": a <= " + std::to_string(A) +
                          ", max relative |bessel - dft| over r <= 10: " + sci(worst) + third + (ok ? "" : " FAIL"));
    }
  }
  return r;
}

CheckResult criterion6(const Options& /*opt*/) {
  CheckResult r{6, "Hecke operators on f_{6,-3}: closed form vs double coset", true, {}};
  Precision p(50);
  PrecisionScope scope(p.with_extra(10));
  const int k = 6;
  const long long D = -3;
  Real tol("1e-24");
  auto f = [&](long long disc, const Complex& z) { return f_direct(FkdSpec{k, disc, std::nullopt}, z, tol, p).value; };
  std::vector<Complex> pts = {{Real("0.1"), Real("1.1")},
                              {Real("-0.3"), Real("1.2")},
                              {Real("0.23"), Real("0.95")},
                              {Real("0.41"), Real("1.4")},
                              {Real("-0.17"), Real("1.05")}};
  for (long pr : {2L, 3L}) {
    FkdCombination comb = hecke_on_f(k, D, pr);
    Real worst = 0;
    for (const auto& z : pts) {
      Complex closed(0);
      Real scale = 0;
      for (const auto& [disc, a] : comb) {
        Complex v = f(disc, z) * to_real(a);
        closed += v;
        scale = rmax(scale, v.abs());
      }
      Complex coset = f(D, z * Real(pr)) * mp::pow(Real(pr), 2 * k - 1);
      scale = rmax(scale, coset.abs());
      for (long j = 0; j < pr; ++j) coset += f(D, (z + Complex(Real(j))) / Real(pr)) / Real(pr);
      worst = rmax(worst, (closed - coset).abs() / scale);
    }
    bool ok = worst < Real("1e-15");
    if (!ok) r.pass = false;
    r.details.push_back("T_" + std::to_string(pr) + " f_{6,-3} = " + combination_to_string(k, comb) +
                        ": max relative deviation over 5 points " + sci(worst) + (ok ? "" : " FAIL"));
  }
  return r;
}

CheckResult criterion7(const Options& opt) {
  CheckResult r{7, "lambda = (24,1), k=6, D=-3: obstruction, vanishing remainder, rational closed form", true, {}};
  HeckeCombination h = hecke_combination(6, -3, {24, 1}, opt.prec);
  r.details.push_back(std::string("obstruction ") + (h.obstruction.pass ? "passes" : "FAILS"));
  if (!h.obstruction.pass) r.pass = false;
  Real worst = 0;
  for (const auto& c : h.transported_remainder) worst = rmax(worst, mp::abs(c.value));
  bool rem_ok = worst < mp::pow(Real(10), -80) && h.remainder_zero;
  if (!rem_ok) r.pass = false;
  r.details.push_back("combination: " + combination_to_string(6, h.combination));
  r.details.push_back("cusp remainder max |coefficient| = " + (worst == 0 ? std::string("0 (exact)") : sci(worst)));
  bool rational = h.algebraic_part.surd_base() == 1;
  if (!rational) r.pass = false;
  bool consistent = h.transport_mismatch < 1;
  if (!consistent) r.pass = false;
  r.details.push_back("constituent remainders vs exact transported algebraic parts: max |diff|/error = " +
                      sci(h.transport_mismatch) + (consistent ? "" : " FAIL"));
  r.details.push_back(std::string("algebraic part ") + (rational ? "in Q: " : "NOT rational: ") +
                      h.algebraic_part.to_string());

  // independent check of the closed form against direct summation
  {
    Precision p(50);
    PrecisionScope scope(p.with_extra(10));
    Complex z(Real("0.1"), Real("1.1"));
    Complex direct(0);
    for (const auto& [disc, a] : h.combination)
      direct += f_direct(FkdSpec{6, disc, std::nullopt}, z, Real("1e-24"), p).value * to_real(a);
    Complex closed = eval_form(h.algebraic_part, z, p);
    Real rel = (direct - closed).abs() / direct.abs();
    bool ok = rel < Real("1e-15");
    if (!ok) r.pass = false;
    r.details.push_back("closed form vs direct summation at 0.1+1.1i: relative deviation " + sci(rel) +
                        (ok ? "" : " FAIL"));
  }

  FormExpr printed = over_e4(6, {{{0, 0, 3}, q("-218103808")}, {{3, 0, 2}, q("1368064/3")}});
  bool same = h.algebraic_part.same_form(printed);
  r.details.push_back(std::string("printed (-2^24 3 13 Delta^3 + 2^13 167 Delta^2 E4^3)/(3 E4^6): ") +
                      (same ? "agrees" : "documented discrepancy"));
  if (!same) {
    bool has_other_pole = false;
    for (const auto& fr : h.algebraic_part.fractions())
      for (const auto& pf : fr.poles)
        if (pf.j0 != 0) has_other_pole = true;
    if (has_other_pole)
      r.details.push_back("    the combination contains f_{6,-12}, which has a pole at the CM point of [1,0,3] "
                          "(j = 54000); the printed form has poles only where E4 vanishes");
    r.details.push_back("    the printed expansion pairs 24 with T_2; lambda_n is the coefficient of q^-n, so "
                        "(24,1) means 24 T_1 + T_2");
  }
  return r;
}

// Independent oracles: reduced forms by brute force and j by a double-precision q-expansion.
std::vector<std::array<long long, 3>> brute_reduced(long long D) {
  std::vector<std::array<long long, 3>> out;
  for (long long a = 1; 3 * a * a <= -D; ++a)
    for (long long b = -a + 1; b <= a; ++b) {
      long long num = b * b - D;
      if (num % (4 * a)) continue;
      long long c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      long long g = std::gcd(std::gcd(a, std::llabs(b)), c);
      if (g != 1) continue;
      out.push_back({a, b, c});
    }
  return out;
}

std::complex<long double> j_oracle(long double x, long double y) {
  using C = std::complex<long double>;
  const long double pi = 3.141592653589793238462643383279502884L;
  C q = std::exp(C(-2 * pi * y, 2 * pi * x));
  C e4 = 1, delta = q, qn = 1;
  for (int n = 1; n < 80; ++n) {
    qn *= q;
    long double s3 = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) s3 += static_cast<long double>(d) * d * d;
    e4 += 240.0L * s3 * qn;
  }
  C p = 1;
  qn = 1;
  for (int n = 1; n < 80; ++n) {
    qn *= q;
    p *= (C(1) - qn);
  }
  C p2 = p * p, p4 = p2 * p2, p8 = p4 * p4, p16 = p8 * p8;
  delta *= p16 * p8;
  return e4 * e4 * e4 / delta;
}

CheckResult criterion8(const Options& opt) {
  CheckResult r{8, "class numbers and class polynomials", true, {}};
  for (long long D : {-3LL, -4LL, -7LL, -8LL, -11LL, -12LL, -23LL}) {
    auto brute = brute_reduced(D);
    auto reps = class_representatives(D, true);
    bool forms_ok = reps.size() == brute.size();
    for (const auto& f : reps) {
      bool found = false;
      for (const auto& b : brute)
        if (b[0] == f.a && b[1] == f.b && b[2] == f.c) found = true;
      forms_ok = forms_ok && found;
    }
    // oracle polynomial
    std::vector<std::complex<long double>> poly{1};
    for (const auto& b : brute) {
      long double x = -static_cast<long double>(b[1]) / (2 * b[0]);
      long double y = std::sqrt(static_cast<long double>(-D)) / (2 * b[0]);
      auto j = j_oracle(x, y);
      std::vector<std::complex<long double>> next(poly.size() + 1, 0);
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i + 1] += poly[i];
        next[i] -= poly[i] * j;
      }
      poly = next;
    }
    ClassPolynomial H = class_polynomial(D, opt.prec);
    bool poly_ok = H.degree() + 1 == static_cast<int>(poly.size());
    for (size_t i = 0; poly_ok && i < poly.size(); ++i) {
      long double re = std::round(poly[i].real());
      poly_ok = H.coeffs[i] == mpz_class(std::to_string(static_cast<long long>(re)));
    }
    if (D == -23)
      poly_ok = poly_ok && H.to_string() == "X^3 + 3491750*X^2 - 5151296875*X + 12771880859375";
    bool ok = forms_ok && poly_ok;
    if (!ok) r.pass = false;
    r.details.push_back("D=" + std::to_string(D) + ": h = " + std::to_string(reps.size()) + ", H = " + H.to_string() +
                        (ok ? "" : " FAIL"));
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run(const Options& opt) {
  using Fn = CheckResult (*)(const Options&);
  const Fn fns[] = {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8};
  std::vector<CheckResult> out;
  for (int i = 0; i < 8; ++i) {
    if (!opt.only.empty() && !opt.only.count(i + 1)) continue;
    try {
      out.push_back(fns[i](opt));
    } catch (const std::exception& e) {
      out.push_back({i + 1, "criterion " + std::to_string(i + 1), false, {std::string("error: ") + e.what()}});
    }
  }
  return out;
}

}  // namespace meroform::appendix
