#include "appendix.hpp"
#include "meroform/decomp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace meroform;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kPrecision = 3 };

struct Job {
  int k = 2;
  long long D = -3;
  std::string lambda;
  int prec = 200;
  int terms = 0;
  long rmax = 10;
  std::string format;
  std::string out;
  std::string name;
  std::string z = "0.1,1.3";
  std::vector<int> only;
  bool inject = false;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate(const Job& j, bool needs_k, bool needs_d) {
  if (j.prec < 30) throw UsageError("--prec must be at least 30");
  if (j.terms != 0 && j.terms < 10) throw UsageError("--terms must be at least 10");
  if (needs_k && j.k < 2) throw UsageError("-k must be at least 2");
  if (needs_d) check_discriminant(j.D);
}

int effective_terms(const Job& j) { return j.terms ? j.terms : std::max(300, 20 * j.k); }

std::vector<long long> parse_lambda(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw UsageError("bad --lambda entry '" + item + "'");
    } catch (const std::logic_error&) {
      throw UsageError("bad --lambda entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--lambda must be a comma-separated list of integers");
  return out;
}

Complex parse_z(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("--z expects x,y");
  try {
    return Complex(Real(s.substr(0, comma)), Real(s.substr(comma + 1)));
  } catch (const std::exception&) {
    throw UsageError("--z expects two decimal numbers x,y");
  }
}

std::string err_exp(const Real& e) { return e == 0 ? "-inf" : std::to_string(decimal_exponent(e)); }

void emit(const Job& j, const std::string& text) {
  if (j.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(j.out);
  if (!f) throw UsageError("cannot open output file " + j.out);
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string fmt(const Job& j, const char* dflt) { return j.format.empty() ? dflt : j.format; }

// ---------------------------------------------------------------------------

int cmd_series(const Job& j) {
  auto name = parse_canonical(j.name);
  if (!name) throw UsageError("unknown form '" + j.name + "' (E2, E4, E6, Delta, j)");
  if (j.terms != 0 && j.terms < 1) throw UsageError("--terms must be positive");
  int n = effective_terms(j);
  QSeries f = canonical_form(*name, n);
  std::string f_ = fmt(j, "text");
  if (f_ == "json") emit(j, to_json(f));
  else if (f_ == "tsv") {
    std::ostringstream os;
    for (int e = f.start(); e < f.trunc_order(); ++e) os << e << '\t' << f.coeff(e).get_str() << '\n';
    emit(j, os.str());
  } else emit(j, to_text(f));
  return kOk;
}

int cmd_classes(const Job& j) {
  validate(j, false, true);
  auto reps = class_representatives(j.D, true);
  std::string f_ = fmt(j, "text");
  if (f_ == "json") {
    json o;
    o["D"] = j.D;
    o["h"] = reps.size();
    auto forms = json::array();
    for (const auto& r : reps) forms.push_back({r.a, r.b, r.c});
    o["forms"] = forms;
    emit(j, o.dump(2));
  } else {
    std::ostringstream os;
    for (const auto& r : reps) os << (f_ == "tsv" ? "" : "[") << r.a << (f_ == "tsv" ? "\t" : ",") << r.b
                                  << (f_ == "tsv" ? "\t" : ",") << r.c << (f_ == "tsv" ? "" : "]") << '\n';
    emit(j, os.str());
  }
  return kOk;
}

int cmd_classpoly(const Job& j) {
  validate(j, false, true);
  ClassPolynomial H = class_polynomial(j.D, Precision(j.prec));
  std::string f_ = fmt(j, "text");
  if (f_ == "json") {
    json o;
    o["D"] = j.D;
    o["degree"] = H.degree();
    auto c = json::array();
    for (const auto& x : H.coeffs) c.push_back(x.get_str());
    o["coeffs"] = c;
    o["polynomial"] = H.to_string();
    emit(j, o.dump(2));
  } else if (f_ == "tsv") {
    std::ostringstream os;
    for (size_t i = 0; i < H.coeffs.size(); ++i) os << i << '\t' << H.coeffs[i].get_str() << '\n';
    emit(j, os.str());
  } else emit(j, H.to_string());
  return kOk;
}

int cmd_fourier(const Job& j) {
  validate(j, true, true);
  if (j.rmax < 0) throw UsageError("--rmax must be non-negative");
  Precision p(j.prec);
  std::vector<FourierCoefficient> cs;
  if (j.rmax > 0) cs = fourier_coeffs(j.k, j.D, j.rmax, p);
  std::string f_ = fmt(j, "tsv");
  int digits = std::min(j.prec, 60);
  if (f_ == "json") {
    auto rows = json::array();
    rows.push_back({0, "0", "-inf"});
    for (const auto& c : cs) rows.push_back({c.r, to_decimal(c.value, digits), err_exp(c.error())});
    json o;
    o["k"] = j.k;
    o["D"] = j.D;
    o["coefficients"] = rows;
    emit(j, o.dump(2));
  } else {
    std::ostringstream os;
    os << 0 << '\t' << 0 << '\t' << "-inf" << '\n';
    for (const auto& c : cs) os << c.r << '\t' << to_decimal(c.value, digits) << '\t' << err_exp(c.error()) << '\n';
    emit(j, os.str());
  }
  return kOk;
}

int cmd_direct(const Job& j) {
  validate(j, true, true);
  Precision p(j.prec);
  PrecisionScope scope(p);
  Complex z = parse_z(j.z);
  Real tol = boost::multiprecision::pow(Real(10), -std::min(j.prec - 10, 30));
  DirectResult r = f_direct(FkdSpec{j.k, j.D, std::nullopt}, z, tol, p);
  int digits = std::min(j.prec, 40);
  std::string f_ = fmt(j, "text");
  if (f_ == "json") {
    json o;
    o["k"] = j.k;
    o["D"] = j.D;
    o["z"] = j.z;
    o["re"] = to_decimal(r.value.re, digits);
    o["im"] = to_decimal(r.value.im, digits);
    o["tail_estimate_exp"] = err_exp(r.tail_estimate);
    if (r.tail_bound) o["tail_bound_exp"] = err_exp(*r.tail_bound);
    o["a_max"] = r.a_max;
    emit(j, o.dump(2));
  } else if (f_ == "tsv") {
    emit(j, to_decimal(r.value.re, digits) + "\t" + to_decimal(r.value.im, digits) + "\t" + err_exp(r.tail_estimate));
  } else {
    emit(j, "f_{" + std::to_string(j.k) + "," + std::to_string(j.D) + "}(" + j.z + ") = " + to_string(r.value, digits) +
                "\ntail estimate " + to_decimal(r.tail_estimate, 3) + ", a <= " + std::to_string(r.a_max));
  }
  return kOk;
}

std::string remainder_tsv(const std::vector<RemainderCoeff>& rem) {
  std::ostringstream os;
  for (const auto& c : rem) os << c.r << '\t' << to_decimal(c.value, 40) << '\t' << err_exp(c.error) << '\n';
  return os.str();
}

int cmd_decompose(const Job& j) {
  validate(j, true, true);
  Decomposition d = decompose(j.k, j.D, Precision(j.prec));
  std::string f_ = fmt(j, "json");
  if (f_ == "json") emit(j, d.to_json());
  else if (f_ == "tsv") emit(j, remainder_tsv(d.cusp_remainder));
  else {
    std::ostringstream os;
    os << "f_{" << j.k << "," << j.D << "} = " << d.algebraic_part.to_string() << " + cusp form\n";
    os << "remainder " << (d.remainder_zero ? "zero" : "nonzero") << " (" << d.remainder_reason << ")\n";
    os << remainder_tsv(d.cusp_remainder);
    emit(j, os.str());
  }
  return kOk;
}

int cmd_hecke(const Job& j) {
  validate(j, true, true);
  auto lambda = parse_lambda(j.lambda);
  HeckeCombination h = hecke_combination(j.k, j.D, lambda, Precision(j.prec));
  std::string f_ = fmt(j, "json");
  if (f_ == "json") emit(j, h.to_json());
  else if (f_ == "tsv") emit(j, remainder_tsv(h.transported_remainder));
  else {
    std::ostringstream os;
    os << "obstruction " << (h.obstruction.pass ? "passes" : "fails") << "\n";
    os << combination_to_string(j.k, h.combination) << " = " << h.algebraic_part.to_string() << " + cusp form\n";
    os << "remainder " << (h.remainder_zero ? "zero" : "nonzero") << "\n";
    os << remainder_tsv(h.transported_remainder);
    emit(j, os.str());
  }
  return h.obstruction.pass ? kOk : kMismatch;
}

int cmd_verify(const Job& j) {
  if (j.prec < 30) throw UsageError("--prec must be at least 30");
  appendix::Options o;
  o.prec = Precision(j.prec);
  o.only = std::set<int>(j.only.begin(), j.only.end());
  for (int c : o.only)
    if (c < 1 || c > 8) throw UsageError("--only takes criterion numbers 1..8");
  o.inject_wrong_constant = j.inject;
  auto results = appendix::run(o);
  std::ostringstream os;
  int passed = 0;
  for (const auto& r : results) {
    os << "[" << (r.pass ? "PASS" : "FAIL") << "] " << r.id << ". " << r.title << "\n";
    for (const auto& d : r.details) os << "    " << d << "\n";
    if (r.pass) ++passed;
  }
  os << passed << "/" << results.size() << " checks passed\n";
  emit(j, os.str());
  return passed == static_cast<int>(results.size()) ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meroform: meromorphic modular forms f_{k,D}"};
  app.require_subcommand(1);
  Job job;

  if (const char* t = std::getenv("MEROFORM_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(t, &end, 10);
    if (*t == '\0' || *end != '\0' || n < 1) {
      std::cerr << "error: MEROFORM_THREADS must be a positive integer\n";
      return kUsage;
    }
  }

  auto add_common = [&](CLI::App* s, bool kd) {
    if (kd) {
      s->add_option("-k", job.k, "half the weight (k >= 2)")->required();
      s->add_option("-D", job.D, "negative discriminant")->required()->allow_extra_args(false);
    }
    s->add_option("--prec", job.prec, "working precision in decimal digits (>= 30)");
    s->add_option("--terms", job.terms, "truncation order");
    s->add_option("--format", job.format, "json | tsv | text")->check(CLI::IsMember({"json", "tsv", "text"}));
    s->add_option("-o", job.out, "output file");
  };

  auto* series = app.add_subcommand("series", "q-expansion of E2, E4, E6, Delta or j");
  series->add_option("name", job.name, "form name")->required();
  add_common(series, false);

  auto* classes = app.add_subcommand("classes", "reduced primitive forms of discriminant D");
  classes->add_option("-D", job.D, "negative discriminant")->required();
  add_common(classes, false);

  auto* classpoly = app.add_subcommand("classpoly", "Hilbert class polynomial H_D");
  classpoly->add_option("-D", job.D, "negative discriminant")->required();
  add_common(classpoly, false);

  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients of f_{k,D}");
  add_common(fourier, true);
  fourier->add_option("--rmax", job.rmax, "largest r");

  auto* direct = app.add_subcommand("direct-eval", "f_{k,D}(z) by lattice summation");
  add_common(direct, true);
  direct->add_option("--z", job.z, "point x,y with y > 0");

  auto* decomp = app.add_subcommand("decompose", "algebraic part plus cusp form");
  add_common(decomp, true);

  auto* hecke = app.add_subcommand("hecke", "sum lambda_n f_{k,D} | T_n");
  add_common(hecke, true);
  hecke->add_option("--lambda", job.lambda, "comma-separated lambda_1,lambda_2,...")->required();

  auto* verify = app.add_subcommand("verify-appendix", "reproduce the worked examples");
  verify->add_option("--prec", job.prec, "working precision in decimal digits (>= 30)");
  verify->add_option("--only", job.only, "criterion numbers to run")->delimiter(',');
  verify->add_flag("--inject-wrong-constant", job.inject, "self-test: perturb expected constants");
  verify->add_option("-o", job.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*series) return cmd_series(job);
    if (*classes) return cmd_classes(job);
    if (*classpoly) return cmd_classpoly(job);
    if (*fourier) return cmd_fourier(job);
    if (*direct) return cmd_direct(job);
    if (*decomp) return cmd_decompose(job);
    if (*hecke) return cmd_hecke(job);
    if (*verify) return cmd_verify(job);
  } catch (const PrecisionError& e) {
    std::cerr << "precision failure: " << e.what() << "\n";
    return kPrecision;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DecompositionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
