#include "meroform/form_expr.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace meroform {

// ---------------------------------------------------------------------------
// QuadRational

QuadRational::QuadRational(mpq_class a, mpq_class b, long s) : a_(std::move(a)), b_(std::move(b)), s_(s) {
  if (s_ < 1) throw SeriesError("QuadRational: sqrt base must be positive");
  if (s_ == 1) {
    a_ += b_;
    b_ = 0;
  }
  if (b_ == 0) s_ = 1;
}

long QuadRational::merge_base(const QuadRational& x, const QuadRational& y) {
  if (x.b_ == 0) return y.s_;
  if (y.b_ == 0) return x.s_;
  if (x.s_ != y.s_) throw SeriesError("QuadRational: mixing different square-root bases");
  return x.s_;
}

QuadRational& QuadRational::operator+=(const QuadRational& o) {
  long s = merge_base(*this, o);
  *this = QuadRational(a_ + o.a_, b_ + o.b_, s);
  return *this;
}

QuadRational& QuadRational::operator-=(const QuadRational& o) { return *this += -o; }

QuadRational& QuadRational::operator*=(const QuadRational& o) {
  long s = merge_base(*this, o);
  mpq_class a = a_ * o.a_ + b_ * o.b_ * s;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  *this = QuadRational(a, b, s);
  return *this;
}

QuadRational QuadRational::inverse() const {
  mpq_class n = a_ * a_ - b_ * b_ * s_;
  if (n == 0) throw SeriesError("QuadRational: division by zero");
  return QuadRational(a_ / n, -b_ / n, s_);
}

Real QuadRational::to_real() const {
  Real r = meroform::to_real(a_);
  if (b_ != 0) r += meroform::to_real(b_) * boost::multiprecision::sqrt(Real(s_));
  return r;
}

std::string QuadRational::to_string() const {
  std::ostringstream os;
  if (b_ == 0) {
    os << a_.get_str();
  } else if (a_ == 0) {
    os << "(" << b_.get_str() << ")*sqrt(" << s_ << ")";
  } else {
    os << "(" << a_.get_str() << " + (" << b_.get_str() << ")*sqrt(" << s_ << "))";
  }
  return os.str();
}

RSeries SurdSeries::to_real() const {
  RSeries r = to_real_series(rational);
  if (!surd.is_zero()) r = r + to_real_series(surd) * boost::multiprecision::sqrt(Real(base));
  return r;
}

// ---------------------------------------------------------------------------
// FormExpr

namespace {

void merge_poles(std::vector<PoleFactor>& into, const std::vector<PoleFactor>& from) {
  for (const auto& p : from) {
    auto it = std::find_if(into.begin(), into.end(), [&](const PoleFactor& q) { return q.j0 == p.j0; });
    if (it == into.end()) into.push_back(p);
    else it->power += p.power;
  }
  into.erase(std::remove_if(into.begin(), into.end(), [](const PoleFactor& q) { return q.power == 0; }), into.end());
  std::sort(into.begin(), into.end(), [](const PoleFactor& a, const PoleFactor& b) { return a.j0 < b.j0; });
}

Monomial operator+(const Monomial& a, const Monomial& b) { return {a.e4 + b.e4, a.e6 + b.e6, a.delta + b.delta}; }

}  // namespace

FormExpr FormExpr::constant(QuadRational c) { return monomial(Monomial{}, std::move(c)); }

FormExpr FormExpr::monomial(Monomial m, QuadRational c) {
  FormExpr f;
  if (c.is_zero()) return f;
  FormFraction fr;
  fr.numerator.emplace(m, std::move(c));
  f.parts_.push_back(std::move(fr));
  return f;
}

FormExpr FormExpr::generator(Canonical g) {
  switch (g) {
    case Canonical::E4: return monomial({1, 0, 0});
    case Canonical::E6: return monomial({0, 1, 0});
    case Canonical::Delta: return monomial({0, 0, 1});
    case Canonical::J: return monomial({3, 0, -1});
    case Canonical::E2: break;
  }
  throw SeriesError("E2 is not modular and has no FormExpr");
}

FormExpr FormExpr::pole_form(const mpz_class& j0) {
  return monomial({3, 0, 0}) + monomial({0, 0, 1}, QuadRational(mpq_class(-j0)));
}

FormExpr& FormExpr::operator+=(const FormExpr& o) {
  for (const auto& fr : o.parts_) {
    auto it = std::find_if(parts_.begin(), parts_.end(), [&](const FormFraction& x) { return x.poles == fr.poles; });
    if (it == parts_.end()) {
      parts_.push_back(fr);
    } else {
      for (const auto& [m, c] : fr.numerator) it->numerator[m] += c;
    }
  }
  canonicalize();
  return *this;
}

FormExpr& FormExpr::operator*=(const QuadRational& c) {
  for (auto& fr : parts_)
    for (auto& [m, x] : fr.numerator) x *= c;
  canonicalize();
  return *this;
}

FormExpr operator*(const FormExpr& a, const FormExpr& b) {
  FormExpr r;
  for (const auto& fa : a.parts_)
    for (const auto& fb : b.parts_) {
      FormFraction fr;
      fr.poles = fa.poles;
      merge_poles(fr.poles, fb.poles);
      for (const auto& [ma, ca] : fa.numerator)
        for (const auto& [mb, cb] : fb.numerator) fr.numerator[ma + mb] += ca * cb;
      FormExpr t;
      t.parts_.push_back(std::move(fr));
      r += t;
    }
  return r;
}

FormExpr FormExpr::pow(int n) const {
  if (n < 0) throw SeriesError("FormExpr::pow: negative exponent");
  FormExpr r = constant(QuadRational(1));
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

FormExpr FormExpr::divided_by_pole(const mpz_class& j0, int power) const {
  if (j0 == 0) return *this * monomial({-power, 0, 0});
  if (j0 == 1728) return *this * monomial({0, -power, 0});
  FormExpr r = *this;
  for (auto& fr : r.parts_) merge_poles(fr.poles, {PoleFactor{j0, power}});
  r.canonicalize();
  return r;
}

void FormExpr::canonicalize() {
  for (auto& fr : parts_)
    for (auto it = fr.numerator.begin(); it != fr.numerator.end();)
      it = it->second.is_zero() ? fr.numerator.erase(it) : std::next(it);
  parts_.erase(std::remove_if(parts_.begin(), parts_.end(), [](const FormFraction& f) { return f.numerator.empty(); }),
               parts_.end());
}

bool FormExpr::is_zero() const { return parts_.empty(); }

int FormExpr::weight() const {
  std::optional<int> w;
  for (const auto& fr : parts_) {
    int pw = 0;
    for (const auto& p : fr.poles) pw += 12 * p.power;
    for (const auto& [m, c] : fr.numerator) {
      int x = m.weight() - pw;
      if (w && *w != x) throw SeriesError("FormExpr is not weight-homogeneous");
      w = x;
    }
  }
  return w.value_or(0);
}

long FormExpr::surd_base() const {
  long s = 1;
  for (const auto& fr : parts_)
    for (const auto& [m, c] : fr.numerator)
      if (c.base() != 1) s = c.base();
  return s;
}

SurdSeries FormExpr::expand(int trunc) const {
  long s = surd_base();
  // Negative powers of Delta cost one order each; pole factors cost nothing
  // since E4^3 - j0*Delta starts with 1.
  int min_delta = 0;
  for (const auto& fr : parts_)
    for (const auto& [m, c] : fr.numerator) min_delta = std::min(min_delta, m.delta);
  int work = trunc - 2 * min_delta + 2;
  QSeries e4 = eisenstein(4, work), e6 = eisenstein(6, work);
  QSeries d = (e4.pow(3) - e6.pow(2)) * mpq_class(1, 1728);
  QSeries e4i = e4.inverse(), e6i = e6.inverse(), di = d.inverse();
  auto power = [&](const QSeries& f, const QSeries& fi, int e) { return e >= 0 ? f.pow(e) : fi.pow(-e); };

  SurdSeries out{QSeries(0, trunc), QSeries(0, trunc), s};
  int lowest = 0;
  for (const auto& fr : parts_)
    for (const auto& [m, c] : fr.numerator) lowest = std::min(lowest, m.delta);
  out.rational = QSeries(lowest, trunc);
  out.surd = QSeries(lowest, trunc);
  for (const auto& fr : parts_) {
    QSeries den(0, work);
    den.at(0) = 1;
    for (const auto& p : fr.poles) den = den * (e4.pow(3) - d * mpq_class(p.j0)).pow(p.power);
    QSeries deni = den.inverse();
    for (const auto& [m, c] : fr.numerator) {
      QSeries t = power(e4, e4i, m.e4) * power(e6, e6i, m.e6) * power(d, di, m.delta) * deni;
      if (t.trunc_order() < trunc) throw SeriesError("FormExpr::expand: internal truncation shortfall");
      t = t.truncated(trunc);
      if (c.rational() != 0) out.rational = out.rational + t * c.rational();
      if (c.surd() != 0) out.surd = out.surd + t * c.surd();
    }
  }
  return out;
}

bool FormExpr::same_form(const FormExpr& o) const {
  FormExpr diff = *this - o;
  if (diff.is_zero()) return true;
  // diff times all its denominators is holomorphic on H; it is determined by
  // dim M_W + (pole order at infinity) coefficients.
  int w = diff.weight();
  int den_weight = 0, neg_delta = 0;
  for (const auto& fr : diff.parts_) {
    int m4 = 0, m6 = 0, md = 0, pw = 0;
    for (const auto& [m, c] : fr.numerator) {
      m4 = std::min(m4, m.e4);
      m6 = std::min(m6, m.e6);
      md = std::min(md, m.delta);
    }
    for (const auto& p : fr.poles) pw += 12 * p.power;
    den_weight += -4 * m4 - 6 * m6 - 12 * md + pw;
    neg_delta += -md;
  }
  int total = w + den_weight;
  int terms = dim_modular(std::max(total, 0)) + neg_delta + 4;
  SurdSeries e = diff.expand(terms);
  return e.rational.is_zero() && e.surd.is_zero();
}

namespace {

std::string monomial_text(int e4, int e6, int d) {
  std::vector<std::string> f;
  auto add = [&](const char* name, int e) {
    if (e == 0) return;
    f.push_back(e == 1 ? std::string(name) : std::string(name) + "^" + std::to_string(e));
  };
  add("E4", e4);
  add("E6", e6);
  add("Delta", d);
  if (f.empty()) return "1";
  std::string s = f[0];
  for (size_t i = 1; i < f.size(); ++i) s += "*" + f[i];
  return s;
}

}  // namespace

std::string FormExpr::to_string() const {
  if (parts_.empty()) return "0";
  std::ostringstream os;
  bool first_part = true;
  for (const auto& fr : parts_) {
    int m4 = 0, m6 = 0, md = 0;
    for (const auto& [m, c] : fr.numerator) {
      m4 = std::min(m4, m.e4);
      m6 = std::min(m6, m.e6);
      md = std::min(md, m.delta);
    }
    std::string num;
    bool first = true;
    // Print highest Delta power first, matching the usual closed forms.
    std::vector<std::pair<Monomial, QuadRational>> terms(fr.numerator.begin(), fr.numerator.end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) { return a.first.delta > b.first.delta; });
    for (const auto& [m, c] : terms) {
      std::string mono = monomial_text(m.e4 - m4, m.e6 - m6, m.delta - md);
      std::string coef = c.to_string();
      bool neg = c.surd() == 0 ? c.rational() < 0 : (c.rational() == 0 && c.surd() < 0);
      if (neg) coef = (-c).to_string();
      if (!first) num += neg ? " - " : " + ";
      else if (neg) num += "-";
      first = false;
      if (coef == "1" && mono != "1") num += mono;
      else num += coef + (mono == "1" ? "" : "*" + mono);
    }
    std::string den = monomial_text(-m4, -m6, -md);
    for (const auto& p : fr.poles) {
      std::string f = "(E4^3 - " + p.j0.get_str() + "*Delta)";
      if (p.power != 1) f += "^" + std::to_string(p.power);
      den = den == "1" ? f : den + "*" + f;
    }
    if (!first_part) os << " + ";
    first_part = false;
    if (den == "1") os << "(" << num << ")";
    else os << "(" << num << ")/(" << den << ")";
  }
  return os.str();
}

}  // namespace meroform
