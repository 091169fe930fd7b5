#include "meroform/quasimodular.hpp"

#include <optional>
#include <sstream>

namespace meroform {

namespace {

QuasiExpr single(QuasiExpr::Exps e, const mpq_class& c) {
  QuasiExpr q = QuasiExpr::constant(c);
  QuasiExpr r;
  // build through multiplication so terms_ stays private
  QuasiExpr g[3] = {QuasiExpr::e2star(), QuasiExpr::e4(), QuasiExpr::e6()};
  r = q;
  for (int i = 0; i < 3; ++i) r = r * g[i].pow(e[static_cast<size_t>(i)]);
  return r;
}

}  // namespace

QuasiExpr QuasiExpr::constant(const mpq_class& c) {
  QuasiExpr q;
  if (c != 0) q.terms_[{0, 0, 0}] = c;
  return q;
}

QuasiExpr QuasiExpr::e2star() {
  QuasiExpr q;
  q.terms_[{1, 0, 0}] = 1;
  return q;
}

QuasiExpr QuasiExpr::e4() {
  QuasiExpr q;
  q.terms_[{0, 1, 0}] = 1;
  return q;
}

QuasiExpr QuasiExpr::e6() {
  QuasiExpr q;
  q.terms_[{0, 0, 1}] = 1;
  return q;
}

QuasiExpr QuasiExpr::delta() { return (e4().pow(3) - e6().pow(2)) * mpq_class(1, 1728); }

QuasiExpr QuasiExpr::from_monomial(const Monomial& m) {
  if (m.e4 < 0 || m.e6 < 0 || m.delta < 0) throw SeriesError("QuasiExpr: negative exponent");
  return e4().pow(m.e4) * e6().pow(m.e6) * delta().pow(m.delta);
}

int QuasiExpr::weight() const {
  std::optional<int> w;
  for (const auto& [e, c] : terms_) {
    int x = 2 * e[0] + 4 * e[1] + 6 * e[2];
    if (w && *w != x) throw SeriesError("QuasiExpr is not weight-homogeneous");
    w = x;
  }
  return w.value_or(0);
}

QuasiExpr& QuasiExpr::operator+=(const QuasiExpr& o) {
  for (const auto& [e, c] : o.terms_) {
    mpq_class& x = terms_[e];
    x += c;
    if (x == 0) terms_.erase(e);
  }
  return *this;
}

QuasiExpr& QuasiExpr::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

QuasiExpr operator*(const QuasiExpr& a, const QuasiExpr& b) {
  QuasiExpr r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      QuasiExpr::Exps e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      mpq_class& x = r.terms_[e];
      x += ca * cb;
      if (x == 0) r.terms_.erase(e);
    }
  return r;
}

QuasiExpr QuasiExpr::pow(int n) const {
  if (n < 0) throw SeriesError("QuasiExpr::pow: negative exponent");
  QuasiExpr r = constant(1);
  QuasiExpr b = *this;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

QuasiExpr QuasiExpr::derivative() const {
  static const QuasiExpr dgen[3] = {
      (e2star().pow(2) - e4()) * mpq_class(1, 12),
      (e2star() * e4() - e6()) * mpq_class(1, 3),
      (e2star() * e6() - e4().pow(2)) * mpq_class(1, 2),
  };
  QuasiExpr r;
  for (const auto& [e, c] : terms_)
    for (int i = 0; i < 3; ++i) {
      if (e[static_cast<size_t>(i)] == 0) continue;
      Exps rest = e;
      rest[static_cast<size_t>(i)] -= 1;
      r += single(rest, c * e[static_cast<size_t>(i)]) * dgen[i];
    }
  return r;
}

Complex QuasiExpr::evaluate(const Complex& e2s, const Complex& e4v, const Complex& e6v) const {
  Complex sum(0);
  for (const auto& [e, c] : terms_) {
    Complex t(to_real(c));
    t *= meroform::pow(e2s, e[0]);
    t *= meroform::pow(e4v, e[1]);
    t *= meroform::pow(e6v, e[2]);
    sum += t;
  }
  return sum;
}

std::string QuasiExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    const char* names[3] = {"E2*", "E4", "E6"};
    for (int i = 0; i < 3; ++i) {
      if (e[static_cast<size_t>(i)] == 0) continue;
      os << "*" << names[i];
      if (e[static_cast<size_t>(i)] > 1) os << "^" << e[static_cast<size_t>(i)];
    }
  }
  return os.str();
}

std::vector<QuasiExpr> derivative_tower(const QuasiExpr& f, int n) {
  std::vector<QuasiExpr> out{f};
  for (int i = 0; i < n; ++i) out.push_back(out.back().derivative());
  return out;
}

}  // namespace meroform
