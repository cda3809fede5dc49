#include "cgsqe/upoly.hpp"

#include <algorithm>

namespace cgsqe {

UPoly UPoly::monomial(unsigned k, const QSqrt2& c) {
  std::vector<QSqrt2> v(k + 1);
  v[k] = c;
  return UPoly(std::move(v));
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& x, const UPoly& y) {
  if (x.is_zero() || y.is_zero()) return UPoly();
  std::vector<QSqrt2> out(x.c_.size() + y.c_.size() - 1);
  for (std::size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.c_.size(); ++j) out[i + j].addmul(x.c_[i], y.c_[j]);
  }
  return UPoly(std::move(out));
}

UPoly UPoly::scale(const QSqrt2& k) const {
  if (k.is_zero()) return UPoly();
  UPoly r = *this;
  for (auto& c : r.c_) c *= k;
  return r;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (degree() < d.degree()) return {UPoly(), *this};
  std::vector<QSqrt2> rem = c_;
  std::vector<QSqrt2> quo(c_.size() - d.c_.size() + 1);
  const QSqrt2 inv = d.lc().inverse();
  const std::size_t dd = d.c_.size() - 1;
  for (std::size_t k = quo.size(); k-- > 0;) {
    QSqrt2 q = rem[k + dd] * inv;
    if (q.is_zero()) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j].submul(q, d.c_[j]);
    quo[k] = std::move(q);
  }
  rem.resize(dd);
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<QSqrt2> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * QSqrt2(static_cast<long>(i));
  return UPoly(std::move(out));
}

UPoly UPoly::monic() const {
  if (is_zero() || lc().is_one()) return *this;
  return scale(lc().inverse());
}

UPoly UPoly::reflect() const {
  UPoly r = *this;
  for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i].negate();
  return r;
}

QSqrt2 UPoly::eval(const QSqrt2& t) const {
  QSqrt2 acc;
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc *= t;
    acc += c_[i];
  }
  return acc;
}

double UPoly::eval_double(double t) const {
  double acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i].to_double();
  return acc;
}

std::string UPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += c_[i].to_string();
    if (i > 0) out += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return out;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UPoly g = gcd(p, p.derivative());
  return (p / g).monic();
}

}  // namespace cgsqe
