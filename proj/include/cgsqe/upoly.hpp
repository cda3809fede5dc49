#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cgsqe/qsqrt2.hpp"

namespace cgsqe {

/// Dense univariate polynomial over Q(sqrt2); coefficient i multiplies t^i.
/// The coefficient vector never ends in a zero.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<QSqrt2> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(const QSqrt2& constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) c_.push_back(constant);
  }
  UPoly(long constant) : UPoly(QSqrt2(constant)) {}  // NOLINT(google-explicit-constructor)

  /// The monomial t^k.
  static UPoly monomial(unsigned k, const QSqrt2& c = QSqrt2(1));

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<QSqrt2>& coeffs() const { return c_; }
  QSqrt2 coeff(std::size_t i) const { return i < c_.size() ? c_[i] : QSqrt2(); }
  const QSqrt2& lc() const { return c_.back(); }

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  friend UPoly operator+(UPoly x, const UPoly& y) { return x += y; }
  friend UPoly operator-(UPoly x, const UPoly& y) { return x -= y; }
  friend UPoly operator-(UPoly x) {
    for (auto& c : x.c_) c.negate();
    return x;
  }
  friend UPoly operator*(const UPoly& x, const UPoly& y);
  UPoly scale(const QSqrt2& k) const;

  /// Euclidean division; throws DivisionByZero for a zero divisor.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  friend UPoly operator/(const UPoly& x, const UPoly& y) { return x.divmod(y).first; }
  friend UPoly operator%(const UPoly& x, const UPoly& y) { return x.divmod(y).second; }

  UPoly derivative() const;
  UPoly monic() const;
  /// p(t) -> p(-t)
  UPoly reflect() const;

  QSqrt2 eval(const QSqrt2& t) const;
  int sign_at(const Rat& t) const { return eval(QSqrt2(t)).sign(); }
  double eval_double(double t) const;

  friend bool operator==(const UPoly& x, const UPoly& y) { return x.c_ == y.c_; }
  friend bool operator!=(const UPoly& x, const UPoly& y) { return !(x == y); }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<QSqrt2> c_;
};

/// Monic gcd; gcd(0,0) = 0.
UPoly gcd(UPoly a, UPoly b);
/// p / gcd(p, p'), monic.
UPoly squarefree_part(const UPoly& p);

}  // namespace cgsqe
