#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cgsqe {

/// Arbitrary-precision rational; GMP keeps it canonical (reduced, positive
/// denominator, zero as 0/1).
using Rat = mpq_class;

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "3", "-2/7", "1.25", "-1.5e-3", "1e6" into an exact rational.
Rat parse_rational(std::string_view text);
std::string rat_to_string(const Rat& r);
double rat_to_double(const Rat& r);

/// Element a + b*sqrt(2) of Q(sqrt 2).
class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rat a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}

  static QSqrt2 sqrt2() { return QSqrt2(Rat(0), Rat(1)); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_one() const { return sgn(b_) == 0 && a_ == 1; }
  bool is_minus_one() const { return sgn(b_) == 0 && a_ == -1; }

  /// Exact sign of a + b*sqrt(2), decided by comparing a^2 with 2 b^2.
  int sign() const;

  QSqrt2 conjugate() const { return QSqrt2(a_, -b_); }
  /// Field norm a^2 - 2 b^2; nonzero for every nonzero element.
  Rat norm() const { return a_ * a_ - 2 * b_ * b_; }
  QSqrt2 inverse() const;

  QSqrt2& operator+=(const QSqrt2& o);
  QSqrt2& operator-=(const QSqrt2& o);
  QSqrt2& operator*=(const QSqrt2& o);
  QSqrt2& operator/=(const QSqrt2& o) { return *this *= o.inverse(); }
  /// *this -= x * y without materializing the product.
  void submul(const QSqrt2& x, const QSqrt2& y) { fma(x, y, true); }
  /// *this += x * y.
  void addmul(const QSqrt2& x, const QSqrt2& y) { fma(x, y, false); }
  void negate() {
    mpq_neg(a_.get_mpq_t(), a_.get_mpq_t());
    mpq_neg(b_.get_mpq_t(), b_.get_mpq_t());
  }

  friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
  friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
  friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
  friend QSqrt2 operator/(QSqrt2 x, const QSqrt2& y) { return x /= y; }
  friend QSqrt2 operator-(QSqrt2 x) {
    x.negate();
    return x;
  }

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const QSqrt2& x, const QSqrt2& y) { return !(x == y); }
  friend bool operator<(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QSqrt2& x, const QSqrt2& y) { return y < x; }
  friend bool operator<=(const QSqrt2& x, const QSqrt2& y) { return !(y < x); }
  friend bool operator>=(const QSqrt2& x, const QSqrt2& y) { return !(x < y); }

  QSqrt2 abs() const { return sign() < 0 ? -*this : *this; }
  /// Rational r with r >= |*this| (uses 3/2 > sqrt 2).
  Rat abs_upper_bound() const;

  /// Correctly rounded to within a few ulps even under heavy cancellation.
  double to_double() const;

  /// Canonical text: "3", "-1/2", "r2", "-3*r2", "(1+2*r2)", "(1/2-r2)".
  std::string to_string() const;
  /// True when to_string() needs no parentheses inside a product.
  bool is_simple() const { return sgn(a_) == 0 || sgn(b_) == 0; }

  std::size_t hash() const;

 private:
  void fma(const QSqrt2& x, const QSqrt2& y, bool subtract);

  Rat a_;
  Rat b_;
};

std::ostream& operator<<(std::ostream& os, const QSqrt2& x);

}  // namespace cgsqe
