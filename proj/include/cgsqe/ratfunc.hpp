#pragma once

#include <string>

#include "cgsqe/upoly.hpp"

namespace cgsqe {

/// Element of Q(sqrt2)(s) in lowest terms with a monic denominator.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(UPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : num_(c), den_(1) {}                 // NOLINT(google-explicit-constructor)
  /// Throws DivisionByZero for a zero denominator.
  RatFunc(UPoly num, UPoly den);

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc x, const RatFunc& y) { return x += y; }
  friend RatFunc operator-(RatFunc x, const RatFunc& y) { return x -= y; }
  friend RatFunc operator*(RatFunc x, const RatFunc& y) { return x *= y; }
  friend RatFunc operator/(RatFunc x, const RatFunc& y) { return x /= y; }
  friend RatFunc operator-(RatFunc x) {
    x.num_ = -x.num_;
    return x;
  }

  friend bool operator==(const RatFunc& x, const RatFunc& y) { return x.num_ == y.num_ && x.den_ == y.den_; }

  std::string to_string(const std::string& var = "s") const;

 private:
  void normalize();
  UPoly num_, den_;
};

}  // namespace cgsqe
