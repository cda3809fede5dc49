#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace cgsqe {

inline constexpr std::size_t kMaxVars = 12;

/// Exponent vector over a fixed variable universe. Slots beyond the ring's
/// variable count stay zero.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::initializer_list<unsigned> exps) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
  }

  static Monomial var(std::size_t i, unsigned power = 1) {
    Monomial m;
    m.set(i, power);
    return m;
  }

  unsigned operator[](std::size_t i) const { return exp_[i]; }
  void set(std::size_t i, unsigned e) {
    degree_ = degree_ - exp_[i] + e;
    exp_[i] = static_cast<std::uint16_t>(e);
    mask_ = e ? (mask_ | (1u << i)) : (mask_ & ~(1u << i));
  }

  unsigned degree() const { return degree_; }
  /// Bit i set iff variable i occurs.
  std::uint32_t support() const { return mask_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const {
    if ((mask_ & ~other.mask_) != 0 || degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.exp_[i] = static_cast<std::uint16_t>(exp_[i] + o.exp_[i]);
    r.degree_ = degree_ + o.degree_;
    r.mask_ = mask_ | o.mask_;
    return r;
  }

  /// Exact quotient; the caller guarantees o.divides(*this).
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    r.mask_ = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.exp_[i] = static_cast<std::uint16_t>(exp_[i] - o.exp_[i]);
      if (r.exp_[i]) r.mask_ |= 1u << i;
    }
    r.degree_ = degree_ - o.degree_;
    return r;
  }

  friend Monomial lcm(const Monomial& x, const Monomial& y) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.set(i, std::max(x.exp_[i], y.exp_[i]));
    return r;
  }
  friend Monomial gcd(const Monomial& x, const Monomial& y) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.set(i, std::min(x.exp_[i], y.exp_[i]));
    return r;
  }
  /// True when the two monomials share no variable.
  friend bool coprime(const Monomial& x, const Monomial& y) { return (x.mask_ & y.mask_) == 0; }

  friend bool operator==(const Monomial& x, const Monomial& y) { return x.exp_ == y.exp_; }
  friend bool operator!=(const Monomial& x, const Monomial& y) { return !(x == y); }

  /// Restriction to variables [from, to); other slots cleared.
  Monomial restrict(std::size_t from, std::size_t to) const {
    Monomial r;
    for (std::size_t i = from; i < to; ++i) r.set(i, exp_[i]);
    return r;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto e : exp_) h = (h ^ e) * 1099511628211ull;
    return h;
  }

  /// "x^2*y" style, "1" for the unit monomial.
  std::string to_string(const std::vector<std::string>& names) const {
    std::string out;
    for (std::size_t i = 0; i < names.size() && i < kMaxVars; ++i) {
      if (!exp_[i]) continue;
      if (!out.empty()) out += '*';
      out += names[i];
      if (exp_[i] > 1) out += '^' + std::to_string(exp_[i]);
    }
    return out.empty() ? "1" : out;
  }

 private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  std::uint32_t degree_ = 0;
  std::uint32_t mask_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace cgsqe
