#include "cgsqe/qsqrt2.hpp"

#include <cctype>
#include <functional>
#include <ostream>

namespace cgsqe {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rat pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rat(mpz_class(1), p) : Rat(p);
}

}  // namespace

Rat parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty number");
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rat result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    result = Rat(mpz_class(std::string(num)), d);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_neg = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_neg = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) throw ParseError("malformed exponent in '" + std::string(text) + "'");
      exponent = std::stol(std::string(exp_text));
      if (exp_neg) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    long frac_len = 0;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto int_part = s.substr(0, dot);
      auto frac_part = s.substr(dot + 1);
      if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
          (!frac_part.empty() && !all_digits(frac_part)))
        throw ParseError("malformed decimal '" + std::string(text) + "'");
      digits = std::string(int_part) + std::string(frac_part);
      frac_len = static_cast<long>(frac_part.size());
    } else {
      if (!all_digits(s)) throw ParseError("malformed number '" + std::string(text) + "'");
      digits = std::string(s);
    }
    if (digits.empty()) digits = "0";
    result = Rat(mpz_class(digits)) * pow10(exponent - frac_len);
  }
  return negative ? Rat(-result) : result;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

double rat_to_double(const Rat& r) { return r.get_d(); }

int QSqrt2::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: a + b*sqrt2 has the sign of the larger magnitude
  Rat a2 = a_ * a_;
  Rat b2 = 2 * b_ * b_;
  int c = cmp(a2, b2);
  return c > 0 ? sa : (c < 0 ? sb : 0);
}

QSqrt2 QSqrt2::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(sqrt2)");
  if (sgn(b_) == 0) return QSqrt2(Rat(1 / a_));
  Rat n = norm();
  return QSqrt2(Rat(a_ / n), Rat(-b_ / n));
}

QSqrt2& QSqrt2::operator+=(const QSqrt2& o) {
  a_ += o.a_;
  if (sgn(o.b_) != 0) b_ += o.b_;
  return *this;
}

QSqrt2& QSqrt2::operator-=(const QSqrt2& o) {
  a_ -= o.a_;
  if (sgn(o.b_) != 0) b_ -= o.b_;
  return *this;
}

QSqrt2& QSqrt2::operator*=(const QSqrt2& o) {
  const bool rb = sgn(b_) == 0;
  const bool ro = sgn(o.b_) == 0;
  if (rb && ro) {
    a_ *= o.a_;
  } else if (ro) {
    a_ *= o.a_;
    b_ *= o.a_;
  } else if (rb) {
    b_ = a_ * o.b_;
    a_ *= o.a_;
  } else {
    Rat na = a_ * o.a_ + 2 * b_ * o.b_;
    Rat nb = a_ * o.b_ + b_ * o.a_;
    a_.swap(na);
    b_.swap(nb);
  }
  return *this;
}

void QSqrt2::fma(const QSqrt2& x, const QSqrt2& y, bool subtract) {
  const bool rx = sgn(x.b_) == 0;
  const bool ry = sgn(y.b_) == 0;
  auto acc = subtract ? mpq_sub : mpq_add;
  thread_local Rat t;
  mpq_mul(t.get_mpq_t(), x.a_.get_mpq_t(), y.a_.get_mpq_t());
  acc(a_.get_mpq_t(), a_.get_mpq_t(), t.get_mpq_t());
  if (rx && ry) return;
  if (!rx && !ry) {
    mpq_mul(t.get_mpq_t(), x.b_.get_mpq_t(), y.b_.get_mpq_t());
    acc(a_.get_mpq_t(), a_.get_mpq_t(), t.get_mpq_t());
    acc(a_.get_mpq_t(), a_.get_mpq_t(), t.get_mpq_t());
  }
  if (!ry) {
    mpq_mul(t.get_mpq_t(), x.a_.get_mpq_t(), y.b_.get_mpq_t());
    acc(b_.get_mpq_t(), b_.get_mpq_t(), t.get_mpq_t());
  }
  if (!rx) {
    mpq_mul(t.get_mpq_t(), x.b_.get_mpq_t(), y.a_.get_mpq_t());
    acc(b_.get_mpq_t(), b_.get_mpq_t(), t.get_mpq_t());
  }
}

Rat QSqrt2::abs_upper_bound() const { return ::abs(a_) + Rat(3, 2) * ::abs(b_); }

double QSqrt2::to_double() const {
  if (sgn(b_) == 0) return a_.get_d();
  mpf_class a(a_, 256);
  mpf_class b(b_, 256);
  mpf_class r2(2, 256);
  r2 = sqrt(r2);
  mpf_class v(a + b * r2, 256);
  return v.get_d();
}

std::string QSqrt2::to_string() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return a_.get_str();
  std::string bpart;
  if (b_ == 1)
    bpart = "r2";
  else if (b_ == -1)
    bpart = "-r2";
  else
    bpart = b_.get_str() + "*r2";
  if (sa == 0) return bpart;
  return "(" + a_.get_str() + (sb > 0 ? "+" : "") + bpart + ")";
}

std::size_t QSqrt2::hash() const {
  std::hash<std::string> h;
  return h(a_.get_str()) * 31u + h(b_.get_str());
}

std::ostream& operator<<(std::ostream& os, const QSqrt2& x) { return os << x.to_string(); }

}  // namespace cgsqe
