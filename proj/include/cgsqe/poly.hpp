#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cgsqe/monomial.hpp"
#include "cgsqe/qsqrt2.hpp"
#include "cgsqe/term_order.hpp"

namespace cgsqe {

class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Polynomial ring Q(sqrt2)[main | params]. The last `nparams` variables are
/// parameters; the main variables come first.
class Ring {
 public:
  Ring(std::vector<std::string> names, std::size_t nparams, TermOrder order);

  static std::shared_ptr<const Ring> make(std::vector<std::string> names, std::size_t nparams, TermOrder order) {
    return std::make_shared<const Ring>(std::move(names), nparams, order);
  }

  std::size_t nvars() const { return names_.size(); }
  std::size_t nparams() const { return nparams_; }
  std::size_t nmain() const { return names_.size() - nparams_; }
  bool is_param(std::size_t i) const { return i >= nmain(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const TermOrder& order() const { return order_; }

  int compare(const Monomial& x, const Monomial& y) const { return order_.compare(x, y, names_.size()); }

  std::vector<std::string> main_names() const { return {names_.begin(), names_.begin() + nmain()}; }
  std::vector<std::string> param_names() const { return {names_.begin() + nmain(), names_.end()}; }

  friend bool operator==(const Ring& x, const Ring& y) {
    return x.names_ == y.names_ && x.nparams_ == y.nparams_ && x.order_ == y.order_;
  }

 private:
  std::vector<std::string> names_;
  std::size_t nparams_;
  TermOrder order_;
};

using RingPtr = std::shared_ptr<const Ring>;

struct Term {
  Monomial mono;
  QSqrt2 coef;
};

/// Sparse polynomial; terms are kept strictly descending in the ring's order
/// with no zero coefficients.
class Poly {
 public:
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  Poly(RingPtr ring, const QSqrt2& c);
  /// Sorts and merges arbitrary terms.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);
  /// Trusts that `terms` is already canonical.
  static Poly from_sorted(RingPtr ring, std::vector<Term> terms);
  static Poly variable(RingPtr ring, std::size_t i, unsigned power = 1);
  static Poly monomial(RingPtr ring, const Monomial& m, const QSqrt2& c);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Term>& mutable_terms() { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  /// Constant value; requires is_constant().
  QSqrt2 constant_value() const { return terms_.empty() ? QSqrt2() : terms_[0].coef; }

  /// Leading monomial/coefficient under the ring order; f must be nonzero.
  const Monomial& lm() const;
  const QSqrt2& lc() const;

  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  /// Bitmask of variables that occur.
  std::uint32_t support() const;
  bool involves(std::size_t var) const { return (support() >> var) & 1u; }
  /// True when only parameters occur.
  bool in_params_only() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator+(Poly x, const Poly& y) { return x += y; }
  friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
  friend Poly operator*(const Poly& x, const Poly& y);
  Poly scale(const QSqrt2& c) const;
  Poly mul_term(const Monomial& m, const QSqrt2& c) const;
  Poly pow(unsigned e) const;

  /// Divides by the leading coefficient; zero stays zero.
  Poly monic() const;

  /// Exact substitution of the given variables; other variables untouched.
  Poly eval_partial(const std::map<std::size_t, QSqrt2>& assignment) const;
  Poly eval_partial(const std::map<std::string, QSqrt2>& assignment) const;
  /// Full evaluation; `point` covers every ring variable.
  QSqrt2 eval(const std::vector<QSqrt2>& point) const;

  /// Same polynomial in another ring; variables are matched by name.
  Poly to_ring(const RingPtr& target) const;

  std::string to_string() const;

  friend bool operator==(const Poly& x, const Poly& y);
  friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

 private:
  void check_ring(const Poly& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Parses expressions built from numbers, `r2`, ring variables, + - * ^ and
/// parentheses.
Poly parse_poly(const RingPtr& ring, std::string_view text);

/// Leading monomial in the main variables and its coefficient in the
/// parameters, i.e. the view of f in (K[params])[main].
struct LeadingData {
  Monomial lm;
  Poly lc;
};
LeadingData leading_data(const Poly& f);
LeadingData leading_data(const Poly& f, const TermOrder& ord);

/// Dense coefficients (constant term first) when f involves exactly one
/// variable; `var` receives its index.
std::optional<std::vector<QSqrt2>> univariate_view(const Poly& f, std::size_t* var = nullptr);

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace cgsqe
