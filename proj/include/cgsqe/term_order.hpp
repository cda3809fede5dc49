#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "cgsqe/monomial.hpp"

namespace cgsqe {

enum class OrderKind { lex, grevlex, block };

/// Admissible term order. A block order compares variables [0, split) with
/// `first` and breaks ties on [split, n) with `second`; the first block holds
/// the main variables, the second the parameters.
class TermOrder {
 public:
  static TermOrder lex() { return TermOrder(OrderKind::lex); }
  static TermOrder grevlex() { return TermOrder(OrderKind::grevlex); }
  static TermOrder block(std::size_t split, OrderKind first = OrderKind::lex,
                         OrderKind second = OrderKind::grevlex) {
    TermOrder o(OrderKind::block);
    o.split_ = split;
    o.first_ = first;
    o.second_ = second;
    return o;
  }

  OrderKind kind() const { return kind_; }
  std::size_t split() const { return split_; }
  OrderKind first() const { return first_; }
  OrderKind second() const { return second_; }

  /// Three-way comparison over variables [0, nvars).
  int compare(const Monomial& x, const Monomial& y, std::size_t nvars) const {
    switch (kind_) {
      case OrderKind::lex:
        return cmp_lex(x, y, 0, nvars);
      case OrderKind::grevlex:
        return cmp_grevlex(x, y, 0, nvars);
      case OrderKind::block: {
        int c = cmp_kind(first_, x, y, 0, split_);
        return c != 0 ? c : cmp_kind(second_, x, y, split_, nvars);
      }
    }
    return 0;
  }

  /// Comparison restricted to the main variables [0, nmain), using the
  /// sub-order that governs them.
  int compare_main(const Monomial& x, const Monomial& y, std::size_t nmain) const {
    OrderKind k = kind_ == OrderKind::block ? first_ : kind_;
    return cmp_kind(k, x, y, 0, nmain);
  }

  bool operator==(const TermOrder& o) const {
    if (kind_ != o.kind_) return false;
    return kind_ != OrderKind::block || (split_ == o.split_ && first_ == o.first_ && second_ == o.second_);
  }

  /// "lex", "grevlex", or "block:3:lex:grevlex".
  std::string to_string() const;
  static TermOrder parse(std::string_view text);

 private:
  explicit TermOrder(OrderKind k) : kind_(k) {}

  static int cmp_lex(const Monomial& x, const Monomial& y, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i)
      if (x[i] != y[i]) return x[i] > y[i] ? 1 : -1;
    return 0;
  }
  static int cmp_grevlex(const Monomial& x, const Monomial& y, std::size_t from, std::size_t to) {
    unsigned dx = 0, dy = 0;
    for (std::size_t i = from; i < to; ++i) {
      dx += x[i];
      dy += y[i];
    }
    if (dx != dy) return dx > dy ? 1 : -1;
    for (std::size_t i = to; i-- > from;)
      if (x[i] != y[i]) return x[i] < y[i] ? 1 : -1;
    return 0;
  }
  static int cmp_kind(OrderKind k, const Monomial& x, const Monomial& y, std::size_t from, std::size_t to) {
    return k == OrderKind::grevlex ? cmp_grevlex(x, y, from, to) : cmp_lex(x, y, from, to);
  }

  OrderKind kind_ = OrderKind::lex;
  std::size_t split_ = 0;
  OrderKind first_ = OrderKind::lex;
  OrderKind second_ = OrderKind::grevlex;
};

}  // namespace cgsqe
