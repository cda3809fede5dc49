#include "cgsqe/term_order.hpp"

#include <string>

#include "cgsqe/qsqrt2.hpp"

namespace cgsqe {

namespace {

const char* kind_name(OrderKind k) {
  switch (k) {
    case OrderKind::lex:
      return "lex";
    case OrderKind::grevlex:
      return "grevlex";
    case OrderKind::block:
      return "block";
  }
  return "?";
}

OrderKind parse_kind(std::string_view s) {
  if (s == "lex") return OrderKind::lex;
  if (s == "grevlex") return OrderKind::grevlex;
  throw ParseError("unknown term order '" + std::string(s) + "'");
}

}  // namespace

std::string TermOrder::to_string() const {
  if (kind_ != OrderKind::block) return kind_name(kind_);
  return std::string("block:") + std::to_string(split_) + ":" + kind_name(first_) + ":" + kind_name(second_);
}

TermOrder TermOrder::parse(std::string_view text) {
  if (text.rfind("block:", 0) != 0) return TermOrder(parse_kind(text));
  std::string_view rest = text.substr(6);
  auto c1 = rest.find(':');
  if (c1 == std::string_view::npos) throw ParseError("malformed block order '" + std::string(text) + "'");
  auto c2 = rest.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw ParseError("malformed block order '" + std::string(text) + "'");
  std::size_t split = 0;
  try {
    split = std::stoul(std::string(rest.substr(0, c1)));
  } catch (const std::exception&) {
    throw ParseError("malformed block split in '" + std::string(text) + "'");
  }
  return block(split, parse_kind(rest.substr(c1 + 1, c2 - c1 - 1)), parse_kind(rest.substr(c2 + 1)));
}

}  // namespace cgsqe
