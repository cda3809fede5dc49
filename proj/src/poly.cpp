#include "cgsqe/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <unordered_map>

namespace cgsqe {

Ring::Ring(std::vector<std::string> names, std::size_t nparams, TermOrder order)
    : names_(std::move(names)), nparams_(nparams), order_(order) {
  if (names_.size() > kMaxVars) throw StructuralError("too many variables for Monomial capacity");
  if (nparams_ > names_.size()) throw StructuralError("more parameters than variables");
  if (order_.kind() == OrderKind::block && order_.split() > names_.size())
    throw StructuralError("block split beyond variable count");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw StructuralError("duplicate variable name " + names_[i]);
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

Poly::Poly(RingPtr ring, const QSqrt2& c) : ring_(std::move(ring)) {
  if (!c.is_zero()) terms_.push_back({Monomial(), c});
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  const Ring& r = *ring;
  std::sort(terms.begin(), terms.end(),
            [&r](const Term& x, const Term& y) { return r.compare(x.mono, y.mono) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono)
      out.back().coef += t.coef;
    else
      out.push_back(std::move(t));
    if (out.back().coef.is_zero()) out.pop_back();
  }
  Poly p(std::move(ring));
  p.terms_ = std::move(out);
  return p;
}

Poly Poly::from_sorted(RingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  p.terms_ = std::move(terms);
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t i, unsigned power) {
  if (i >= ring->nvars()) throw StructuralError("variable index out of range");
  return monomial(std::move(ring), Monomial::var(i, power), QSqrt2(1));
}

Poly Poly::monomial(RingPtr ring, const Monomial& m, const QSqrt2& c) {
  Poly p(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

const Monomial& Poly::lm() const {
  if (terms_.empty()) throw StructuralError("leading monomial of zero polynomial");
  return terms_.front().mono;
}

const QSqrt2& Poly::lc() const {
  if (terms_.empty()) throw StructuralError("leading coefficient of zero polynomial");
  return terms_.front().coef;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

unsigned Poly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono[var]);
  return d;
}

std::uint32_t Poly::support() const {
  std::uint32_t m = 0;
  for (const auto& t : terms_) m |= t.mono.support();
  return m;
}

bool Poly::in_params_only() const {
  const std::uint32_t main_mask = (1u << ring_->nmain()) - 1u;
  return (support() & main_mask) == 0;
}

void Poly::check_ring(const Poly& o) const {
  if (ring_ != o.ring_ && !(*ring_ == *o.ring_)) throw StructuralError("polynomials from different rings");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef.negate();
  return r;
}

namespace {

// out = x + sign*y, both canonical
std::vector<Term> merge(const Ring& ring, const std::vector<Term>& x, const std::vector<Term>& y, bool subtract) {
  std::vector<Term> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    int c = ring.compare(x[i].mono, y[j].mono);
    if (c > 0) {
      out.push_back(x[i++]);
    } else if (c < 0) {
      out.push_back(y[j++]);
      if (subtract) out.back().coef.negate();
    } else {
      QSqrt2 s = x[i].coef;
      if (subtract)
        s -= y[j].coef;
      else
        s += y[j].coef;
      if (!s.is_zero()) out.push_back({x[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < x.size(); ++i) out.push_back(x[i]);
  for (; j < y.size(); ++j) {
    out.push_back(y[j]);
    if (subtract) out.back().coef.negate();
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  check_ring(o);
  terms_ = merge(*ring_, terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_ring(o);
  terms_ = merge(*ring_, terms_, o.terms_, true);
  return *this;
}

Poly operator*(const Poly& x, const Poly& y) {
  x.check_ring(y);
  if (x.is_zero() || y.is_zero()) return Poly(x.ring_);
  if (y.terms_.size() == 1) return x.mul_term(y.terms_[0].mono, y.terms_[0].coef);
  if (x.terms_.size() == 1) return y.mul_term(x.terms_[0].mono, x.terms_[0].coef);
  std::unordered_map<Monomial, QSqrt2, MonomialHash> acc;
  acc.reserve(x.terms_.size() * y.terms_.size());
  for (const auto& a : x.terms_)
    for (const auto& b : y.terms_) {
      auto& slot = acc[a.mono * b.mono];
      slot.addmul(a.coef, b.coef);
    }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) terms.push_back({m, std::move(c)});
  const Ring& r = *x.ring_;
  std::sort(terms.begin(), terms.end(), [&r](const Term& p, const Term& q) { return r.compare(p.mono, q.mono) > 0; });
  return Poly::from_sorted(x.ring_, std::move(terms));
}

Poly Poly::scale(const QSqrt2& c) const {
  if (c.is_zero()) return Poly(ring_);
  Poly r = *this;
  if (c.is_one()) return r;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Poly Poly::mul_term(const Monomial& m, const QSqrt2& c) const {
  if (c.is_zero()) return Poly(ring_);
  Poly r(ring_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result(ring_, QSqrt2(1));
  Poly base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return result;
}

Poly Poly::monic() const {
  if (terms_.empty() || terms_[0].coef.is_one()) return *this;
  return scale(terms_[0].coef.inverse());
}

Poly Poly::eval_partial(const std::map<std::size_t, QSqrt2>& assignment) const {
  for (const auto& [v, _] : assignment)
    if (v >= ring_->nvars()) throw StructuralError("assignment to unknown variable");
  std::vector<Term> out;
  out.reserve(terms_.size());
  std::map<std::pair<std::size_t, unsigned>, QSqrt2> powers;
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    QSqrt2 c = t.coef;
    for (const auto& [v, value] : assignment) {
      unsigned e = m[v];
      if (!e) continue;
      auto key = std::make_pair(v, e);
      auto it = powers.find(key);
      if (it == powers.end()) {
        QSqrt2 p(1);
        for (unsigned k = 0; k < e; ++k) p *= value;
        it = powers.emplace(key, p).first;
      }
      c *= it->second;
      m.set(v, 0);
      if (c.is_zero()) break;
    }
    if (!c.is_zero()) out.push_back({m, std::move(c)});
  }
  return from_terms(ring_, std::move(out));
}

Poly Poly::eval_partial(const std::map<std::string, QSqrt2>& assignment) const {
  std::map<std::size_t, QSqrt2> by_index;
  for (const auto& [name, value] : assignment) {
    auto idx = ring_->index_of(name);
    if (!idx) throw StructuralError("assignment to unknown variable " + name);
    by_index.emplace(*idx, value);
  }
  return eval_partial(by_index);
}

QSqrt2 Poly::eval(const std::vector<QSqrt2>& point) const {
  if (point.size() != ring_->nvars()) throw StructuralError("evaluation point has wrong dimension");
  QSqrt2 sum;
  for (const auto& t : terms_) {
    QSqrt2 v = t.coef;
    for (std::size_t i = 0; i < point.size(); ++i)
      for (unsigned k = 0; k < t.mono[i]; ++k) v *= point[i];
    sum += v;
  }
  return sum;
}

Poly Poly::to_ring(const RingPtr& target) const {
  if (ring_ == target || *ring_ == *target) return from_sorted(target, terms_);
  std::vector<std::size_t> map(ring_->nvars());
  const std::uint32_t used = support();
  for (std::size_t i = 0; i < ring_->nvars(); ++i) {
    auto idx = target->index_of(ring_->name(i));
    if (!idx) {
      if ((used >> i) & 1u) throw StructuralError("variable " + ring_->name(i) + " missing in target ring");
      map[i] = kMaxVars;
      continue;
    }
    map[i] = *idx;
  }
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < ring_->nvars(); ++i)
      if (t.mono[i]) m.set(map[i], t.mono[i]);
    out.push_back({m, t.coef});
  }
  return from_terms(target, std::move(out));
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string mono = t.mono.is_one() ? std::string() : t.mono.to_string(ring_->names());
    std::string coef;
    bool negative = false;
    if (t.coef.is_simple()) {
      negative = t.coef.sign() < 0;
      QSqrt2 mag = negative ? -t.coef : t.coef;
      if (mono.empty())
        coef = mag.to_string();
      else if (!mag.is_one())
        coef = mag.to_string() + "*";
    } else {
      coef = t.coef.to_string() + (mono.empty() ? "" : "*");
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    out += coef + mono;
    first = false;
  }
  return out;
}

bool operator==(const Poly& x, const Poly& y) {
  if (x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i)
    if (x.terms_[i].mono != y.terms_[i].mono || x.terms_[i].coef != y.terms_[i].coef) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------------------
// parser

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc = product();
    while (true) {
      if (accept('+'))
        acc += product();
      else if (accept('-'))
        acc -= product();
      else
        return acc;
    }
  }

  Poly product() {
    Poly acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc = acc.scale(d.constant_value().inverse());
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      return base.pow(e);
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Poly(ring_, QSqrt2(number()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      if (auto idx = ring_->index_of(name)) return Poly::variable(ring_, *idx);
      if (name == "r2") return Poly(ring_, QSqrt2::sqrt2());
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail("unexpected character");
  }

  Rat number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError&) {
      pos_ = start;
      fail("malformed number");
    }
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingPtr& ring, std::string_view text) { return PolyParser(ring, text).parse(); }

LeadingData leading_data(const Poly& f) { return leading_data(f, f.ring()->order()); }

LeadingData leading_data(const Poly& f, const TermOrder& ord) {
  if (f.is_zero()) throw StructuralError("leading data of zero polynomial");
  const Ring& ring = *f.ring();
  const std::size_t nmain = ring.nmain();
  Monomial best = f.terms()[0].mono.restrict(0, nmain);
  for (const auto& t : f.terms()) {
    Monomial m = t.mono.restrict(0, nmain);
    if (ord.compare_main(m, best, nmain) > 0) best = m;
  }
  std::vector<Term> lc;
  for (const auto& t : f.terms())
    if (t.mono.restrict(0, nmain) == best) lc.push_back({t.mono.restrict(nmain, ring.nvars()), t.coef});
  return {best, Poly::from_terms(f.ring(), std::move(lc))};
}

std::optional<std::vector<QSqrt2>> univariate_view(const Poly& f, std::size_t* var) {
  const std::uint32_t s = f.support();
  if (s == 0 || (s & (s - 1)) != 0) return std::nullopt;
  std::size_t v = 0;
  while (!((s >> v) & 1u)) ++v;
  std::vector<QSqrt2> coeffs(f.degree_in(v) + 1);
  for (const auto& t : f.terms()) coeffs[t.mono[v]] = t.coef;
  if (var) *var = v;
  return coeffs;
}

}  // namespace cgsqe
