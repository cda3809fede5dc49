#include "cgsqe/realroot.hpp"

#include <algorithm>

namespace cgsqe {

Matrix<QSqrt2> hermite_matrix(const GBasis& G) { return hermite_matrix(G, standard_monomials(G)); }

Matrix<QSqrt2> hermite_matrix(const GBasis& G, const QuotientBasis& B) {
  const std::size_t d = B.size();
  // Tr(v_i v_j) = sum_l [NF(v_i v_j)]_l * Tr(v_l), and Tr(v_l) = sum_k [NF(v_l v_k)]_k.
  std::vector<std::vector<QSqrt2>> prod(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Poly w = Poly::monomial(G.ring, B.monomials[i] * B.monomials[j], QSqrt2(1));
      prod[i * d + j] = B.coordinates(normal_form(w, G));
      if (j != i) prod[j * d + i] = prod[i * d + j];
    }
  std::vector<QSqrt2> tau(d);
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t k = 0; k < d; ++k) tau[l] += prod[l * d + k][k];
  Matrix<QSqrt2> H(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      QSqrt2 acc;
      const auto& c = prod[i * d + j];
      for (std::size_t l = 0; l < d; ++l)
        if (!c[l].is_zero()) acc.addmul(c[l], tau[l]);
      H(i, j) = acc;
      H(j, i) = std::move(acc);
    }
  return H;
}

namespace {

int variations(const std::vector<int>& signs) {
  int count = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

SignSequenceReport sign_changes(const std::vector<int>& coefficient_signs) {
  SignSequenceReport r;
  r.Lplus = coefficient_signs;
  const std::size_t d = coefficient_signs.empty() ? 0 : coefficient_signs.size() - 1;
  r.Lminus.resize(coefficient_signs.size());
  // position k holds the coefficient of lambda^(d-k)
  for (std::size_t k = 0; k < coefficient_signs.size(); ++k)
    r.Lminus[k] = ((d - k) % 2 == 1) ? -coefficient_signs[k] : coefficient_signs[k];
  r.Splus = variations(r.Lplus);
  r.Sminus = variations(r.Lminus);
  return r;
}

SignSequenceReport sign_changes(const std::vector<QSqrt2>& chi) {
  std::vector<int> signs;
  signs.reserve(chi.size());
  for (const auto& c : chi) signs.push_back(c.sign());
  return sign_changes(signs);
}

std::optional<int> count_real_roots(const GBasis& G) {
  if (!is_zero_dimensional(G)) return std::nullopt;
  if (G.is_unit()) return 0;
  return sign_changes(char_poly(hermite_matrix(G))).signature();
}

std::vector<UPoly> sturm_sequence(const UPoly& f) {
  std::vector<UPoly> seq{f};
  if (f.degree() <= 0) return seq;
  seq.push_back(f.derivative());
  while (seq.back().degree() > 0) {
    UPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

namespace {

int variations_at(const std::vector<UPoly>& seq, const Rat& x) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    int s = p.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int variations_at_infinity(const std::vector<UPoly>& seq, bool positive) {
  int count = 0, last = 0;
  for (const auto& p : seq) {
    if (p.is_zero()) continue;
    int s = p.lc().sign();
    if (!positive && p.degree() % 2 == 1) s = -s;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

int sturm_count(const UPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("sturm_count of the zero polynomial");
  auto seq = sturm_sequence(squarefree_part(f));
  return variations_at_infinity(seq, false) - variations_at_infinity(seq, true);
}

int sturm_count(const std::vector<UPoly>& seq, const Rat& a, const Rat& b) {
  return variations_at(seq, a) - variations_at(seq, b);
}

int quadratic_discriminant(const UPoly& f) {
  if (f.degree() != 2) throw std::invalid_argument("quadratic_discriminant needs degree 2");
  QSqrt2 disc = f.coeff(1) * f.coeff(1) - QSqrt2(4) * f.coeff(2) * f.coeff(0);
  return disc.sign();
}

Rat root_bound(const UPoly& f) {
  UPoly m = f.monic();
  Rat best = 0;
  for (int i = 0; i < m.degree(); ++i) best = std::max(best, m.coeff(static_cast<std::size_t>(i)).abs_upper_bound());
  return best + 1;
}

namespace {

// Sign of p just to the right of x.
int sign_right_of(const UPoly& p, const Rat& x) {
  int s = p.sign_at(x);
  return s != 0 ? s : p.derivative().sign_at(x);
}

}  // namespace

void RealAlgebraic::refine(const Rat& width) {
  if (exact()) return;
  int s_lo = sign_right_of(poly, lo);
  while (hi - lo > width) {
    Rat mid = (lo + hi) / 2;
    int s = poly.sign_at(mid);
    if (s == 0) {
      lo = hi = mid;
      return;
    }
    if (s == s_lo)
      lo = mid;
    else
      hi = mid;
    s_lo = sign_right_of(poly, lo);
  }
}

double RealAlgebraic::approx() const {
  Rat mid = (lo + hi) / 2;
  return mid.get_d();
}

std::vector<RealAlgebraic> isolate_real_roots(const UPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("isolate_real_roots of the zero polynomial");
  std::vector<RealAlgebraic> out;
  UPoly p = squarefree_part(f);
  if (p.degree() <= 0) return out;
  auto seq = sturm_sequence(p);
  Rat B = root_bound(p);
  struct Range {
    Rat a, b;
    int n;
  };
  std::vector<Range> stack{{-B, B, sturm_count(seq, -B, B)}};
  while (!stack.empty()) {
    Range r = stack.back();
    stack.pop_back();
    if (r.n == 0) continue;
    if (r.n == 1) {
      if (p.sign_at(r.b) == 0)
        out.push_back({p, r.b, r.b});
      else
        out.push_back({p, r.a, r.b});
      continue;
    }
    Rat mid = (r.a + r.b) / 2;
    int left = sturm_count(seq, r.a, mid);
    stack.push_back({mid, r.b, r.n - left});
    stack.push_back({r.a, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const RealAlgebraic& x, const RealAlgebraic& y) { return x.hi < y.hi; });
  return out;
}

int sign_at(const UPoly& q, RealAlgebraic& alpha) {
  if (alpha.exact()) return q.sign_at(alpha.lo);
  if (q.is_zero()) return 0;
  UPoly g = gcd(alpha.poly, q);
  if (g.degree() > 0 && sturm_count(sturm_sequence(g), alpha.lo, alpha.hi) > 0) return 0;
  auto seq = sturm_sequence(squarefree_part(q));
  while (sturm_count(seq, alpha.lo, alpha.hi) > 0) {
    alpha.refine((alpha.hi - alpha.lo) / 2);
    if (alpha.exact()) return q.sign_at(alpha.lo);
  }
  return q.sign_at(alpha.hi);
}

}  // namespace cgsqe
