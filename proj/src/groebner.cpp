#include "cgsqe/groebner.hpp"

#include <algorithm>

namespace cgsqe {

namespace {

const Poly* find_divisor(const Monomial& m, const std::vector<const Poly*>& G) {
  const Poly* best = nullptr;
  for (const Poly* g : G) {
    if (g->lm().divides(m) && (!best || g->size() < best->size())) best = g;
  }
  return best;
}

// Returns x[from..] - c * m * g[1..].
std::vector<Term> sub_multiple(const Ring& ring, std::vector<Term>& x, std::size_t from, const QSqrt2& c,
                               const Monomial& m, const Poly& g) {
  const auto& gt = g.terms();
  std::vector<Term> out;
  out.reserve(x.size() - from + gt.size());
  std::size_t i = from, j = 1;
  Monomial gm;
  if (j < gt.size()) gm = gt[j].mono * m;
  while (i < x.size() && j < gt.size()) {
    int cmp = ring.compare(x[i].mono, gm);
    if (cmp > 0) {
      out.push_back(std::move(x[i++]));
      continue;
    }
    if (cmp < 0) {
      QSqrt2 v;
      v.submul(c, gt[j].coef);
      out.push_back({gm, std::move(v)});
    } else {
      x[i].coef.submul(c, gt[j].coef);
      if (!x[i].coef.is_zero()) out.push_back(std::move(x[i]));
      ++i;
    }
    if (++j < gt.size()) gm = gt[j].mono * m;
  }
  for (; i < x.size(); ++i) out.push_back(std::move(x[i]));
  for (; j < gt.size(); ++j) {
    QSqrt2 v;
    v.submul(c, gt[j].coef);
    out.push_back({gt[j].mono * m, std::move(v)});
  }
  return out;
}

// Division of h by G; with `full` false only the leading term is reduced.
Poly reduce(const Poly& h, const std::vector<const Poly*>& G, bool full) {
  const Ring& ring = *h.ring();
  std::vector<Term> cur = h.terms();
  std::vector<Term> rem;
  std::size_t pos = 0;
  while (pos < cur.size()) {
    const Poly* g = find_divisor(cur[pos].mono, G);
    if (!g) {
      rem.push_back(std::move(cur[pos++]));
      if (!full) break;
      continue;
    }
    Monomial m = cur[pos].mono / g->lm();
    QSqrt2 c = std::move(cur[pos].coef);
    if (!g->lc().is_one()) c /= g->lc();
    cur = sub_multiple(ring, cur, pos + 1, c, m, *g);
    pos = 0;
  }
  for (; pos < cur.size(); ++pos) rem.push_back(std::move(cur[pos]));
  return Poly::from_sorted(h.ring(), std::move(rem));
}

bool lm_descending(const Poly& a, const Poly& b) { return a.ring()->compare(a.lm(), b.lm()) > 0; }

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  unsigned sugar;
};

class Buchberger {
 public:
  Buchberger(RingPtr ring, const BuchbergerOptions& opts, BuchbergerStats* stats)
      : ring_(std::move(ring)), opts_(opts), stats_(stats) {}

  GBasis run(const std::vector<Poly>& F) {
    std::vector<Poly> inputs;
    for (const auto& f : F) {
      if (f.is_zero()) continue;
      if (f.is_constant()) return unit();
      inputs.push_back(f.monic());
    }
    std::stable_sort(inputs.begin(), inputs.end(), [](const Poly& a, const Poly& b) {
      return a.ring()->compare(a.lm(), b.lm()) < 0;
    });
    for (auto& f : inputs) {
      Poly h = reduce(f, active_list(), true);
      if (h.is_zero()) continue;
      if (h.is_constant()) return unit();
      add(h.monic(), h.total_degree());
    }
    while (!pairs_.empty()) {
      Pair p = pop_pair();
      if (stats_) ++stats_->pairs_reduced;
      Poly h = reduce(s_polynomial(polys_[p.i], polys_[p.j]), active_list(), true);
      if (h.is_zero()) {
        if (stats_) ++stats_->zero_reductions;
        continue;
      }
      if (h.is_constant()) return unit();
      add(h.monic(), std::max(p.sugar, h.total_degree()));
    }
    std::vector<Poly> G;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) G.push_back(polys_[k]);
    return finish(std::move(G));
  }

  GBasis finish(std::vector<Poly> G) {
    // Leading monomials are already minimal; only tails need reducing.
    for (std::size_t k = 0; k < G.size(); ++k) {
      std::vector<const Poly*> others;
      for (std::size_t l = 0; l < G.size(); ++l)
        if (l != k) others.push_back(&G[l]);
      Poly lead = Poly::from_sorted(ring_, {G[k].terms()[0]});
      Poly tail = Poly::from_sorted(ring_, {G[k].terms().begin() + 1, G[k].terms().end()});
      G[k] = lead + reduce(tail, others, true);
    }
    std::sort(G.begin(), G.end(), lm_descending);
    return GBasis{ring_, std::move(G), true};
  }

 private:
  GBasis unit() const { return GBasis{ring_, {Poly(ring_, QSqrt2(1))}, true}; }

  std::vector<const Poly*> active_list() const {
    std::vector<const Poly*> out;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) out.push_back(&polys_[k]);
    return out;
  }

  unsigned pair_sugar(std::size_t i, std::size_t j, const Monomial& l) const {
    unsigned si = sugar_[i] + l.degree() - polys_[i].lm().degree();
    unsigned sj = sugar_[j] + l.degree() - polys_[j].lm().degree();
    return std::max(si, sj);
  }

  bool before(const Pair& a, const Pair& b) const {
    if (opts_.selection == PairSelection::sugar) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
    } else if (a.lcm.degree() != b.lcm.degree()) {
      return a.lcm.degree() < b.lcm.degree();
    }
    int c = ring_->compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return std::tie(a.j, a.i) < std::tie(b.j, b.i);
  }

  Pair pop_pair() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k)
      if (before(pairs_[k], pairs_[best])) best = k;
    Pair p = pairs_[best];
    pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
    return p;
  }

  // Gebauer-Moeller installation of a new basis element.
  void add(Poly h, unsigned sugar) {
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    sugar_.push_back(sugar);
    active_.push_back(1);
    const Monomial& lh = polys_[hi].lm();

    std::vector<Pair> C;
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g]) C.push_back({g, hi, lcm(polys_[g].lm(), lh), 0});
    if (stats_) stats_->pairs_considered += C.size();

    std::vector<Pair> D;
    for (std::size_t k = 0; k < C.size(); ++k) {
      const Pair& p = C[k];
      bool keep = coprime(polys_[p.i].lm(), lh);
      if (!keep) {
        keep = true;
        for (std::size_t l = k + 1; l < C.size() && keep; ++l)
          if (C[l].lcm.divides(p.lcm)) keep = false;
        for (std::size_t l = 0; l < D.size() && keep; ++l)
          if (D[l].lcm.divides(p.lcm)) keep = false;
      }
      if (keep) D.push_back(p);
    }

    std::vector<Pair> B;
    B.reserve(pairs_.size() + D.size());
    for (auto& p : pairs_) {
      if (lh.divides(p.lcm) && lcm(polys_[p.i].lm(), lh) != p.lcm && lcm(polys_[p.j].lm(), lh) != p.lcm) continue;
      B.push_back(std::move(p));
    }
    for (auto& p : D) {
      if (coprime(polys_[p.i].lm(), lh)) continue;
      p.sugar = pair_sugar(p.i, p.j, p.lcm);
      B.push_back(std::move(p));
    }
    pairs_ = std::move(B);

    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g] && lh.divides(polys_[g].lm())) active_[g] = 0;
  }

  RingPtr ring_;
  BuchbergerOptions opts_;
  BuchbergerStats* stats_;
  std::vector<Poly> polys_;
  std::vector<unsigned> sugar_;
  std::vector<char> active_;
  std::vector<Pair> pairs_;
};

}  // namespace

std::vector<Monomial> GBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : gens) out.push_back(g.lm());
  return out;
}

Poly s_polynomial(const Poly& f, const Poly& g) {
  Monomial l = lcm(f.lm(), g.lm());
  Poly a = f.mul_term(l / f.lm(), f.lc().inverse());
  Poly b = g.mul_term(l / g.lm(), g.lc().inverse());
  return a - b;
}

GBasis buchberger(const std::vector<Poly>& F, const BuchbergerOptions& opts, BuchbergerStats* stats) {
  if (F.empty()) throw StructuralError("buchberger needs at least one polynomial to fix the ring");
  return Buchberger(F.front().ring(), opts, stats).run(F);
}

GBasis buchberger(const std::vector<Poly>& F, const TermOrder& ord, const BuchbergerOptions& opts) {
  if (F.empty()) throw StructuralError("buchberger needs at least one polynomial to fix the ring");
  const auto& src = F.front().ring();
  auto ring = Ring::make(src->names(), src->nparams(), ord);
  std::vector<Poly> conv;
  conv.reserve(F.size());
  for (const auto& f : F) conv.push_back(f.to_ring(ring));
  return Buchberger(ring, opts, nullptr).run(conv);
}

Poly normal_form(const Poly& f, const std::vector<Poly>& G) {
  std::vector<const Poly*> divisors;
  for (const auto& g : G)
    if (!g.is_zero()) divisors.push_back(&g);
  if (f.is_zero() || divisors.empty()) return f;
  return reduce(f, divisors, true);
}

GBasis interreduce(const RingPtr& ring, std::vector<Poly> G) {
  std::vector<Poly> work;
  for (auto& g : G)
    if (!g.is_zero()) work.push_back(g.monic());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < work.size(); ++k) {
      std::vector<const Poly*> others;
      for (std::size_t l = 0; l < work.size(); ++l)
        if (l != k) others.push_back(&work[l]);
      Poly h = reduce(work[k], others, true);
      if (h == work[k]) continue;
      changed = true;
      if (h.is_zero())
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(k));
      else
        work[k] = h.monic();
      break;
    }
  }
  for (const auto& g : work)
    if (g.is_constant()) return GBasis{ring, {Poly(ring, QSqrt2(1))}, true};
  std::sort(work.begin(), work.end(), lm_descending);
  return GBasis{ring, std::move(work), true};
}

bool is_zero_dimensional(const GBasis& G) {
  if (G.is_unit()) return true;
  const std::size_t n = G.ring->nmain();
  for (std::size_t v = 0; v < n; ++v) {
    bool found = false;
    for (const auto& g : G.gens)
      if (g.lm().support() == (1u << v)) found = true;
    if (!found) return false;
  }
  return true;
}

std::vector<QSqrt2> QuotientBasis::coordinates(const Poly& nf) const {
  std::vector<QSqrt2> out(monomials.size());
  for (const auto& t : nf.terms()) {
    auto it = index.find(t.mono);
    if (it == index.end()) throw DimensionError("normal form term outside the quotient basis");
    out[it->second] = t.coef;
  }
  return out;
}

QuotientBasis standard_monomials(const GBasis& G) {
  if (!is_zero_dimensional(G)) throw DimensionError("ideal is not zero-dimensional");
  if (G.is_unit()) return {};
  return standard_monomials(G.leading_monomials(), *G.ring);
}

QuotientBasis standard_monomials(const std::vector<Monomial>& leading, const Ring& ring) {
  QuotientBasis B;
  const std::size_t n = ring.nmain();
  std::vector<unsigned> bound(n, 0);
  for (const auto& m : leading)
    for (std::size_t v = 0; v < n; ++v)
      if (m.support() == (1u << v) && (bound[v] == 0 || m[v] < bound[v])) bound[v] = m[v];
  for (std::size_t v = 0; v < n; ++v)
    if (bound[v] == 0) throw DimensionError("ideal is not zero-dimensional");
  Monomial cur;
  while (true) {
    bool divisible = false;
    for (const auto& m : leading)
      if (m.divides(cur)) {
        divisible = true;
        break;
      }
    if (!divisible) B.monomials.push_back(cur);
    std::size_t v = 0;
    while (v < n && cur[v] + 1 >= bound[v]) cur.set(v++, 0);
    if (v == n) break;
    cur.set(v, cur[v] + 1);
  }
  std::sort(B.monomials.begin(), B.monomials.end(), [&ring](const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return ring.compare(a, b) > 0;
  });
  for (std::size_t k = 0; k < B.monomials.size(); ++k) B.index.emplace(B.monomials[k], k);
  return B;
}

Matrix<QSqrt2> mult_matrix(const Poly& h, const GBasis& G, const QuotientBasis& B) {
  const std::size_t d = B.size();
  Matrix<QSqrt2> M(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    Poly nf = normal_form(h.mul_term(B.monomials[j], QSqrt2(1)), G);
    auto col = B.coordinates(nf);
    for (std::size_t i = 0; i < d; ++i) M(i, j) = std::move(col[i]);
  }
  return M;
}

}  // namespace cgsqe
