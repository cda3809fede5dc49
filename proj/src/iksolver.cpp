#include "cgsqe/iksolver.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "cgsqe/realroot.hpp"

namespace cgsqe {

std::string to_string(IKStatus s) {
  switch (s) {
    case IKStatus::solved:
      return "solved";
    case IKStatus::infeasible:
      return "infeasible";
    case IKStatus::degenerate_handled:
      return "degenerate-handled";
    case IKStatus::failed:
      return "failed";
  }
  return "failed";
}

namespace {

// f = a + sum c_i m_i with every m_i a nonconstant monomial of even exponents
// in the parameters.
struct EvenForm {
  enum Kind { other, no_real_root, zero_at_origin } kind = other;
  std::vector<std::size_t> vars;  // parameters occurring in f
  std::vector<std::size_t> pure;  // parameters with a pure power term
};

EvenForm even_form(const Poly& f) {
  EvenForm r;
  if (f.is_zero() || !f.in_params_only()) return r;
  const Ring& ring = *f.ring();
  int sign = 0;
  QSqrt2 a;
  std::uint32_t used = 0, pure = 0;
  for (const auto& t : f.terms()) {
    if (t.mono.is_one()) {
      a = t.coef;
      continue;
    }
    for (std::size_t v = 0; v < ring.nvars(); ++v)
      if (t.mono[v] % 2 != 0) return r;
    int s = t.coef.sign();
    if (sign != 0 && s != sign) return r;
    sign = s;
    used |= t.mono.support();
    if (std::popcount(t.mono.support()) == 1) pure |= t.mono.support();
  }
  if (sign == 0) return r;
  for (std::size_t v = 0; v < ring.nvars(); ++v) {
    if ((used >> v) & 1u) r.vars.push_back(v);
    if ((pure >> v) & 1u) r.pure.push_back(v);
  }
  if (a.is_zero())
    r.kind = EvenForm::zero_at_origin;
  else if (a.sign() == sign)
    r.kind = EvenForm::no_real_root;
  return r;
}

bool univariate_without_real_root(const Poly& e) {
  if (!e.in_params_only()) return false;
  auto coeffs = univariate_view(e);
  if (!coeffs) return false;
  UPoly u(*coeffs);
  if (u.degree() == 2) return quadratic_discriminant(u) < 0;
  if (u.degree() >= 3) return sturm_count(u) == 0;
  return false;
}

// Sound test that V(eqs) \ V(neqs) has no real point.
bool no_real_point(const Segment& seg) {
  std::vector<Poly> eqs = seg.eqs, neqs = seg.neqs;
  std::map<std::size_t, QSqrt2> zeros;
  while (true) {
    std::size_t before = zeros.size();
    for (const auto& e : eqs) {
      if (e.is_constant()) {
        if (!e.is_zero()) return true;
        continue;
      }
      if (univariate_without_real_root(e)) return true;
      EvenForm ef = even_form(e);
      if (ef.kind == EvenForm::no_real_root) return true;
      // every real zero has the pure-power parameters at 0
      if (ef.kind == EvenForm::zero_at_origin)
        for (std::size_t v : ef.pure) zeros.emplace(v, QSqrt2());
    }
    if (zeros.size() == before) return false;
    for (auto& e : eqs) e = e.eval_partial(zeros);
    bool all_vanish = !neqs.empty();
    for (auto& n : neqs) {
      n = n.eval_partial(zeros);
      if (!n.is_zero()) all_vanish = false;
    }
    if (all_vanish) return true;
  }
}

}  // namespace

std::optional<PartialPoint> find_trivial_roots(const Poly& f, const PartialPoint& current) {
  EvenForm ef = even_form(f);
  if (ef.kind == EvenForm::no_real_root) return std::nullopt;
  PartialPoint out = current;
  if (ef.kind == EvenForm::zero_at_origin) {
    const std::size_t nmain = f.ring()->nmain();
    for (std::size_t v : ef.vars)
      if (v >= nmain && v - nmain < out.size()) out[v - nmain] = Rat(0);
  }
  return out;
}

CGS generate_real_cgs(const CGS& c) {
  CGS out{c.ring, {}, c.source_hash, true};
  for (const auto& b : c.branches)
    if (!no_real_point(b.segment)) out.branches.push_back(b);
  return out;
}

namespace {

UPoly from_highest_first(const std::vector<QSqrt2>& chi) {
  std::vector<QSqrt2> c(chi.rbegin(), chi.rend());
  return UPoly(std::move(c));
}

QSqrt2 trace(const Matrix<QSqrt2>& A, const Matrix<QSqrt2>& B) {
  QSqrt2 t;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      if (!A(i, j).is_zero() && !B(j, i).is_zero()) t.addmul(A(i, j), B(j, i));
  return t;
}

Matrix<QSqrt2> combine(const std::vector<Matrix<QSqrt2>>& Ms, const std::vector<long>& lambda) {
  Matrix<QSqrt2> M(Ms[0].rows(), Ms[0].cols());
  for (std::size_t k = 0; k < Ms.size(); ++k) {
    if (lambda[k] == 0) continue;
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j)
        if (!Ms[k](i, j).is_zero()) M(i, j).addmul(QSqrt2(lambda[k]), Ms[k](i, j));
  }
  return M;
}

std::vector<std::vector<long>> separating_candidates(std::size_t n) {
  std::vector<std::vector<long>> out;
  std::vector<long> last(n, 0);
  last[n - 1] = 1;
  out.push_back(last);
  for (long k = 1; k <= 12; ++k) {
    std::vector<long> l(n);
    long p = 1;
    for (std::size_t i = n; i-- > 0;) {
      l[i] = p;
      p *= k + 1;
    }
    out.push_back(l);
  }
  return out;
}

}  // namespace

std::vector<std::vector<double>> extract_real_solutions(const GBasis& G, double tol) {
  if (G.is_unit()) return {};
  QuotientBasis B = standard_monomials(G);
  const std::size_t d = B.size();
  const std::size_t n = G.ring->nmain();
  const std::size_t npts = rank(hermite_matrix(G, B));
  std::vector<Matrix<QSqrt2>> Mx;
  for (std::size_t i = 0; i < n; ++i) Mx.push_back(mult_matrix(Poly::variable(G.ring, i), G, B));

  // Separating linear form u: distinct values on the npts points.
  Matrix<QSqrt2> Mu;
  UPoly f;
  bool found = false;
  for (const auto& lambda : separating_candidates(n)) {
    Mu = combine(Mx, lambda);
    f = squarefree_part(from_highest_first(char_poly(Mu)));
    if (static_cast<std::size_t>(f.degree()) == npts) {
      found = true;
      break;
    }
  }
  if (!found) throw DimensionError("no separating linear form found");
  const std::size_t D = npts;

  // Rational univariate representation from traces: for v in {1, x_i},
  // g_v(T) = sum_p mult(p) v(p) f(T) / (T - u(p)), and x_i(p) = g_xi / g_1 at u(p).
  std::vector<Matrix<QSqrt2>> pow{Matrix<QSqrt2>::identity(d)};
  for (std::size_t m = 1; m < D; ++m) pow.push_back(pow.back() * Mu);
  auto g_of = [&](const Matrix<QSqrt2>& Mv) {
    std::vector<QSqrt2> t(D);
    for (std::size_t m = 0; m < D; ++m) t[m] = trace(Mv, pow[m]);
    std::vector<QSqrt2> coeffs(D);  // constant first
    for (std::size_t k = 0; k < D; ++k) {
      QSqrt2 acc;
      for (std::size_t j = 0; j <= k; ++j) acc.addmul(f.coeff(D - j), t[k - j]);
      coeffs[D - 1 - k] = acc;
    }
    return UPoly(std::move(coeffs));
  };
  UPoly g1 = g_of(Matrix<QSqrt2>::identity(d));
  std::vector<UPoly> gx;
  for (std::size_t i = 0; i < n; ++i) gx.push_back(g_of(Mx[i]));

  const Rat width = Rat(tol) / (mpz_class(1) << 128);
  std::vector<std::vector<double>> out;
  for (auto& alpha : isolate_real_roots(f)) {
    alpha.refine(width);
    QSqrt2 t(alpha.exact() ? alpha.lo : Rat((alpha.lo + alpha.hi) / 2));
    QSqrt2 den = g1.eval(t);
    std::vector<double> pt;
    for (std::size_t i = 0; i < n; ++i) pt.push_back((gx[i].eval(t) / den).to_double());
    out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

IKResult from_roots(const GBasis& G, IKStatus ok, double tol) {
  IKResult r;
  auto count = count_real_roots(G);
  r.real_root_count = count;
  if (!count) {
    r.status = IKStatus::failed;
    return r;
  }
  if (*count == 0) {
    r.status = IKStatus::infeasible;
    return r;
  }
  auto roots = extract_real_solutions(G, tol);
  if (roots.empty() || roots.front().size() != 6) {
    r.status = IKStatus::failed;
    return r;
  }
  std::array<double, 6> v{};
  std::copy(roots.front().begin(), roots.front().end(), v.begin());
  r.root = roots.front();
  r.angles = recover_angles(v);
  r.status = ok;
  return r;
}

}  // namespace

IKResult solve_ikp_nonzerodim(const GBasis& G, double tol) {
  const RingPtr& ring = G.ring;
  Poly c1 = Poly::variable(ring, 0), s1 = Poly::variable(ring, 1);
  Poly g0 = c1 * c1 + s1 * s1 - Poly(ring, QSqrt2(1));
  std::map<std::size_t, QSqrt2> theta1_zero{{0, QSqrt2(1)}, {1, QSqrt2(0)}};
  std::vector<Poly> F;
  for (const auto& g : G.gens) {
    if (g.monic() == g0.monic()) continue;
    Poly h = g.eval_partial(theta1_zero);
    if (!h.is_zero()) F.push_back(h);
  }
  F.push_back(c1 - Poly(ring, QSqrt2(1)));
  F.push_back(s1);
  GBasis H = buchberger(F);
  if (!is_zero_dimensional(H)) {
    IKResult r;
    r.status = IKStatus::failed;
    return r;
  }
  return from_roots(H, IKStatus::degenerate_handled, tol);
}

std::size_t find_branch(const CGS& c, const std::vector<Rat>& point) {
  for (std::size_t i = 0; i < c.branches.size(); ++i)
    if (segment_contains(c.branches[i].segment, point)) return i;
  throw PartitionError("no segment contains the parameter point");
}

IKResult solve_ikp_point(const IKSystem& sys, const Pose& p, const SolveOptions& opts) {
  CGS local;
  const CGS* c = opts.cache;
  if (!c) {
    local = compute_cgs(sys.polys);
    c = &local;
  }
  CGS pruned;
  if (opts.realcgs && !c->pruned) {
    pruned = generate_real_cgs(*c);
    c = &pruned;
  }
  std::vector<Rat> point{p.x, p.y, p.z};
  std::size_t idx = find_branch(*c, point);
  GBasis G = specialize_branch(c->branches[idx], c->ring, point);
  IKResult r;
  if (G.is_unit()) {
    r.status = IKStatus::infeasible;
    r.real_root_count = 0;
  } else if (is_zero_dimensional(G)) {
    r = from_roots(G, IKStatus::solved, opts.tol);
  } else {
    r = solve_ikp_nonzerodim(G, opts.tol);
  }
  r.branch_index = static_cast<int>(idx);
  return r;
}

}  // namespace cgsqe
