#include "cgsqe/planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "cgsqe/ratfunc.hpp"

namespace cgsqe {

TimingLaw TimingLaw::solve(long T) {
  if (T < 1) throw std::invalid_argument("T must be positive");
  // s(T) = 1, sdot(T) = 0, sddot(T) = 0 with a0 = a1 = 0
  std::array<std::array<Rat, 4>, 3> A = {{
      {Rat(20), Rat(15), Rat(12), Rat(60) / T},
      {Rat(1), Rat(1), Rat(1), Rat(0)},
      {Rat(2), Rat(3), Rat(4), Rat(0)},
  }};
  for (std::size_t c = 0; c < 3; ++c) {
    std::size_t p = c;
    while (A[p][c] == 0) ++p;
    std::swap(A[p], A[c]);
    for (std::size_t r = 0; r < 3; ++r) {
      if (r == c || A[r][c] == 0) continue;
      Rat f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < 4; ++k) A[r][k] -= f * A[c][k];
    }
  }
  TimingLaw law;
  law.T = T;
  law.a2 = A[0][3] / A[0][0];
  law.a3 = A[1][3] / A[1][1];
  law.a4 = A[2][3] / A[2][2];
  return law;
}

namespace {

Rat power(const Rat& x, unsigned e) {
  Rat r(1);
  for (unsigned i = 0; i < e; ++i) r *= x;
  return r;
}

UPoly coeffs(std::vector<Rat> c) {
  std::vector<QSqrt2> q(c.begin(), c.end());
  return UPoly(std::move(q));
}

}  // namespace

UPoly TimingLaw::position() const {
  Rat t(T);
  return coeffs({0, 0, 0, a2 / (3 * power(t, 2)), a3 / (4 * power(t, 3)), a4 / (5 * power(t, 4))});
}

UPoly TimingLaw::velocity() const { return position().derivative(); }
UPoly TimingLaw::acceleration() const { return velocity().derivative(); }

TimeSample quintic_s(const Rat& t, const TimingLaw& law) {
  if (t < 0 || t > law.T) throw std::out_of_range("time outside [0, T]");
  QSqrt2 q(t);
  return {law.position().eval(q).a(), law.velocity().eval(q).a(), law.acceleration().eval(q).a()};
}

Pose interpolate(const Pose& p0, const Pose& pf, const Rat& s) {
  Rat r = 1 - s;
  return {p0.x * r + pf.x * s, p0.y * r + pf.y * s, p0.z * r + pf.z * s};
}

namespace {

void check_endpoints(const Pose& p0, const Pose& pf, long T) {
  if (T < 1) throw PreconditionError("T must be positive");
  if (p0.x == pf.x || p0.y == pf.y || p0.z == pf.z)
    throw PreconditionError("path endpoints must differ in every coordinate");
}

}  // namespace

Trajectory compute_ikp_trajectory(const IKSystem& sys, const Pose& p0, const Pose& pf, long T,
                                  const SolveOptions& opts) {
  check_endpoints(p0, pf, T);
  CGS local;
  SolveOptions o = opts;
  if (!o.cache) {
    local = compute_cgs(sys.polys);
    o.cache = &local;
  }
  if (o.realcgs && !o.cache->pruned) {
    local = generate_real_cgs(*o.cache);
    o.cache = &local;
  }
  const TimingLaw law = TimingLaw::solve(T);
  Trajectory tr;
  tr.T = T;
  for (long t = 1; t <= T; ++t) {
    TrajectoryStep step;
    step.t = t;
    step.s = quintic_s(Rat(t), law).s;
    step.pose = interpolate(p0, pf, step.s);
    step.ik = solve_ikp_point(sys, step.pose, o);
    if (!step.ik.angles) {
      tr.stopped = step.ik;
      break;
    }
    tr.steps.push_back(std::move(step));
  }
  return tr;
}

namespace {

// A polynomial of (K(s))[main] with the parameter s as the last ring variable.
struct ParamTerm {
  Monomial m;
  RatFunc c;
};

struct ParamBasisElement {
  Monomial lm;
  RatFunc lc;
  std::vector<ParamTerm> tail;
};

// Groups the terms of f by main monomial, in decreasing order.
std::vector<ParamTerm> split_main(const Poly& f) {
  const Ring& ring = *f.ring();
  const std::size_t nmain = ring.nmain();
  std::vector<std::pair<Monomial, std::vector<QSqrt2>>> groups;
  for (const auto& t : f.terms()) {
    Monomial m = t.mono.restrict(0, nmain);
    if (groups.empty() || groups.back().first != m) groups.push_back({m, {}});
    auto& c = groups.back().second;
    unsigned e = t.mono[nmain];
    if (c.size() <= e) c.resize(e + 1);
    c[e] = t.coef;
  }
  std::vector<ParamTerm> out;
  for (auto& [m, c] : groups) out.push_back({m, RatFunc(UPoly(std::move(c)))});
  return out;
}

class ParametricQuotient {
 public:
  ParametricQuotient(const std::vector<Poly>& basis, const RingPtr& ring) : ring_(ring) {
    std::vector<Monomial> lms;
    for (const auto& g : basis) {
      auto terms = split_main(g);
      ParamBasisElement e{terms.front().m, terms.front().c, {terms.begin() + 1, terms.end()}};
      lms.push_back(e.lm);
      basis_.push_back(std::move(e));
    }
    B_ = standard_monomials(lms, *ring);
  }

  std::size_t dim() const { return B_.size(); }

  Matrix<RatFunc> hermite() const {
    const std::size_t d = B_.size();
    std::vector<std::vector<RatFunc>> prod(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        prod[i * d + j] = coordinates(B_.monomials[i] * B_.monomials[j]);
        if (j != i) prod[j * d + i] = prod[i * d + j];
      }
    std::vector<RatFunc> tau(d);
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t k = 0; k < d; ++k) tau[l] += prod[l * d + k][k];
    Matrix<RatFunc> H(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i; j < d; ++j) {
        RatFunc acc;
        const auto& c = prod[i * d + j];
        for (std::size_t l = 0; l < d; ++l)
          if (!c[l].is_zero() && !tau[l].is_zero()) acc += c[l] * tau[l];
        H(i, j) = acc;
        H(j, i) = acc;
      }
    return H;
  }

 private:
  std::vector<RatFunc> coordinates(const Monomial& start) const {
    auto desc = [this](const Monomial& a, const Monomial& b) { return ring_->compare(a, b) > 0; };
    std::map<Monomial, RatFunc, decltype(desc)> f(desc);
    f.emplace(start, RatFunc(1));
    for (auto it = f.begin(); it != f.end();) {
      const Monomial m = it->first;
      const ParamBasisElement* g = nullptr;
      for (const auto& e : basis_)
        if (e.lm.divides(m)) {
          g = &e;
          break;
        }
      if (!g) {
        ++it;
        continue;
      }
      RatFunc q = it->second / g->lc;
      const Monomial u = m / g->lm;
      f.erase(it);
      for (const auto& t : g->tail) {
        const Monomial w = u * t.m;
        auto [pos, fresh] = f.emplace(w, RatFunc());
        pos->second -= q * t.c;
        if (pos->second.is_zero()) f.erase(pos);
      }
      it = f.upper_bound(m);
    }
    std::vector<RatFunc> out(B_.size());
    for (auto& [m, c] : f) {
      auto k = B_.index.find(m);
      if (k == B_.index.end()) throw DimensionError("normal form outside the quotient basis");
      out[k->second] = std::move(c);
    }
    return out;
  }

  RingPtr ring_;
  std::vector<ParamBasisElement> basis_;
  QuotientBasis B_;
};

UPoly as_upoly(const Poly& f) {
  if (f.is_constant()) return UPoly(f.constant_value());
  auto view = univariate_view(f);
  if (!view) throw StructuralError("expected a polynomial in the parameter only");
  return UPoly(*view);
}

enum class Fiber { empty, finite, positive_dim };

struct BranchData {
  Fiber fiber = Fiber::empty;
  std::vector<UPoly> eqs, neqs;
  std::vector<UPoly> chi;  // highest degree first
};

// D^2 H with D the lcm of the denominators: congruent to H wherever D does
// not vanish, which holds on the segment since D divides a power of the
// leading coefficients.
Matrix<UPoly> clear_denominators(const Matrix<RatFunc>& H) {
  UPoly D(1);
  for (std::size_t i = 0; i < H.rows(); ++i)
    for (std::size_t j = 0; j < H.cols(); ++j)
      if (!H(i, j).den().is_constant()) D = D / gcd(D, H(i, j).den()) * H(i, j).den();
  const UPoly D2 = D * D;
  Matrix<UPoly> out(H.rows(), H.cols());
  for (std::size_t i = 0; i < H.rows(); ++i)
    for (std::size_t j = 0; j < H.cols(); ++j) out(i, j) = H(i, j).num() * (D2 / H(i, j).den());
  return out;
}

BranchData analyze(const CGSBranch& b, const RingPtr& ring) {
  BranchData d;
  for (const auto& e : b.segment.eqs) d.eqs.push_back(as_upoly(e));
  for (const auto& n : b.segment.neqs) d.neqs.push_back(as_upoly(n));
  bool unit = false;
  for (const auto& g : b.basis)
    if (g.in_params_only()) unit = true;
  if (unit) return d;
  try {
    ParametricQuotient Q(b.basis, ring);
    d.chi = char_poly(clear_denominators(Q.hermite()));
    d.fiber = Fiber::finite;
  } catch (const DimensionError&) {
    d.fiber = Fiber::positive_dim;
  }
  return d;
}

// Pairwise coprime squarefree polynomials with the same real roots as the input.
void add_to_coprime_basis(std::vector<UPoly>& basis, UPoly a) {
  if (a.degree() < 1) return;
  a = squarefree_part(a);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    UPoly g = gcd(a, basis[i]);
    if (g.degree() < 1) continue;
    UPoly rest = basis[i] / g;
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
    add_to_coprime_basis(basis, g);
    add_to_coprime_basis(basis, rest);
    add_to_coprime_basis(basis, a / g);
    return;
  }
  basis.push_back(a.monic());
}

void halve(RealAlgebraic& r) {
  if (!r.exact()) r.refine((r.hi - r.lo) / 2);
}

// Sorts distinct real algebraic numbers after refining until their
// isolating intervals are pairwise disjoint.
void sort_roots(std::vector<RealAlgebraic>& roots) {
  auto disjoint = [](const RealAlgebraic& a, const RealAlgebraic& b) { return a.hi <= b.lo || b.hi <= a.lo; };
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j)
        if (!disjoint(roots[i], roots[j])) {
          halve(roots[i]);
          halve(roots[j]);
          again = true;
        }
  }
  std::sort(roots.begin(), roots.end(), [](const RealAlgebraic& a, const RealAlgebraic& b) { return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi); });
}

RealAlgebraic exact_point(const Rat& r) { return {UPoly(std::vector<QSqrt2>{QSqrt2(Rat(-r)), QSqrt2(1)}), r, r}; }

// -1, 0, 1 as r is below, at, or above alpha.
int compare(const Rat& r, RealAlgebraic alpha) {
  if (alpha.exact()) return sgn(r - alpha.lo);
  if (r <= alpha.lo) return -1;
  if (r > alpha.hi) return 1;
  int pr = alpha.poly.sign_at(r);
  if (pr == 0) return 0;
  return pr * alpha.poly.sign_at(alpha.lo) < 0 ? 1 : -1;
}

// Either a rational sample point or a root alpha of a coprime-basis element.
// The isolating interval of alpha holds no other root of any polynomial
// built from that basis, so a nonzero q has the sign of q(alpha.hi).
struct Where {
  std::optional<Rat> rational;
  const RealAlgebraic* alpha = nullptr;

  int sign(const UPoly& q) const {
    if (rational) return q.sign_at(*rational);
    if (alpha->exact()) return q.sign_at(alpha->lo);
    if ((q % alpha->poly).is_zero()) return 0;
    return q.sign_at(alpha->hi);
  }
};

bool in_segment(const BranchData& d, const Where& w) {
  for (const auto& e : d.eqs)
    if (w.sign(e) != 0) return false;
  if (d.neqs.empty()) return true;
  for (const auto& n : d.neqs)
    if (w.sign(n) != 0) return true;
  return false;
}

void evaluate_cell(CellCertificate& cell, const std::vector<BranchData>& data, const Where& w) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!in_segment(data[i], w)) continue;
    cell.branch = static_cast<int>(i);
    const BranchData& d = data[i];
    if (d.fiber == Fiber::positive_dim) {
      cell.certified = false;
      return;
    }
    if (d.fiber == Fiber::empty) return;
    for (const auto& c : d.chi) cell.signs.push_back(w.sign(c));
    SignSequenceReport rep = sign_changes(cell.signs);
    cell.splus = rep.Splus;
    cell.sminus = rep.Sminus;
    cell.feasible = rep.Splus != rep.Sminus;
    return;
  }
}

// A rational strictly between a < b.
Rat sample_between(RealAlgebraic& a, RealAlgebraic& b) {
  while (a.hi >= b.lo) {
    halve(a);
    halve(b);
  }
  return (a.hi + b.lo) / 2;
}

// Merges runs of consecutive cells selected by `pick`.
std::vector<SInterval> runs(const std::vector<CellCertificate>& cells, const std::function<bool(const CellCertificate&)>& pick) {
  std::vector<SInterval> out;
  bool open = false;
  for (const auto& c : cells) {
    if (!pick(c)) {
      open = false;
      continue;
    }
    if (!open) {
      out.push_back(c.cell);
      open = true;
    } else {
      out.back().hi = c.cell.hi;
      out.back().hi_closed = c.cell.hi_closed;
    }
  }
  return out;
}

bool contains(const SInterval& I, const Rat& r) {
  if (I.lo) {
    int c = compare(r, *I.lo);
    if (c < 0 || (c == 0 && !I.lo_closed)) return false;
  }
  if (I.hi) {
    int c = compare(r, *I.hi);
    if (c > 0 || (c == 0 && !I.hi_closed)) return false;
  }
  return true;
}

// I intersected with [a, b]; nullopt when empty.
std::optional<SInterval> clip(SInterval I, const Rat& a, const Rat& b) {
  int ca = I.lo ? compare(a, *I.lo) : 1;
  if (ca >= 0) {
    I.lo = exact_point(a);
    if (ca > 0) I.lo_closed = true;
  }
  int cb = I.hi ? compare(b, *I.hi) : -1;
  if (cb <= 0) {
    I.hi = exact_point(b);
    if (cb < 0) I.hi_closed = true;
  }
  int c = 0;  // sign of lo - hi
  if (I.lo->exact())
    c = I.hi->exact() ? sgn(I.lo->lo - I.hi->lo) : compare(I.lo->lo, *I.hi);
  else if (I.hi->exact())
    c = -compare(I.hi->lo, *I.lo);
  else
    return I;
  if (c > 0 || (c == 0 && !(I.lo_closed && I.hi_closed))) return std::nullopt;
  return I;
}

std::string bound_text(const std::optional<RealAlgebraic>& b, const char* inf) {
  if (!b) return inf;
  if (b->exact()) return rat_to_string(b->lo);
  RealAlgebraic r = *b;
  r.refine(Rat(1, 1000000000) / 1000000000);
  char buf[64];
  std::snprintf(buf, sizeof buf, "~%.12g", r.approx());
  return buf;
}

}  // namespace

std::string SInterval::to_string() const {
  if (is_point()) return "{" + bound_text(lo, "") + "}";
  return std::string(lo_closed ? "[" : "(") + bound_text(lo, "-inf") + ", " + bound_text(hi, "inf") + (hi_closed ? "]" : ")");
}

bool FeasibleSet::contains(const Rat& s) const {
  return std::any_of(intervals.begin(), intervals.end(), [&](const SInterval& I) { return cgsqe::contains(I, s); });
}

bool FeasibleSet::covers(const Rat& a, const Rat& b) const {
  return std::any_of(intervals.begin(), intervals.end(),
                     [&](const SInterval& I) { return cgsqe::contains(I, a) && cgsqe::contains(I, b); });
}

std::vector<SInterval> FeasibleSet::gaps(const Rat& a, const Rat& b) const {
  std::vector<SInterval> out;
  for (const auto& I : runs(cells, [](const CellCertificate& c) { return c.certified && !c.feasible; }))
    if (auto J = clip(I, a, b)) out.push_back(std::move(*J));
  return out;
}

FeasibleSet main_qe_univariate(const CGS& c) {
  if (c.ring->nparams() != 1) throw std::invalid_argument("expected a single parameter");
  std::vector<BranchData> data;
  for (const auto& b : c.branches) data.push_back(analyze(b, c.ring));

  std::vector<UPoly> critical;
  for (const auto& d : data) {
    for (const auto& e : d.eqs) add_to_coprime_basis(critical, e);
    for (const auto& n : d.neqs) add_to_coprime_basis(critical, n);
    for (const auto& q : d.chi) add_to_coprime_basis(critical, q);
  }
  std::vector<RealAlgebraic> roots;
  for (const auto& p : critical)
    for (auto& r : isolate_real_roots(p)) roots.push_back(std::move(r));
  sort_roots(roots);

  FeasibleSet M;
  auto open_cell = [&](std::optional<RealAlgebraic> lo, std::optional<RealAlgebraic> hi, const Rat& sample) {
    CellCertificate cell;
    cell.cell = {std::move(lo), std::move(hi), false, false};
    evaluate_cell(cell, data, Where{sample, nullptr});
    M.cells.push_back(std::move(cell));
  };
  if (roots.empty()) {
    open_cell(std::nullopt, std::nullopt, Rat(0));
  } else {
    open_cell(std::nullopt, roots.front(), roots.front().lo - 1);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      CellCertificate point;
      point.cell = {roots[i], roots[i], true, true};
      evaluate_cell(point, data, Where{std::nullopt, &roots[i]});
      M.cells.push_back(std::move(point));
      if (i + 1 < roots.size()) {
        Rat sample = sample_between(roots[i], roots[i + 1]);
        open_cell(roots[i], roots[i + 1], sample);
      } else {
        open_cell(roots[i], std::nullopt, roots[i].hi + 1);
      }
    }
  }
  M.intervals = runs(M.cells, [](const CellCertificate& x) { return x.feasible; });
  M.uncertified = runs(M.cells, [](const CellCertificate& x) { return !x.certified; });
  return M;
}

namespace {

std::map<std::string, Poly> segment_map(const RingPtr& ring, const Pose& p0, const Pose& pf) {
  auto s = Poly::variable(ring, ring->nvars() - 1);
  auto line = [&](const Rat& a, const Rat& b) { return Poly(ring, QSqrt2(a)) + s.scale(QSqrt2(Rat(b - a))); };
  return {{"x", line(p0.x, pf.x)}, {"y", line(p0.y, pf.y)}, {"z", line(p0.z, pf.z)}};
}

}  // namespace

CGS path_cgs(const CGS& point, const IKSystem& path_sys, const Pose& p0, const Pose& pf) {
  return substitute_parameters(point, path_sys.ring, segment_map(path_sys.ring, p0, pf), system_hash(path_sys.polys));
}

VerifiedPlan solve_ikp_trajectory_cgsqe(const IKSystem& sys, const Pose& p0, const Pose& pf, long T,
                                        const SolveOptions& opts) {
  check_endpoints(p0, pf, T);
  CGS local;
  SolveOptions o = opts;
  if (!o.cache) {
    local = compute_cgs(sys.polys);
    o.cache = &local;
  }
  auto names = sys.ring->main_names();
  names.push_back("s");
  IKSystem path{Ring::make(names, 1, sys.ring->order()), {}, SystemMode::path};
  path.polys = substitute_parameters(sys.polys, path.ring, segment_map(path.ring, p0, pf));
  CGS pc = path_cgs(*o.cache, path, p0, pf);
  if (o.realcgs) pc = generate_real_cgs(pc);

  VerifiedPlan plan;
  plan.feasible = main_qe_univariate(pc);
  plan.certified = plan.feasible.covers(Rat(0), Rat(1));
  if (plan.certified)
    plan.trajectory = compute_ikp_trajectory(sys, p0, pf, T, o);
  else
    plan.gaps = plan.feasible.gaps(Rat(0), Rat(1));
  return plan;
}

std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream os;
  os << "t,s,x,y,z,theta1,theta4,theta7,degenerate\n";
  char buf[256];
  for (const auto& st : tr.steps) {
    auto p = st.pose.to_double();
    const auto& a = *st.ik.angles;
    std::snprintf(buf, sizeof buf, "%ld,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", st.t, rat_to_string(st.s).c_str(), p[0],
                  p[1], p[2], a.theta1, a.theta4, a.theta7, st.degenerate() ? 1 : 0);
    os << buf;
  }
  return os.str();
}

std::string certificate_report(const FeasibleSet& m) {
  std::ostringstream os;
  os << "M =";
  if (m.intervals.empty()) os << " empty";
  for (std::size_t i = 0; i < m.intervals.size(); ++i) os << (i ? " u " : " ") << m.intervals[i].to_string();
  os << "\n";
  for (const auto& c : m.cells) {
    os << "cell " << c.cell.to_string() << " branch " << c.branch;
    if (!c.certified) {
      os << " uncertified\n";
      continue;
    }
    os << " signs";
    for (int s : c.signs) os << ' ' << (s > 0 ? '+' : s < 0 ? '-' : '0');
    os << " S+ " << c.splus << " S- " << c.sminus << (c.feasible ? " feasible" : " infeasible") << "\n";
  }
  return os.str();
}

}  // namespace cgsqe
