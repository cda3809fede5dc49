#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cgsqe/planner.hpp"
#include "oracles.hpp"

using namespace cgsqe;

namespace {

const RobotModel& ev3() {
  static const RobotModel m = RobotModel::ev3();
  return m;
}

const IKSystem& point_system() {
  static const IKSystem sys = build_ik_system(ev3());
  return sys;
}

const CGS& point_cgs() {
  static const CGS c = compute_cgs(point_system().polys);
  return c;
}

const Pose kStart{10, 40, 80};
const Pose kEnd{40, 100, 20};
const Pose kFar{400, 1000, 200};

double residual(const Pose& p, const JointAngles& th) {
  auto q = forward_kinematics(ev3(), th);
  auto d = p.to_double();
  return std::hypot(q[0] - d[0], q[1] - d[1], q[2] - d[2]);
}

UPoly poly(std::initializer_list<Rat> c) {
  std::vector<QSqrt2> q(c.begin(), c.end());
  return UPoly(std::move(q));
}

RingPtr one_param_ring(std::vector<std::string> vars) {
  std::size_t n = vars.size();
  vars.push_back("s");
  return Ring::make(vars, 1, TermOrder::block(n, OrderKind::grevlex, OrderKind::lex));
}

// Real points of the system specialized at s, counted without the CGS.
int real_points_at(const std::vector<Poly>& F, const Rat& s, std::mt19937& rng) {
  const RingPtr& r = F.front().ring();
  auto flat = Ring::make(r->names(), r->nparams(), TermOrder::grevlex());
  std::map<std::string, QSqrt2> at{{"s", QSqrt2(s)}};
  std::vector<Poly> G;
  for (const auto& f : F) G.push_back(f.eval_partial(at).to_ring(flat));
  GBasis B = buchberger(G);
  if (!is_zero_dimensional(B)) return -1;
  return oracle::real_points_by_minpoly(B, rng);
}

GBasis point_basis_at(const Pose& p) {
  auto flat = Ring::make(point_system().ring->names(), 3, TermOrder::grevlex());
  std::map<std::string, QSqrt2> at{{"x", QSqrt2(p.x)}, {"y", QSqrt2(p.y)}, {"z", QSqrt2(p.z)}};
  std::vector<Poly> G;
  for (const auto& f : point_system().polys) G.push_back(f.eval_partial(at).to_ring(flat));
  return buchberger(G);
}

Rat frac(long a, long b) {
  Rat r(a, b);
  r.canonicalize();
  return r;
}

Rat random_in(std::mt19937& rng, const Rat& lo, const Rat& hi) {
  std::uniform_int_distribution<int> k(0, 997);
  return lo + (hi - lo) * frac(k(rng) + 1, 999);
}

}  // namespace

TEST_CASE("quintic time scaling") {
  for (long T : {1L, 10L, 50L}) {
    TimingLaw law = TimingLaw::solve(T);
    CHECK(law.a2 == frac(30, T));
    CHECK(law.a3 == frac(-60, T));
    CHECK(law.a4 == frac(30, T));
    // the boundary system itself
    CHECK(20 * law.a2 + 15 * law.a3 + 12 * law.a4 == frac(60, T));
    CHECK(law.a2 + law.a3 + law.a4 == 0);
    CHECK(2 * law.a2 + 3 * law.a3 + 4 * law.a4 == 0);
    // textbook closed form 10 u^3 - 15 u^4 + 6 u^5 with u = t/T
    Rat iT = frac(1, T);
    CHECK(law.position() == poly({0, 0, 0, 10 * iT * iT * iT, -15 * iT * iT * iT * iT, 6 * iT * iT * iT * iT * iT}));
    // sdot = 30 t^2 (t - T)^2 / T^5
    UPoly q = poly({0, 0, Rat(T * T), Rat(-2 * T), 1}).scale(QSqrt2(Rat(30) * iT * iT * iT * iT * iT));
    CHECK(law.velocity() == q);

    auto at0 = quintic_s(0, law), atT = quintic_s(T, law);
    CHECK(at0.s == 0);
    CHECK(at0.sdot == 0);
    CHECK(at0.sddot == 0);
    CHECK(atT.s == 1);
    CHECK(atT.sdot == 0);
    CHECK(atT.sddot == 0);
  }
  TimingLaw one = TimingLaw::solve(1);
  auto mid = quintic_s(Rat(1, 2), one);
  CHECK(mid.s == Rat(1, 2));
  CHECK(mid.sdot == Rat(15, 8));
  CHECK(mid.sddot == 0);
  CHECK_THROWS_AS(quintic_s(Rat(-1, 3), one), std::out_of_range);
  CHECK_THROWS_AS(quintic_s(Rat(2), one), std::out_of_range);
  CHECK_THROWS(TimingLaw::solve(0));
}

TEST_CASE("quintic symmetry and monotonicity") {
  for (long T = 1; T <= 60; ++T) {
    TimingLaw law = TimingLaw::solve(T);
    Rat prev = -1;
    for (long t = 0; t <= T; ++t) {
      auto x = quintic_s(t, law);
      CHECK(quintic_s(T - t, law).s == 1 - x.s);
      CHECK(x.sdot >= 0);
      CHECK(x.s > prev);
      prev = x.s;
    }
  }
}

TEST_CASE("path system by substitution matches the builder") {
  IKSystem built = build_ik_system(ev3(), kStart, kEnd);
  auto s = Poly::variable(built.ring, 6);
  auto line = [&](const Rat& a, const Rat& b) { return Poly(built.ring, QSqrt2(a)) + s.scale(QSqrt2(Rat(b - a))); };
  std::map<std::string, Poly> sub{{"x", line(kStart.x, kEnd.x)}, {"y", line(kStart.y, kEnd.y)}, {"z", line(kStart.z, kEnd.z)}};
  CHECK(substitute_parameters(point_system().polys, built.ring, sub) == built.polys);
  CHECK(interpolate(kStart, kEnd, Rat(1, 3)).y == 60);
}

TEST_CASE("feasible sets of small systems") {
  auto r = one_param_ring({"v"});
  FeasibleSet half = main_qe_univariate(compute_cgs({parse_poly(r, "v^2 - s")}));
  REQUIRE(half.intervals.size() == 1);
  const SInterval& I = half.intervals[0];
  REQUIRE(I.lo.has_value());
  CHECK(I.lo->exact());
  CHECK(I.lo->lo == 0);
  CHECK(I.lo_closed);
  CHECK_FALSE(I.hi.has_value());
  CHECK(I.to_string() == "[0, inf)");
  CHECK(half.contains(0));
  CHECK(half.contains(Rat(1000000)));
  CHECK_FALSE(half.contains(Rat(-1, 1000000)));
  CHECK(half.covers(0, 1));
  CHECK_FALSE(half.covers(-1, 1));
  auto gaps = half.gaps(-1, 1);
  REQUIRE(gaps.size() == 1);
  CHECK(gaps[0].to_string() == "[-1, 0)");

  FeasibleSet none = main_qe_univariate(compute_cgs({parse_poly(r, "v^2 + s^2 + 1")}));
  CHECK(none.empty());
  CHECK_FALSE(none.contains(0));
  auto all = none.gaps(0, 1);
  REQUIRE(all.size() == 1);
  CHECK(all[0].to_string() == "[0, 1]");

  // v = 0 forces s = 0 unless s^2 = 2, and only s = sqrt2 then has real v
  FeasibleSet pts = main_qe_univariate(compute_cgs({parse_poly(r, "v^2 - s"), parse_poly(r, "(s^2 - 2)*v")}));
  REQUIRE(pts.intervals.size() == 2);
  CHECK(pts.intervals[0].is_point());
  CHECK(pts.intervals[0].to_string() == "{0}");
  CHECK(pts.intervals[1].is_point());
  RealAlgebraic root = *pts.intervals[1].lo;
  root.refine(Rat(1, 1000000000));
  CHECK(root.approx() == doctest::Approx(std::sqrt(2.0)));
  CHECK(pts.contains(0));
  CHECK_FALSE(pts.contains(Rat(141421, 100000)));
  CHECK_FALSE(pts.contains(Rat(-141421, 100000)));
  CHECK(certificate_report(pts).find("M = {0} u {~1.41421356237}") == 0);
}

TEST_CASE("feasible sets agree with specialized root counts") {
  struct Case {
    std::vector<std::string> vars;
    std::vector<const char*> F;
  };
  std::vector<Case> cases = {
      {{"v"}, {"v^2 - s"}},
      {{"x", "y"}, {"x^2 + y^2 - s", "x - s*y"}},
      {{"x", "y"}, {"x^2 - s*y", "y^2 - s + 1"}},
      {{"x", "y"}, {"s*x^2 + y - 1", "x*y - s", "y^2 - 2*s*x"}},
      {{"x"}, {"x^3 - 3*x + s"}},
  };
  std::mt19937 rng(5);
  int checked = 0;
  for (const auto& cs : cases) {
    auto r = one_param_ring(cs.vars);
    std::vector<Poly> F;
    for (const char* t : cs.F) F.push_back(parse_poly(r, t));
    FeasibleSet M = main_qe_univariate(compute_cgs(F));
    CAPTURE(cs.F.front());
    std::vector<Rat> samples = {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2)};
    for (int k = 0; k < 30; ++k) samples.push_back(random_in(rng, -4, 4));
    for (const Rat& s : samples) {
      int truth = real_points_at(F, s, rng);
      if (truth < 0) continue;
      CAPTURE(s);
      CHECK(M.contains(s) == (truth > 0));
      ++checked;
    }
  }
  CHECK(checked > 150);
}

TEST_CASE("example path is certified") {
  IKSystem path = build_ik_system(ev3(), kStart, kEnd);
  CGS pc = path_cgs(point_cgs(), path, kStart, kEnd);
  FeasibleSet M = main_qe_univariate(pc);
  CHECK(M.covers(0, 1));
  CHECK(M.gaps(0, 1).empty());
  CHECK(M.uncertified.empty());
  CHECK(main_qe_univariate(generate_real_cgs(pc)).covers(0, 1));
}

TEST_CASE("out-of-reach path has a certified gap") {
  IKSystem path = build_ik_system(ev3(), kStart, kFar);
  FeasibleSet M = main_qe_univariate(path_cgs(point_cgs(), path, kStart, kFar));
  CHECK_FALSE(M.covers(0, 1));
  auto gaps = M.gaps(0, 1);
  REQUIRE_FALSE(gaps.empty());
  CHECK(gaps.back().hi->lo == 1);
  CHECK(gaps.back().hi_closed);

  std::mt19937 rng(17);
  int inside = 0, outside = 0;
  for (int k = 0; k < 400 && (inside < 10 || outside < 10); ++k) {
    Rat s = random_in(rng, 0, 1);
    bool in = M.contains(s);
    if ((in && inside >= 10) || (!in && outside >= 10)) continue;
    auto sigma = count_real_roots(point_basis_at(interpolate(kStart, kFar, s)));
    REQUIRE(sigma.has_value());
    CAPTURE(s);
    CHECK((*sigma > 0) == in);
    (in ? inside : outside)++;
  }
  CHECK(inside == 10);
  CHECK(outside == 10);
}

TEST_CASE("trajectory along the example path") {
  SolveOptions opts;
  opts.cache = &point_cgs();
  Trajectory tr = compute_ikp_trajectory(point_system(), kStart, kEnd, 50, opts);
  REQUIRE(tr.complete());
  CHECK_FALSE(tr.stopped.has_value());
  TimingLaw law = TimingLaw::solve(50);
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const auto& st = tr.steps[i];
    CHECK(st.t == static_cast<long>(i) + 1);
    CHECK(st.s == quintic_s(st.t, law).s);
    CHECK(st.pose.x == interpolate(kStart, kEnd, st.s).x);
    CHECK(st.ik.status == IKStatus::solved);
    CHECK_FALSE(st.degenerate());
    CHECK(residual(st.pose, *st.ik.angles) <= 1e-9);
  }
  CHECK(tr.steps.back().s == 1);

  std::string csv = trajectory_csv(tr);
  CHECK(csv.rfind("t,s,x,y,z,theta1,theta4,theta7,degenerate\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 51);

  Trajectory single = compute_ikp_trajectory(point_system(), kStart, kEnd, 1, opts);
  REQUIRE(single.steps.size() == 1);
  CHECK(single.steps[0].s == 1);

  CHECK_THROWS_AS(compute_ikp_trajectory(point_system(), kStart, Pose{10, 100, 20}, 50, opts), PreconditionError);
}

TEST_CASE("leaving the workspace truncates the trajectory") {
  SolveOptions opts;
  opts.cache = &point_cgs();
  Trajectory tr = compute_ikp_trajectory(point_system(), kStart, kFar, 50, opts);
  CHECK_FALSE(tr.complete());
  CHECK_FALSE(tr.steps.empty());
  REQUIRE(tr.stopped.has_value());
  CHECK(tr.stopped->status == IKStatus::infeasible);
}

TEST_CASE("certified planning") {
  SolveOptions opts;
  opts.cache = &point_cgs();
  VerifiedPlan ok = solve_ikp_trajectory_cgsqe(point_system(), kStart, kEnd, 50, opts);
  CHECK(ok.certified);
  CHECK(ok.gaps.empty());
  REQUIRE(ok.trajectory.has_value());
  CHECK(ok.trajectory->complete());

  VerifiedPlan far = solve_ikp_trajectory_cgsqe(point_system(), kStart, kFar, 50, opts);
  CHECK_FALSE(far.certified);
  CHECK_FALSE(far.trajectory.has_value());
  CHECK_FALSE(far.gaps.empty());
  CHECK(certificate_report(far.feasible).find("infeasible") != std::string::npos);
}
