#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgsqe/iksolver.hpp"
#include "cgsqe/realroot.hpp"

namespace cgsqe {

/// Quintic time scaling with s(0) = 0, s(T) = 1 and vanishing velocity and
/// acceleration at both ends; sdot = a2 (t/T)^2 + a3 (t/T)^3 + a4 (t/T)^4.
struct TimingLaw {
  long T = 1;
  Rat a2, a3, a4;

  /// Solves the boundary-condition system for a2, a3, a4 exactly.
  static TimingLaw solve(long T);

  /// s, sdot and sddot as polynomials in t.
  UPoly position() const;
  UPoly velocity() const;
  UPoly acceleration() const;
};

struct TimeSample {
  Rat s, sdot, sddot;
};

/// Exact s(t), sdot(t), sddot(t); throws std::out_of_range unless 0 <= t <= T.
TimeSample quintic_s(const Rat& t, const TimingLaw& law);

/// p0 (1 - s) + pf s
Pose interpolate(const Pose& p0, const Pose& pf, const Rat& s);

struct TrajectoryStep {
  long t = 0;
  Rat s;
  Pose pose;
  IKResult ik;

  bool degenerate() const { return ik.status == IKStatus::degenerate_handled; }
};

struct Trajectory {
  long T = 0;
  std::vector<TrajectoryStep> steps;
  /// Status of the step that ended the run early, if any.
  std::optional<IKResult> stopped;

  bool complete() const { return static_cast<long>(steps.size()) == T; }
};

/// Solves t = 1..T along the straight segment from p0 to pf with the
/// point-mode system `sys`, stopping at the first step without a solution.
/// Throws PreconditionError when p0 and pf share a coordinate or T < 1.
Trajectory compute_ikp_trajectory(const IKSystem& sys, const Pose& p0, const Pose& pf, long T,
                                  const SolveOptions& opts = {});

/// Interval of the s-line. An empty bound is infinite; finite bounds are
/// real algebraic numbers.
struct SInterval {
  std::optional<RealAlgebraic> lo, hi;
  bool lo_closed = false, hi_closed = false;

  bool is_point() const { return lo_closed && hi_closed && lo && hi && lo->poly == hi->poly && lo->lo == hi->lo; }
  std::string to_string() const;
};

/// One cell of the decomposition of the s-line, with the branch whose segment
/// holds it and the coefficient signs of the characteristic polynomial there.
struct CellCertificate {
  SInterval cell;
  int branch = -1;  // -1: no segment of the system holds the cell
  std::vector<int> signs;
  int splus = 0, sminus = 0;
  bool certified = true;  // false on a positive-dimensional fiber
  bool feasible = false;
};

/// Values of s for which the specialized system has a real root.
struct FeasibleSet {
  std::vector<SInterval> intervals;    // sorted and disjoint
  std::vector<SInterval> uncertified;  // not decided by the signature
  std::vector<CellCertificate> cells;  // every cell, in increasing order

  bool empty() const { return intervals.empty(); }
  bool contains(const Rat& s) const;
  /// [a, b] is a subset of the set.
  bool covers(const Rat& a, const Rat& b) const;
  /// Maximal sub-intervals of [a, b] outside the set.
  std::vector<SInterval> gaps(const Rat& a, const Rat& b) const;
};

/// Real quantifier elimination for a CGS with the single parameter s.
FeasibleSet main_qe_univariate(const CGS& c);

/// CGS of the path-mode system obtained from a CGS of the point-mode system
/// by substituting the segment p0 (1 - s) + pf s for (x, y, z).
CGS path_cgs(const CGS& point, const IKSystem& path_sys, const Pose& p0, const Pose& pf);

struct VerifiedPlan {
  FeasibleSet feasible;
  bool certified = false;        // [0, 1] lies in the feasible set
  std::vector<SInterval> gaps;   // parts of [0, 1] outside it
  std::optional<Trajectory> trajectory;  // present exactly when certified
};

/// Certifies the whole segment first and only then solves the steps.
/// `opts.cache` is a CGS of the point-mode system `sys`.
VerifiedPlan solve_ikp_trajectory_cgsqe(const IKSystem& sys, const Pose& p0, const Pose& pf, long T,
                                        const SolveOptions& opts = {});

/// Columns t, s, x, y, z, theta1, theta4, theta7, degenerate.
std::string trajectory_csv(const Trajectory& tr);
/// Plain-text listing of the cells with branch, sign condition and endpoints.
std::string certificate_report(const FeasibleSet& m);

}  // namespace cgsqe
