#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgsqe/cgs.hpp"
#include "cgsqe/kinematics.hpp"

namespace cgsqe {

enum class IKStatus { solved, infeasible, degenerate_handled, failed };
std::string to_string(IKStatus s);

/// Angles are present exactly for solved and degenerate_handled results.
struct IKResult {
  IKStatus status = IKStatus::failed;
  std::optional<JointAngles> angles;
  std::optional<int> real_root_count;  // empty when counting failed
  int branch_index = -1;
  std::vector<double> root;  // the chosen (c1, s1, c4, s4, c7, s7)

  friend bool operator==(const IKResult&, const IKResult&) = default;
};

/// A parameter assignment in which some parameters may still be free.
using PartialPoint = std::vector<std::optional<Rat>>;

/// Inspects f in the parameters for the form a + sum of c_i times even
/// powers. Returns nullopt when f has no real root (a != 0 and every sign
/// agrees), zeroes every parameter of f when a = 0 and the signs agree, and
/// otherwise returns `current` unchanged.
std::optional<PartialPoint> find_trivial_roots(const Poly& f, const PartialPoint& current);

/// Drops branches whose segment has no real point. Removal rules: a
/// univariate equation of degree 2 with negative discriminant, of degree >= 3
/// without real roots, or an even-power equation whose real zeros force
/// parameters to 0 in a way that contradicts the segment.
CGS generate_real_cgs(const CGS& c);

/// Real points of a zero-dimensional basis, sorted lexicographically. Each
/// coordinate is within `tol` of the true value.
std::vector<std::vector<double>> extract_real_solutions(const GBasis& G, double tol = 1e-12);

/// Fixes theta1 = 0 (c1 = 1, s1 = 0) when the basis is not zero-dimensional.
IKResult solve_ikp_nonzerodim(const GBasis& G, double tol = 1e-12);

struct SolveOptions {
  const CGS* cache = nullptr;
  bool realcgs = false;
  double tol = 1e-12;
};

class PartitionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Point-wise inverse kinematics through a CGS of the point-mode system.
IKResult solve_ikp_point(const IKSystem& sys, const Pose& p, const SolveOptions& opts = {});

/// Index of the branch whose segment holds `point`; throws PartitionError
/// when there is none.
std::size_t find_branch(const CGS& c, const std::vector<Rat>& point);

}  // namespace cgsqe
