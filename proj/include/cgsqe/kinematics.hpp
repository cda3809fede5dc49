#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cgsqe/poly.hpp"

namespace cgsqe {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Angle k * pi/4; cosine and sine lie in Q(sqrt2).
struct ExactAngle {
  int quarters = 0;  // normalized to (-4, 4]

  static ExactAngle parse(std::string_view token);
  QSqrt2 cos() const;
  QSqrt2 sin() const;
  double radians() const;
  std::string to_string() const;
  friend bool operator==(const ExactAngle&, const ExactAngle&) = default;
};

struct DHRow {
  Rat a;
  ExactAngle alpha;
  Rat d;
  std::optional<ExactAngle> theta;  // empty for a joint variable
};

/// Serial chain in the modified DH convention with exactly three revolute
/// joints; joint row i contributes the variables c<i>, s<i>.
class RobotModel {
 public:
  explicit RobotModel(std::vector<DHRow> rows);

  /// The EV3 arm used throughout.
  static RobotModel ev3();
  /// Line format: "i a alpha d theta" with theta a joint name such as
  /// theta1 or an angle token (0, pi/4, pi/2, -pi/2, ...). '#' starts a comment.
  static RobotModel parse(std::string_view text);
  static RobotModel load(const std::string& path);
  std::string to_config() const;

  const std::vector<DHRow>& rows() const { return rows_; }
  /// Row indices (1-based) of the revolute joints.
  const std::array<std::size_t, 3>& joints() const { return joints_; }
  /// c<i>, s<i> for each joint in order.
  std::vector<std::string> joint_variables() const;

  friend bool operator==(const RobotModel& x, const RobotModel& y);

 private:
  std::vector<DHRow> rows_;
  std::array<std::size_t, 3> joints_{};
};

using SymTransform = std::array<std::array<Poly, 4>, 4>;

/// Closed-form link transform; joint rows use the ring variables c<i>, s<i>.
SymTransform dh_transform(const DHRow& row, std::size_t index, const RingPtr& ring);
SymTransform multiply(const SymTransform& x, const SymTransform& y);

/// Translation column of the full product, as polynomials in the joint variables.
std::array<Poly, 3> symbolic_position(const RobotModel& m, const RingPtr& ring);

struct Pose {
  Rat x, y, z;
  std::array<double, 3> to_double() const { return {x.get_d(), y.get_d(), z.get_d()}; }
};

struct JointAngles {
  double theta1 = 0, theta4 = 0, theta7 = 0;  // first, second, third revolute joint
  std::array<double, 3> as_array() const { return {theta1, theta4, theta7}; }
  friend bool operator==(const JointAngles&, const JointAngles&) = default;
};

/// Numeric forward kinematics from the DH product in floating point.
std::array<double, 3> forward_kinematics(const RobotModel& m, const JointAngles& th);

enum class SystemMode { point, path };

struct IKSystem {
  RingPtr ring;
  std::vector<Poly> polys;  // f1..f6
  SystemMode mode = SystemMode::point;
};

/// Main-variable order used for inverse kinematics: grevlex on the joint
/// variables, then lex on the parameters.
TermOrder ik_order(std::size_t nmain = 6);

/// Point mode: parameters x, y, z.
IKSystem build_ik_system(const RobotModel& m, const TermOrder& ord = ik_order());
/// Path mode: parameter s, target p0 (1 - s) + pf s. Needs p0 and pf to
/// differ in every coordinate.
IKSystem build_ik_system(const RobotModel& m, const Pose& p0, const Pose& pf, const TermOrder& ord = ik_order());

class DegenerateRootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Angles from (c1,s1,c4,s4,c7,s7) via atan2, each in (-pi, pi].
JointAngles recover_angles(const std::array<double, 6>& root);

}  // namespace cgsqe
