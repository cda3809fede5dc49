#include "cgsqe/kinematics.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace cgsqe {

namespace {

int normalize_quarters(int k) {
  k %= 8;
  if (k <= -4) k += 8;
  if (k > 4) k -= 8;
  return k;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

ExactAngle ExactAngle::parse(std::string_view token) {
  std::string t;
  for (char ch : token)
    if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') t += ch;
  if (t == "0") return {};
  int sign = 1;
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
    sign = t[0] == '-' ? -1 : 1;
    t.erase(0, 1);
  }
  auto pi = t.find("pi");
  if (pi == std::string::npos) throw ModelError("angle '" + std::string(token) + "' is not a multiple of pi/4");
  int mult = 1;
  if (pi > 0) {
    std::string num = t.substr(0, pi);
    if (num.find_first_not_of("0123456789") != std::string::npos)
      throw ModelError("malformed angle '" + std::string(token) + "'");
    mult = std::stoi(num);
  }
  std::string rest = t.substr(pi + 2);
  int div = 1;
  if (!rest.empty()) {
    if (rest[0] != '/' || rest.size() < 2 || rest.find_first_not_of("0123456789", 1) != std::string::npos)
      throw ModelError("malformed angle '" + std::string(token) + "'");
    div = std::stoi(rest.substr(1));
  }
  if (div != 1 && div != 2 && div != 4) throw ModelError("angle '" + std::string(token) + "' is not a multiple of pi/4");
  return {normalize_quarters(sign * mult * (4 / div))};
}

QSqrt2 ExactAngle::cos() const {
  static const QSqrt2 h(Rat(0), Rat(1, 2));
  switch ((quarters + 8) % 8) {
    case 0: return QSqrt2(1);
    case 1: case 7: return h;
    case 2: case 6: return QSqrt2(0);
    case 3: case 5: return -h;
    default: return QSqrt2(-1);
  }
}

QSqrt2 ExactAngle::sin() const {
  static const QSqrt2 h(Rat(0), Rat(1, 2));
  switch ((quarters + 8) % 8) {
    case 0: case 4: return QSqrt2(0);
    case 1: case 3: return h;
    case 2: return QSqrt2(1);
    case 5: case 7: return -h;
    default: return QSqrt2(-1);
  }
}

double ExactAngle::radians() const { return quarters * std::numbers::pi / 4; }

std::string ExactAngle::to_string() const {
  switch (quarters) {
    case 0: return "0";
    case 1: return "pi/4";
    case 2: return "pi/2";
    case 3: return "3pi/4";
    case 4: return "pi";
    case -1: return "-pi/4";
    case -2: return "-pi/2";
    case -3: return "-3pi/4";
  }
  return "?";
}

RobotModel::RobotModel(std::vector<DHRow> rows) : rows_(std::move(rows)) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].theta) continue;
    if (n == 3) throw ModelError("robot model has more than three joint variables");
    joints_[n++] = i + 1;
  }
  if (n != 3) throw ModelError("robot model needs exactly three joint variables");
}

RobotModel RobotModel::ev3() {
  auto q = [](int k) { return ExactAngle{k}; };
  std::vector<DHRow> rows = {
      {0, q(0), 80, std::nullopt}, {0, q(2), 0, q(1)},   {88, q(0), 0, q(1)}, {24, q(0), 0, std::nullopt},
      {96, q(0), 0, q(-2)},        {16, q(0), 0, q(2)},  {40, q(0), 0, std::nullopt}, {120, q(0), 0, q(0)},
  };
  return RobotModel(std::move(rows));
}

RobotModel RobotModel::parse(std::string_view text) {
  std::vector<DHRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::istringstream fields(line);
    std::string idx, a, alpha, d, theta, extra;
    if (!(fields >> idx >> a >> alpha >> d >> theta) || (fields >> extra))
      throw ModelError("line " + std::to_string(lineno) + ": expected 'i a alpha d theta'");
    if (idx != std::to_string(rows.size() + 1))
      throw ModelError("line " + std::to_string(lineno) + ": rows must be numbered 1, 2, ...");
    try {
      DHRow row{parse_rational(a), ExactAngle::parse(alpha), parse_rational(d), std::nullopt};
      if (theta.rfind("theta", 0) != 0) row.theta = ExactAngle::parse(theta);
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw ModelError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (rows.empty()) throw ModelError("robot model has no rows");
  return RobotModel(std::move(rows));
}

RobotModel RobotModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot read robot model '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string RobotModel::to_config() const {
  std::string out = "# i  a  alpha  d  theta\n";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    out += std::to_string(i + 1) + " " + r.a.get_str() + " " + r.alpha.to_string() + " " + r.d.get_str() + " " +
           (r.theta ? r.theta->to_string() : "theta" + std::to_string(i + 1)) + "\n";
  }
  return out;
}

std::vector<std::string> RobotModel::joint_variables() const {
  std::vector<std::string> out;
  for (auto j : joints_) {
    out.push_back("c" + std::to_string(j));
    out.push_back("s" + std::to_string(j));
  }
  return out;
}

bool operator==(const RobotModel& x, const RobotModel& y) {
  if (x.rows_.size() != y.rows_.size()) return false;
  for (std::size_t i = 0; i < x.rows_.size(); ++i) {
    const auto& a = x.rows_[i];
    const auto& b = y.rows_[i];
    if (a.a != b.a || !(a.alpha == b.alpha) || a.d != b.d || a.theta != b.theta) return false;
  }
  return true;
}

SymTransform dh_transform(const DHRow& row, std::size_t index, const RingPtr& ring) {
  Poly ct(ring), st(ring);
  if (row.theta) {
    ct = Poly(ring, row.theta->cos());
    st = Poly(ring, row.theta->sin());
  } else {
    auto ci = ring->index_of("c" + std::to_string(index));
    auto si = ring->index_of("s" + std::to_string(index));
    if (!ci || !si) throw ModelError("ring lacks the variables of joint " + std::to_string(index));
    ct = Poly::variable(ring, *ci);
    st = Poly::variable(ring, *si);
  }
  const QSqrt2 ca = row.alpha.cos(), sa = row.alpha.sin();
  const QSqrt2 a(row.a), d(row.d);
  auto k = [&](const QSqrt2& v) { return Poly(ring, v); };
  return {{
      {ct, -st, k(0), k(a)},
      {st.scale(ca), ct.scale(ca), k(-sa), k(-(d * sa))},
      {st.scale(sa), ct.scale(sa), k(ca), k(d * ca)},
      {k(0), k(0), k(0), k(1)},
  }};
}

SymTransform multiply(const SymTransform& x, const SymTransform& y) {
  const RingPtr& ring = x[0][0].ring();
  SymTransform r{{
      {Poly(ring), Poly(ring), Poly(ring), Poly(ring)},
      {Poly(ring), Poly(ring), Poly(ring), Poly(ring)},
      {Poly(ring), Poly(ring), Poly(ring), Poly(ring)},
      {Poly(ring), Poly(ring), Poly(ring), Poly(ring)},
  }};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k)
        if (!x[i][k].is_zero() && !y[k][j].is_zero()) r[i][j] += x[i][k] * y[k][j];
  return r;
}

std::array<Poly, 3> symbolic_position(const RobotModel& m, const RingPtr& ring) {
  SymTransform T = dh_transform(m.rows()[0], 1, ring);
  for (std::size_t i = 1; i < m.rows().size(); ++i) T = multiply(T, dh_transform(m.rows()[i], i + 1, ring));
  return {T[0][3], T[1][3], T[2][3]};
}

std::array<double, 3> forward_kinematics(const RobotModel& m, const JointAngles& th) {
  using M4 = std::array<std::array<double, 4>, 4>;
  M4 T{};
  for (int i = 0; i < 4; ++i) T[i][i] = 1;
  const auto angles = th.as_array();
  std::size_t next_joint = 0;
  for (const auto& row : m.rows()) {
    double t = row.theta ? row.theta->radians() : angles[next_joint++];
    double al = row.alpha.radians();
    double a = row.a.get_d(), d = row.d.get_d();
    double ct = std::cos(t), st = std::sin(t), ca = std::cos(al), sa = std::sin(al);
    M4 L = {{{ct, -st, 0, a}, {ca * st, ca * ct, -sa, -d * sa}, {sa * st, sa * ct, ca, d * ca}, {0, 0, 0, 1}}};
    M4 R{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) R[i][j] += T[i][k] * L[k][j];
    T = R;
  }
  return {T[0][3], T[1][3], T[2][3]};
}

TermOrder ik_order(std::size_t nmain) { return TermOrder::block(nmain, OrderKind::grevlex, OrderKind::lex); }

IKSystem build_ik_system(const RobotModel& m, const TermOrder& ord) {
  auto names = m.joint_variables();
  names.insert(names.end(), {"x", "y", "z"});
  auto ring = Ring::make(names, 3, ord);
  auto fk = symbolic_position(m, ring);
  IKSystem sys{ring, {}, SystemMode::point};
  for (std::size_t k = 0; k < 3; ++k) sys.polys.push_back(Poly::variable(ring, 6 + k) - fk[k]);
  for (std::size_t j = 0; j < 3; ++j) {
    Poly c = Poly::variable(ring, 2 * j), s = Poly::variable(ring, 2 * j + 1);
    sys.polys.push_back(s * s + c * c - Poly(ring, 1));
  }
  return sys;
}

IKSystem build_ik_system(const RobotModel& m, const Pose& p0, const Pose& pf, const TermOrder& ord) {
  if (p0.x == pf.x || p0.y == pf.y || p0.z == pf.z)
    throw PreconditionError("path endpoints must differ in every coordinate");
  auto names = m.joint_variables();
  names.push_back("s");
  auto ring = Ring::make(names, 1, ord);
  auto fk = symbolic_position(m, ring);
  const Poly s = Poly::variable(ring, 6);
  const Poly one(ring, 1);
  const std::array<std::pair<Rat, Rat>, 3> ends = {{{p0.x, pf.x}, {p0.y, pf.y}, {p0.z, pf.z}}};
  IKSystem sys{ring, {}, SystemMode::path};
  for (std::size_t k = 0; k < 3; ++k) {
    Poly target = (one - s).scale(QSqrt2(ends[k].first)) + s.scale(QSqrt2(ends[k].second));
    sys.polys.push_back(target - fk[k]);
  }
  for (std::size_t j = 0; j < 3; ++j) {
    Poly c = Poly::variable(ring, 2 * j), sn = Poly::variable(ring, 2 * j + 1);
    sys.polys.push_back(sn * sn + c * c - one);
  }
  return sys;
}

JointAngles recover_angles(const std::array<double, 6>& root) {
  std::array<double, 3> th{};
  for (std::size_t j = 0; j < 3; ++j) {
    double c = root[2 * j], s = root[2 * j + 1];
    double r2 = c * c + s * s;
    if (r2 < 1e-18) throw DegenerateRootError("cosine and sine both vanish");
    if (std::abs(r2 - 1) > 1e-9) throw PreconditionError("root is off the unit circle");
    double t = std::atan2(s, c);
    if (t <= -std::numbers::pi) t += 2 * std::numbers::pi;
    th[j] = t;
  }
  return {th[0], th[1], th[2]};
}

}  // namespace cgsqe
