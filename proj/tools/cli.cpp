#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cgsqe/planner.hpp"

namespace cgsqe::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string robot;
  std::string cache;
  std::string format;
  double tol = 1e-12;
  bool realcgs = false;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Rat number(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

Pose point(const std::string& text) {
  std::vector<Rat> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(number(item));
  if (v.size() != 3) throw UsageError("expected x,y,z but got '" + text + "'");
  return {v[0], v[1], v[2]};
}

RobotModel robot(const RunConfig& cfg) { return cfg.robot.empty() ? RobotModel::ev3() : RobotModel::load(cfg.robot); }

ordered_json header(const std::string& command) {
  ordered_json j;
  j["version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

// CGS of the point-mode system from the cache, or computed in memory.
CGS obtain_cgs(const IKSystem& sys, const RunConfig& cfg) {
  CGS c;
  if (cfg.cache.empty()) {
    c = compute_cgs(sys.polys);
  } else {
    if (!std::filesystem::exists(cfg.cache))
      throw UsageError("cache '" + cfg.cache + "' not found; create it with 'cgsqe cgs compute --cache " + cfg.cache + "'");
    c = cgs_load(cfg.cache, sys.polys);
  }
  if (cfg.realcgs && !c.pruned) c = generate_real_cgs(c);
  return c;
}

std::string plain(const QSqrt2& q) {
  std::string s = q.to_string();
  if (s.size() > 1 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  return s;
}

std::optional<std::vector<ExactAngle>> exact_angles(const std::vector<std::string>& tokens) {
  std::vector<ExactAngle> out;
  for (const auto& t : tokens) {
    try {
      out.push_back(ExactAngle::parse(t));
    } catch (const ModelError&) {
      return std::nullopt;
    }
  }
  return out;
}

double radians(const std::string& token) {
  try {
    return ExactAngle::parse(token).radians();
  } catch (const ModelError&) {
    return number(token).get_d();
  }
}

int cmd_fk(const std::vector<std::string>& tokens, const RunConfig& cfg, std::ostream& out) {
  RobotModel m = robot(cfg);
  JointAngles th{radians(tokens[0]), radians(tokens[1]), radians(tokens[2])};
  auto p = forward_kinematics(m, th);
  std::optional<std::array<QSqrt2, 3>> exact;
  if (auto ex = exact_angles(tokens)) {
    auto ring = Ring::make(m.joint_variables(), 0, TermOrder::grevlex());
    auto sym = symbolic_position(m, ring);
    std::vector<QSqrt2> at;
    for (const auto& a : *ex) {
      at.push_back(a.cos());
      at.push_back(a.sin());
    }
    exact = std::array<QSqrt2, 3>{sym[0].eval(at), sym[1].eval(at), sym[2].eval(at)};
    for (int k = 0; k < 3; ++k) p[k] = (*exact)[k].to_double();
  }
  if (cfg.format == "json") {
    ordered_json j = header("fk");
    j["angles"] = {th.theta1, th.theta4, th.theta7};
    j["position"] = {p[0], p[1], p[2]};
    j["exact"] = exact ? ordered_json{plain((*exact)[0]), plain((*exact)[1]), plain((*exact)[2])} : ordered_json();
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    out << "x,y,z,exact_x,exact_y,exact_z\n" << fmt(p[0]) << ',' << fmt(p[1]) << ',' << fmt(p[2]);
    for (int k = 0; k < 3; ++k) out << ',' << (exact ? plain((*exact)[k]) : "");
    out << "\n";
  } else {
    const char* names[] = {"x", "y", "z"};
    for (int k = 0; k < 3; ++k) {
      out << names[k] << " = " << fmt(p[k]);
      if (exact) out << "  = " << plain((*exact)[k]);
      out << "\n";
    }
  }
  return ok;
}

int exit_for(IKStatus s) {
  switch (s) {
    case IKStatus::solved:
    case IKStatus::degenerate_handled:
      return ok;
    case IKStatus::infeasible:
      return infeasible;
    case IKStatus::failed:
      return failed;
  }
  return failed;
}

double residual(const RobotModel& m, const Pose& p, const JointAngles& th) {
  auto q = forward_kinematics(m, th);
  auto d = p.to_double();
  return std::hypot(q[0] - d[0], q[1] - d[1], q[2] - d[2]);
}

int cmd_ik(const std::vector<std::string>& coords, const RunConfig& cfg, std::ostream& out) {
  Pose target{number(coords[0]), number(coords[1]), number(coords[2])};
  RobotModel m = robot(cfg);
  IKSystem sys = build_ik_system(m);
  CGS c = obtain_cgs(sys, cfg);
  SolveOptions opts;
  opts.cache = &c;
  opts.tol = cfg.tol;
  IKResult r = solve_ikp_point(sys, target, opts);
  std::optional<double> res;
  if (r.angles) res = residual(m, target, *r.angles);

  if (cfg.format == "json") {
    ordered_json j = header("ik");
    j["target"] = {rat_to_string(target.x), rat_to_string(target.y), rat_to_string(target.z)};
    j["status"] = to_string(r.status);
    j["realRootCount"] = r.real_root_count ? ordered_json(*r.real_root_count) : ordered_json();
    j["branch"] = r.branch_index;
    j["angles"] = r.angles ? ordered_json{r.angles->theta1, r.angles->theta4, r.angles->theta7} : ordered_json();
    j["residual"] = res ? ordered_json(*res) : ordered_json();
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    out << "status,realRootCount,branch,theta1,theta4,theta7,residual\n";
    out << to_string(r.status) << ',' << (r.real_root_count ? std::to_string(*r.real_root_count) : "") << ',' << r.branch_index;
    for (double a : r.angles ? r.angles->as_array() : std::array<double, 3>{NAN, NAN, NAN}) out << ',' << (r.angles ? fmt(a) : "");
    out << ',' << (res ? fmt(*res) : "") << "\n";
  } else {
    out << "status " << to_string(r.status) << "\n";
    out << "real roots " << (r.real_root_count ? std::to_string(*r.real_root_count) : "unknown") << "\n";
    out << "branch " << r.branch_index << "\n";
    if (r.angles) {
      out << "theta1 " << fmt(r.angles->theta1) << "\ntheta4 " << fmt(r.angles->theta4) << "\ntheta7 "
          << fmt(r.angles->theta7) << "\n";
      out << "residual " << fmt(*res) << "\n";
    }
  }
  return exit_for(r.status);
}

std::string brief(const Poly& p) {
  std::string s = p.to_string();
  return s.size() <= 60 ? s : s.substr(0, 57) + "...";
}

void check_writable(const std::string& path) {
  if (path.empty()) throw UsageError("--cache PATH is required");
  auto dir = std::filesystem::absolute(path).parent_path();
  if (!std::filesystem::is_directory(dir)) throw UsageError("directory '" + dir.string() + "' does not exist");
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw UsageError("cannot write '" + path + "'");
}

int cmd_cgs(const std::string& action, const RunConfig& cfg, std::ostream& out) {
  IKSystem sys = build_ik_system(robot(cfg));
  if (action == "compute") {
    check_writable(cfg.cache);
    CGS c = compute_cgs(sys.polys);
    if (cfg.realcgs) c = generate_real_cgs(c);
    cgs_save(c, cfg.cache);
    out << "wrote " << c.branches.size() << " branches to " << cfg.cache << "\n";
    return ok;
  }
  if (cfg.cache.empty()) throw UsageError("--cache PATH is required");
  RunConfig stored = cfg;
  stored.realcgs = false;
  CGS c = obtain_cgs(sys, stored);
  if (action == "prune") {
    check_writable(cfg.cache);
    CGS p = generate_real_cgs(c);
    cgs_save(p, cfg.cache);
    out << "pruned " << c.branches.size() << " -> " << p.branches.size() << " branches in " << cfg.cache << "\n";
    return ok;
  }
  if (cfg.format == "json") {
    ordered_json j = header("cgs info");
    j["vars"] = c.vars();
    j["params"] = c.params();
    j["order"] = c.ord().to_string();
    j["pruned"] = c.pruned;
    ordered_json branches = ordered_json::array();
    for (const auto& b : c.branches) {
      ordered_json e = ordered_json::array(), n = ordered_json::array();
      for (const auto& p : b.segment.eqs) e.push_back(p.to_string());
      for (const auto& p : b.segment.neqs) n.push_back(p.to_string());
      branches.push_back({{"eqs", e}, {"neqs", n}, {"basisSize", b.basis.size()}});
    }
    j["branches"] = branches;
    out << j.dump(2) << "\n";
    return ok;
  }
  out << "branches " << c.branches.size() << (c.pruned ? " (pruned)" : "") << "\n";
  for (std::size_t i = 0; i < c.branches.size(); ++i) {
    const auto& b = c.branches[i];
    out << i << ": eqs {";
    for (std::size_t k = 0; k < b.segment.eqs.size(); ++k) out << (k ? ", " : "") << brief(b.segment.eqs[k]);
    out << "} neqs {";
    for (std::size_t k = 0; k < b.segment.neqs.size(); ++k) out << (k ? ", " : "") << brief(b.segment.neqs[k]);
    out << "} basis " << b.basis.size() << "\n";
  }
  return ok;
}

ordered_json steps_json(const Trajectory& tr) {
  ordered_json steps = ordered_json::array();
  for (const auto& st : tr.steps) {
    auto p = st.pose.to_double();
    steps.push_back({{"t", st.t},
                     {"s", rat_to_string(st.s)},
                     {"pose", {p[0], p[1], p[2]}},
                     {"angles", {st.ik.angles->theta1, st.ik.angles->theta4, st.ik.angles->theta7}},
                     {"degenerate", st.degenerate()}});
  }
  return steps;
}

ordered_json certificate_json(const VerifiedPlan& plan) {
  ordered_json m = ordered_json::array(), gaps = ordered_json::array(), cells = ordered_json::array();
  for (const auto& I : plan.feasible.intervals) m.push_back(I.to_string());
  for (const auto& I : plan.gaps) gaps.push_back(I.to_string());
  for (const auto& c : plan.feasible.cells)
    cells.push_back({{"cell", c.cell.to_string()},
                     {"branch", c.branch},
                     {"signs", c.signs},
                     {"splus", c.splus},
                     {"sminus", c.sminus},
                     {"certified", c.certified},
                     {"feasible", c.feasible}});
  return {{"certified", plan.certified}, {"feasibleSet", m}, {"gaps", gaps}, {"cells", cells}};
}

void write_rows(const Trajectory& tr, const std::string& format, std::ostream& out) {
  std::string csv = trajectory_csv(tr);
  if (format == "text") std::replace(csv.begin(), csv.end(), ',', ' ');
  out << csv;
}

int cmd_traj(const std::string& from, const std::string& to, long T, bool verify, const RunConfig& cfg, std::ostream& out,
             std::ostream& err) {
  Pose p0 = point(from), pf = point(to);
  if (T < 1) throw UsageError("T must be a positive integer");
  RobotModel m = robot(cfg);
  IKSystem sys = build_ik_system(m);
  CGS c = obtain_cgs(sys, cfg);
  SolveOptions opts;
  opts.cache = &c;
  opts.tol = cfg.tol;
  opts.realcgs = cfg.realcgs;
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;

  std::optional<VerifiedPlan> plan;
  Trajectory tr;
  if (verify) {
    plan = solve_ikp_trajectory_cgsqe(sys, p0, pf, T, opts);
    if (plan->trajectory) tr = *plan->trajectory;
  } else {
    tr = compute_ikp_trajectory(sys, p0, pf, T, opts);
  }

  if (format == "json") {
    ordered_json j = header("traj");
    j["T"] = T;
    if (plan) j["certificate"] = certificate_json(*plan);
    j["complete"] = tr.complete();
    j["steps"] = steps_json(tr);
    j["stopped"] = tr.stopped ? ordered_json{{"t", static_cast<long>(tr.steps.size()) + 1}, {"status", to_string(tr.stopped->status)}}
                              : ordered_json();
    out << j.dump(2) << "\n";
  } else {
    if (plan) {
      out << (plan->certified ? "# certified: [0,1] ⊆ M\n" : "# not certified: [0,1] ⊄ M\n");
      std::istringstream report(certificate_report(plan->feasible));
      for (std::string line; std::getline(report, line);) out << "# " << line << "\n";
      for (const auto& g : plan->gaps) out << "# gap " << g.to_string() << "\n";
    }
    if (!plan || plan->certified) write_rows(tr, format, out);
  }
  if (plan && !plan->certified) {
    err << "path leaves the feasible set; no trajectory computed\n";
    return infeasible;
  }
  if (!tr.complete()) {
    err << "stopped at t=" << tr.steps.size() + 1 << ": " << (tr.stopped ? to_string(tr.stopped->status) : "failed") << "\n";
    return tr.stopped && tr.stopped->status == IKStatus::failed ? failed : infeasible;
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse kinematics and path certification with comprehensive Groebner systems", "cgsqe"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--robot", cfg.robot, "robot model file (default: EV3)")->check(CLI::ExistingFile);
  app.add_option("--cache", cfg.cache, "CGS cache file of the point-mode system");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--tol", cfg.tol, "root accuracy")->check(CLI::PositiveNumber);
  app.add_flag("--realcgs", cfg.realcgs, "drop branches without real points first");

  std::vector<std::string> angles, coords;
  auto* fk = app.add_subcommand("fk", "forward kinematics of theta1 theta4 theta7");
  fk->add_option("angles", angles, "radians or multiples of pi/4")->expected(3)->required();
  auto* ik = app.add_subcommand("ik", "inverse kinematics of a target x y z");
  ik->add_option("coords", coords, "integers, decimals or fractions")->expected(3)->required();

  auto* cgs = app.add_subcommand("cgs", "manage the CGS cache");
  cgs->require_subcommand(1);
  auto* compute = cgs->add_subcommand("compute", "compute and write the cache");
  auto* prune = cgs->add_subcommand("prune", "remove branches without real points");
  auto* info = cgs->add_subcommand("info", "summarize the cache");

  std::string from, to;
  long T = 0;
  bool verify = false;
  auto* traj = app.add_subcommand("traj", "trajectory along the segment p0 -> pf in T steps");
  traj->add_option("p0", from, "x,y,z")->required();
  traj->add_option("pf", to, "x,y,z")->required();
  traj->add_option("T", T, "number of steps")->required();
  traj->add_flag("--verify", verify, "certify the whole segment first");

  // "-pi/4" would otherwise be read as a short option; the parsers skip spaces
  std::vector<std::string> words;
  for (const auto& a : args) {
    bool negative_angle = a.size() > 1 && a[0] == '-' && a.find("pi") != std::string::npos &&
                          a.find_first_not_of("0123456789*", 1) == a.find("pi");
    words.push_back(negative_angle ? " " + a : a);
  }
  std::vector<const char*> argv{"cgsqe"};
  for (const auto& a : words) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'cgsqe --help' for usage\n";
    return usage;
  }

  try {
    if (*fk) return cmd_fk(angles, cfg, out);
    if (*ik) return cmd_ik(coords, cfg, out);
    if (*traj) return cmd_traj(from, to, T, verify, cfg, out, err);
    if (*compute) return cmd_cgs("compute", cfg, out);
    if (*prune) return cmd_cgs("prune", cfg, out);
    if (*info) return cmd_cgs("info", cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const CacheValidationError& e) {
    err << "refusing cache '" << cfg.cache << "': " << e.what()
        << "\nrecompute it with 'cgsqe cgs compute --cache " << cfg.cache << "'\n";
    return cache_refused;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return failed;
  }
  return usage;
}

}  // namespace cgsqe::cli
