#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cgsqe::cli {

enum ExitCode : int {
  ok = 0,
  infeasible = 1,  // also a truncated or uncertified trajectory
  failed = 2,
  cache_refused = 3,
  usage = 64,
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cgsqe::cli
