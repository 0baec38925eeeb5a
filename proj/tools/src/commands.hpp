#pragma once

#include <ostream>

#include "config.hpp"

namespace clebsch::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,  // check found a violated invariant
  kUsage = 2,        // bad flags, config or parameters
  kNumerical = 3,    // solver, step or domain failure
};

int cmd_check(const ExperimentConfig& cfg, std::ostream& log);
int cmd_run(const ExperimentConfig& cfg, std::ostream& log);
int cmd_compare(const ExperimentConfig& cfg, std::ostream& log);
int cmd_convergence(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace clebsch::cli
