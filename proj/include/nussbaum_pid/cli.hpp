#pragma once

#include "nussbaum_pid/simulation.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nussbaum_pid {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,  ///< bad flags or a config that fails validation
    exit_io = 2,
    exit_verify_failed = 3,
    exit_malformed_config = 4,  ///< config text is not valid JSON
};

/// Human-readable one-block metrics summary.
std::string format_metrics(const SimConfig &cfg, const RunMetrics &metrics);

/// Entry point shared by the executable and the tests. `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace nussbaum_pid
