#pragma once

#include "nussbaum_pid/simulation.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nussbaum_pid {

/// Scalar configuration knobs that `sweep` can vary.
enum class SweepParam { kappa_scale, k_delta, gamma, alpha, sigma, adapt_gain, zeta0, width, dt, duration };

SweepParam parse_sweep_param(std::string_view name);
std::string_view to_string(SweepParam param);
std::vector<std::string_view> sweep_param_names();

/// Returns a copy of `base` with `param` set to `value` (kappa_scale multiplies kappa).
SimConfig apply_sweep_value(const SimConfig &base, SweepParam param, double value);

/// Runs every scenario on an OpenMP team; results are in input order.
std::vector<RunResult> run_scenarios(std::span<const SimConfig> configs);

/// Single-threaded reference for run_scenarios.
std::vector<RunResult> run_scenarios_serial(std::span<const SimConfig> configs);

}  // namespace nussbaum_pid
