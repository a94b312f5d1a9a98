#include "nussbaum_pid/sweep.hpp"

#include <array>
#include <cstddef>
#include <exception>
#include <stdexcept>
#include <string>
#include <utility>

namespace nussbaum_pid {

namespace {

constexpr std::array<std::pair<std::string_view, SweepParam>, 10> param_table{{
    {"kappa-scale", SweepParam::kappa_scale},
    {"k_delta", SweepParam::k_delta},
    {"gamma", SweepParam::gamma},
    {"alpha", SweepParam::alpha},
    {"sigma", SweepParam::sigma},
    {"adapt_gain", SweepParam::adapt_gain},
    {"zeta0", SweepParam::zeta0},
    {"width", SweepParam::width},
    {"dt", SweepParam::dt},
    {"duration", SweepParam::duration},
}};

}  // namespace

SweepParam parse_sweep_param(std::string_view name) {
    for (const auto &[key, param] : param_table) {
        if (key == name) {
            return param;
        }
    }
    throw std::invalid_argument("unknown sweep parameter '" + std::string(name) + "'");
}

std::string_view to_string(SweepParam param) {
    for (const auto &[key, p] : param_table) {
        if (p == param) {
            return key;
        }
    }
    return "?";
}

std::vector<std::string_view> sweep_param_names() {
    std::vector<std::string_view> names;
    for (const auto &entry : param_table) {
        names.push_back(entry.first);
    }
    return names;
}

SimConfig apply_sweep_value(const SimConfig &base, SweepParam param, double value) {
    SimConfig cfg = base;
    switch (param) {
        case SweepParam::kappa_scale: cfg.robot.kappa = value * cfg.robot.kappa; break;
        case SweepParam::k_delta: cfg.controller.k_delta = value; break;
        case SweepParam::gamma: cfg.controller.gamma = value; break;
        case SweepParam::alpha: cfg.controller.alpha = value; break;
        case SweepParam::sigma: cfg.controller.sigma = value; break;
        case SweepParam::adapt_gain: cfg.controller.adapt_gain = value; break;
        case SweepParam::zeta0: cfg.controller.zeta0 = value; break;
        case SweepParam::width: cfg.controller.layout.width = value; break;
        case SweepParam::dt: cfg.dt = value; break;
        case SweepParam::duration: cfg.duration = value; break;
    }
    return cfg;
}

std::vector<RunResult> run_scenarios(std::span<const SimConfig> configs) {
    std::vector<RunResult> results(configs.size());
    std::vector<std::exception_ptr> errors(configs.size());
    const auto n = static_cast<std::ptrdiff_t>(configs.size());
    // Each scenario owns its state; only the result slot is written.
    #pragma omp parallel for schedule(dynamic, 1) default(none) shared(configs, results, errors, n)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            results[static_cast<std::size_t>(i)] = run_scenario(configs[static_cast<std::size_t>(i)]);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto &err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
    return results;
}

std::vector<RunResult> run_scenarios_serial(std::span<const SimConfig> configs) {
    std::vector<RunResult> results;
    results.reserve(configs.size());
    for (const SimConfig &cfg : configs) {
        results.push_back(run_scenario(cfg));
    }
    return results;
}

}  // namespace nussbaum_pid
