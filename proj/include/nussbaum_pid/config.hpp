#pragma once

#include "nussbaum_pid/simulation.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nussbaum_pid {

/// Malformed document (not valid JSON).
class ConfigParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed document that names an unknown key, has a wrong type, or violates an invariant.
class ConfigValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunSpec {
    SimConfig sim;
    std::optional<std::string> csv_path;
};

/// Parses a config document. Keys absent from the document keep their value from `base`.
///
/// Schema (every key optional):
///   robot      { m1, m2, l1, l2, lc1, lc2, I1, I2, gravity, kappa: [[a, b], [c, d]] }
///   controller { kind: "nussbaum-pid" | "fixed-pid", gamma, k_delta, alpha, sigma,
///                adapt_gain: number | nodes x nodes matrix, zeta0,
///                network { nodes, center_min, center_max, width } }
///   sim        { dt, duration, q0: [a, b], dq0: [a, b], decimation, hold }
///   output     { csv_path }
RunSpec parse_config_text(std::string_view text, const SimConfig &base = SimConfig{});

/// Throws IoError if the file cannot be read.
RunSpec parse_config_file(const std::filesystem::path &path, const SimConfig &base = SimConfig{});

/// Serializes a RunSpec in the schema accepted by parse_config_text.
std::string to_config_text(const RunSpec &spec);

}  // namespace nussbaum_pid
