#pragma once

#include "nussbaum_pid/properties.hpp"
#include "nussbaum_pid/simulation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nussbaum_pid {

struct PropertyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

using AntiderivativeFn = double (*)(double);

/// Model functions the suite exercises. Replacing one lets a test confirm the
/// matching check actually catches the fault.
struct VerifyHooks {
    CoriolisFn coriolis = &coriolis_matrix;
    AntiderivativeFn antiderivative = &nussbaum_antiderivative;
};

/// Tolerances of the property suite.
namespace tolerance {
inline constexpr std::size_t model_samples = 1000;
inline constexpr double symmetry = 1e-12;
inline constexpr double skew = 1e-10;
inline constexpr double gravity_gradient = 1e-6;
inline constexpr double energy_drift = 1e-6;
inline constexpr double rk4_ratio_low = 12.0;
inline constexpr double rk4_ratio_high = 20.0;
inline constexpr double nussbaum_quadrature = 1e-8;
inline constexpr double nussbaum_horizon = 200.0;
inline constexpr double witness_limit = 100.0;
inline constexpr double witness_level = 10.0;
inline constexpr double gain_linking = 1e-12;
}  // namespace tolerance

/// (1/v) * integral of zeta^2 cos(zeta) over [0, v] by adaptive Gauss-Kronrod quadrature.
double nussbaum_mean_quadrature(double v);

/// Largest |analytic - quadrature| Nussbaum mean over a grid on (0, horizon].
double nussbaum_mean_max_error(AntiderivativeFn antiderivative, double horizon, double spacing);

struct NussbaumWitnesses {
    std::optional<double> above;  ///< first grid v with mean > level
    std::optional<double> below;  ///< first grid v with mean < -level
};

NussbaumWitnesses find_nussbaum_witnesses(AntiderivativeFn antiderivative, double limit, double level);

/// Richardson self-comparison |x(dt) - x(dt/2)| / |x(dt/2) - x(dt/4)| of the
/// closed-loop endpoint after `horizon` seconds; about 16 for a fourth-order method.
double rk4_order_ratio(const SimConfig &cfg, double horizon, double dt);

/// Largest |three-term PID form - collapsed form| over random inputs, scaled by max(1, |u|).
double gain_linking_max_error(std::size_t count, std::uint64_t seed);

PropertyCheck check_mass_matrix(const ModelPropertyStats &stats);
PropertyCheck check_skew_symmetry(const ModelPropertyStats &stats);
PropertyCheck check_gravity(const RobotParams &p, const ModelPropertyStats &stats);
PropertyCheck check_passivity(const RobotParams &p);
PropertyCheck check_rk4_order();
PropertyCheck check_nussbaum_mean(const VerifyHooks &hooks);
PropertyCheck check_nussbaum_witnesses(const VerifyHooks &hooks);
PropertyCheck check_gain_linking();

std::vector<PropertyCheck> run_property_suite(const VerifyHooks &hooks = {});

}  // namespace nussbaum_pid
