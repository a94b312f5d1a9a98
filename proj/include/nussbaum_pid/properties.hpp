#pragma once

#include "nussbaum_pid/dynamics.hpp"
#include "nussbaum_pid/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace nussbaum_pid {

/// One random probe of the arm model: configuration, velocity and a test direction.
struct ModelSample {
    Vec2 q;
    Vec2 dq;
    Vec2 x;
};

/// q uniform in [-pi, pi]^2, dq in [-10, 10]^2, x in [-1, 1]^2. Deterministic for a given seed.
std::vector<ModelSample> draw_model_samples(std::size_t count, std::uint64_t seed);

using CoriolisFn = Mat2 (*)(const RobotParams &, const Vec2 &, const Vec2 &);

/// Worst cases over a sample batch.
struct ModelPropertyStats {
    double max_asymmetry = 0.0;        ///< |M12 - M21|
    double min_eigenvalue = 0.0;       ///< smallest eigenvalue of M seen
    double max_eigenvalue = 0.0;       ///< largest eigenvalue of M seen
    double max_skew_residual = 0.0;    ///< |x^T (Mdot - 2C) x|
    double max_gravity_norm = 0.0;     ///< |G(q)|_2
    double max_gravity_component = 0.0;  ///< |G(q)|_inf
    double max_gravity_gradient_error = 0.0;  ///< |G - central-difference grad(potential)|_inf
};

inline constexpr double gradient_step = 1e-6;

/// OpenMP kernel over the sample batch.
ModelPropertyStats evaluate_model_properties(const RobotParams &p, std::span<const ModelSample> samples,
                                             CoriolisFn coriolis = &coriolis_matrix);

/// Serial reference for evaluate_model_properties; results are identical.
ModelPropertyStats evaluate_model_properties_serial(const RobotParams &p, std::span<const ModelSample> samples,
                                                    CoriolisFn coriolis = &coriolis_matrix);

}  // namespace nussbaum_pid
