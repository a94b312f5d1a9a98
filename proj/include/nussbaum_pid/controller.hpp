#pragma once

#include "nussbaum_pid/approximator.hpp"
#include "nussbaum_pid/dynamics.hpp"
#include "nussbaum_pid/linalg.hpp"

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nussbaum_pid {

enum class ControllerKind { nussbaum_pid, fixed_pid };

std::string_view to_string(ControllerKind kind);
/// Accepts "nussbaum-pid" or "fixed-pid"; throws std::invalid_argument otherwise.
ControllerKind parse_controller_kind(std::string_view name);

struct ControllerParams {
    double gamma = 0.5;       ///< error-filter rate (1/s)
    double k_delta = 0.1;     ///< constant derivative gain
    double alpha = 100.0;     ///< adaptation design scalar
    double sigma = 0.1;       ///< leakage
    double adapt_gain = 100.0;
    /// Optional full adaptation matrix (nodes x nodes, row-major, symmetric
    /// positive definite). Empty means adapt_gain * identity.
    std::vector<double> adapt_matrix;
    RbfLayout layout;
    double zeta0 = 0.0;
};

void validate(const ControllerParams &params);

/// Adaptive states: NN weights, Nussbaum argument and the running error integral.
struct ControllerState {
    std::vector<double> psi_hat;
    double zeta = 0.0;
    Vec2 e_int;
};

ControllerState initial_controller_state(const ControllerParams &params);

struct TrackingError {
    Vec2 e;
    Vec2 de;
    Vec2 psi;
};

/// Desired joint trajectory sampled at one instant.
struct DesiredSample {
    Vec2 q;
    Vec2 dq;
    Vec2 ddq;
};

/// Psi = 2 gamma e + gamma^2 int(e) + de
Vec2 generalized_error(const ControllerParams &params, const Vec2 &e, const Vec2 &e_int, const Vec2 &de);

TrackingError tracking_error(const ControllerParams &params, const JointState &s, const Vec2 &e_int,
                             const DesiredSample &desired);

/// N(zeta) = zeta^2 cos(zeta)
double nussbaum(double zeta);

/// Closed-form integral of N over [0, v].
double nussbaum_antiderivative(double v);

/// (1/v) * integral of N over [0, v]; requires v > 0.
double nussbaum_mean(double v);

/// Adaptive part of the derivative gain, -alpha psi_hat^T phi. Not sign-restricted.
double kappa_delta(const ControllerParams &params, std::span<const double> psi_hat, std::span<const double> phi);

/// Proportional/integral/derivative gains tied to the derivative gain so
/// that s^2 + 2 gamma s + gamma^2 is Hurwitz.
struct LinkedGains {
    double proportional = 0.0;
    double integral = 0.0;
    double derivative = 0.0;
};

LinkedGains constant_gains(const ControllerParams &params);
LinkedGains adaptive_gains(const ControllerParams &params, double kappa_delta);

/// K_N(zeta) = -N(zeta)
double nussbaum_gain(double zeta);

/// u = -(k_delta + kappa_delta) N(zeta) Psi
Vec2 control_input(const ControllerParams &params, const Vec2 &psi, double kappa_delta, double zeta);

/// Same control written as three separately weighted PID terms with linked gains.
Vec2 control_input_pid_form(const ControllerParams &params, const Vec2 &e, const Vec2 &e_int, const Vec2 &de,
                            double kappa_delta, double zeta);

/// d(psi_hat)/dt = -Gamma (alpha |Psi|^2 phi + sigma psi_hat), written into `out`.
void weight_derivative(const ControllerParams &params, const Vec2 &psi, std::span<const double> phi,
                       std::span<const double> psi_hat, std::span<double> out);
std::vector<double> weight_derivative(const ControllerParams &params, const Vec2 &psi, std::span<const double> phi,
                                      std::span<const double> psi_hat);

/// d(zeta)/dt = (k_delta + kappa_delta) |Psi|^2
double zeta_derivative(const ControllerParams &params, const Vec2 &psi, double kappa_delta);

/// Fixed-gain baseline: u = k_delta (2 gamma e + gamma^2 int(e) + de).
Vec2 fixed_pid_input(const ControllerParams &params, const Vec2 &e, const Vec2 &e_int, const Vec2 &de);

inline constexpr std::size_t network_input_dim = 8;

/// NN input x = [e, de, q, Psi].
std::array<double, network_input_dim> network_input(const TrackingError &err, const Vec2 &q);

/// Everything the controller produces at one evaluation. psi_hat_rate is
/// written to caller storage so the integrator can evaluate stages without allocating.
struct ControlOutput {
    TrackingError error;
    Vec2 u;
    double kappa_delta = 0.0;
    double n_zeta = 0.0;
    double zeta_rate = 0.0;
};

/// Pure controller evaluation. For fixed-pid, psi_hat_rate is zeroed and zeta_rate is 0.
/// `phi_scratch` must hold layout.nodes entries.
ControlOutput evaluate_controller(const ControllerParams &params, ControllerKind kind, const JointState &s,
                                  std::span<const double> psi_hat, double zeta, const Vec2 &e_int,
                                  const DesiredSample &desired, std::span<double> psi_hat_rate,
                                  std::span<double> phi_scratch);

}  // namespace nussbaum_pid
