#pragma once

#include "nussbaum_pid/controller.hpp"
#include "nussbaum_pid/dynamics.hpp"
#include "nussbaum_pid/linalg.hpp"

#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace nussbaum_pid {

struct SimConfig {
    RobotParams robot;
    ControllerParams controller;
    ControllerKind controller_kind = ControllerKind::nussbaum_pid;
    Vec2 q0{std::numbers::pi / 2.0, -std::numbers::pi / 2.0};
    Vec2 dq0;
    double dt = 1e-4;
    double duration = 20.0;
    std::size_t decimation = 10;
    /// Zero-order hold: controller evaluated once per step, plant integrated with the held torque.
    bool hold = false;
};

void validate(const SimConfig &cfg);

/// Number of integration steps, round(duration / dt).
std::size_t step_count(const SimConfig &cfg);

enum class Preset { paper, flip, skew };

std::string_view to_string(Preset preset);
Preset parse_preset(std::string_view name);

/// Control-direction matrix for a preset: I, -I, diag(0.5, -2).
Mat2 preset_kappa(Preset preset);
SimConfig make_preset(Preset preset);

/// Raised when the closed loop produces a non-finite value or |dq| exceeds divergence_speed.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double divergence_speed = 1e6;

/// Flat closed-loop state: [q(2), dq(2), e_int(2), psi_hat(nodes), zeta].
class AugmentedState {
public:
    static constexpr std::size_t q_offset = 0;
    static constexpr std::size_t dq_offset = 2;
    static constexpr std::size_t e_int_offset = 4;
    static constexpr std::size_t psi_hat_offset = 6;

    static std::size_t size_for(std::size_t nodes) { return 7 + nodes; }

    explicit AugmentedState(std::size_t nodes) : data_(size_for(nodes), 0.0), nodes_(nodes) {}
    AugmentedState(std::vector<double> data, std::size_t nodes);

    static AugmentedState initial(const SimConfig &cfg);

    Vec2 q() const { return {data_[0], data_[1]}; }
    Vec2 dq() const { return {data_[2], data_[3]}; }
    Vec2 e_int() const { return {data_[4], data_[5]}; }
    double zeta() const { return data_.back(); }
    std::span<const double> psi_hat() const { return {data_.data() + psi_hat_offset, nodes_}; }
    std::span<double> psi_hat() { return {data_.data() + psi_hat_offset, nodes_}; }

    void set_q(const Vec2 &v) { set2(q_offset, v); }
    void set_dq(const Vec2 &v) { set2(dq_offset, v); }
    void set_e_int(const Vec2 &v) { set2(e_int_offset, v); }
    void set_zeta(double z) { data_.back() = z; }

    std::size_t nodes() const { return nodes_; }
    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    friend bool operator==(const AugmentedState &, const AugmentedState &) = default;

private:
    void set2(std::size_t off, const Vec2 &v) {
        data_[off] = v[0];
        data_[off + 1] = v[1];
    }

    std::vector<double> data_;
    std::size_t nodes_;
};

/// q_d = [cos t, -cos t] with its first two derivatives.
DesiredSample desired_trajectory(double t);

/// Right-hand side of the closed loop written into `rate`. Throws DivergenceError on non-finite output.
void augmented_derivative(const SimConfig &cfg, double t, std::span<const double> state, std::span<double> rate);
std::vector<double> augmented_derivative(const SimConfig &cfg, double t, const AugmentedState &state);

using VectorField = std::function<void(double t, std::span<const double> x, std::span<double> dx)>;

/// Classical four-stage Runge-Kutta with reusable scratch buffers.
class Rk4 {
public:
    explicit Rk4(std::size_t dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

    /// Advances x in place by one step of size dt.
    void step(const VectorField &f, double t, std::span<double> x, double dt);

private:
    std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

std::vector<double> rk4_step(const VectorField &f, double t, std::span<const double> x, double dt);
AugmentedState rk4_step(const SimConfig &cfg, double t, const AugmentedState &s, double dt);

/// One logged sample of the closed loop.
struct SimRecord {
    double t = 0.0;
    Vec2 q, qd, dq, dqd;
    Vec2 e, de, e_int;
    Vec2 u, tau, psi;
    double zeta = 0.0;
    double n_zeta = 0.0;
    double kappa_delta = 0.0;
    double psi_hat_norm = 0.0;
    /// 1/2 Psi^T M(q) Psi
    double v_track = 0.0;
};

/// Supremum of a monitored signal before and inside the final quarter of the run.
struct SupremumWindow {
    double head = 0.0;
    double tail = 0.0;
};

struct RunMetrics {
    double rms_error_tail = 0.0;
    Vec2 max_abs_error_tail;
    double sup_psi = 0.0;
    double sup_psi_hat = 0.0;
    double sup_abs_zeta = 0.0;
    double zeta_final = 0.0;
    bool diverged = false;
    double divergence_time = 0.0;
    std::size_t steps_completed = 0;
    SupremumWindow psi_window;
    SupremumWindow zeta_window;
    SupremumWindow psi_hat_window;
    /// Set when any monitored signal's tail supremum exceeds growth_factor times its head supremum.
    bool growth_flag = false;
};

inline constexpr double growth_factor = 2.0;

struct RunResult {
    std::vector<SimRecord> records;
    RunMetrics metrics;
};

/// Integrates from t = 0 to duration. Divergence is reported in the metrics, never thrown.
RunResult run_scenario(const SimConfig &cfg);

/// Decrease witness for the generalized-error lemma: tail sups of |e|, |de|,
/// |e_int| finite and tail RMS of |e| no larger than the first-quarter RMS.
bool lemma1_check(std::span<const SimRecord> records);

/// Energy bookkeeping along a record stream: E(end) - E(0) against the trapezoidal integral of dq^T tau.
struct PassivityAudit {
    double energy_change = 0.0;
    double supplied_work = 0.0;
    double absolute_work = 0.0;
    /// |energy_change - supplied_work| / (|E(0)| + absolute_work)
    double relative_residual = 0.0;
};

PassivityAudit passivity_audit(const RobotParams &robot, std::span<const SimRecord> records);

/// Maximum relative mechanical-energy drift of the unforced arm (tau = 0) under RK4.
double unforced_energy_drift(const RobotParams &robot, const JointState &start, double dt, double duration);

}  // namespace nussbaum_pid
