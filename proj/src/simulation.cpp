#include "nussbaum_pid/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nussbaum_pid {

void validate(const SimConfig &cfg) {
    validate(cfg.robot);
    validate(cfg.controller);
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        throw std::invalid_argument("sim: dt must be positive");
    }
    if (!(cfg.duration >= cfg.dt) || !std::isfinite(cfg.duration)) {
        throw std::invalid_argument("sim: duration must be at least dt");
    }
    if (cfg.decimation < 1) {
        throw std::invalid_argument("sim: decimation must be >= 1");
    }
    if (!is_finite(cfg.q0) || !is_finite(cfg.dq0)) {
        throw std::invalid_argument("sim: initial state must be finite");
    }
}

std::size_t step_count(const SimConfig &cfg) {
    return static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));
}

std::string_view to_string(Preset preset) {
    switch (preset) {
        case Preset::paper: return "paper";
        case Preset::flip: return "flip";
        case Preset::skew: return "skew";
    }
    return "paper";
}

Preset parse_preset(std::string_view name) {
    if (name == "paper") return Preset::paper;
    if (name == "flip") return Preset::flip;
    if (name == "skew") return Preset::skew;
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

Mat2 preset_kappa(Preset preset) {
    switch (preset) {
        case Preset::paper: return Mat2::identity();
        case Preset::flip: return Mat2::diagonal(-1.0, -1.0);
        case Preset::skew: return Mat2::diagonal(0.5, -2.0);
    }
    return Mat2::identity();
}

SimConfig make_preset(Preset preset) {
    SimConfig cfg;
    cfg.robot.kappa = preset_kappa(preset);
    return cfg;
}

AugmentedState::AugmentedState(std::vector<double> data, std::size_t nodes) : data_(std::move(data)), nodes_(nodes) {
    if (data_.size() != size_for(nodes)) {
        throw std::invalid_argument("augmented state: length does not match node count");
    }
}

AugmentedState AugmentedState::initial(const SimConfig &cfg) {
    AugmentedState s(cfg.controller.layout.nodes);
    s.set_q(cfg.q0);
    s.set_dq(cfg.dq0);
    s.set_zeta(cfg.controller.zeta0);
    return s;
}

DesiredSample desired_trajectory(double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    return {{c, -c}, {-s, s}, {-c, c}};
}

namespace {

std::span<double> phi_scratch(std::size_t nodes) {
    thread_local std::vector<double> buffer;
    buffer.resize(nodes);
    return buffer;
}

Vec2 read2(std::span<const double> x, std::size_t off) { return {x[off], x[off + 1]}; }

void write2(std::span<double> x, std::size_t off, const Vec2 &v) {
    x[off] = v[0];
    x[off + 1] = v[1];
}

void check_finite(std::span<const double> x, double t) {
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw DivergenceError("non-finite closed-loop value at t = " + std::to_string(t));
        }
    }
}

// Evaluates the controller on a flat state without copying the weights.
ControlOutput controller_at(const SimConfig &cfg, double t, std::span<const double> x, std::span<double> psi_hat_rate) {
    const std::size_t nodes = cfg.controller.layout.nodes;
    const JointState js{read2(x, AugmentedState::q_offset), read2(x, AugmentedState::dq_offset)};
    return evaluate_controller(cfg.controller, cfg.controller_kind, js,
                               x.subspan(AugmentedState::psi_hat_offset, nodes), x.back(),
                               read2(x, AugmentedState::e_int_offset), desired_trajectory(t), psi_hat_rate,
                               phi_scratch(nodes));
}

}  // namespace

void augmented_derivative(const SimConfig &cfg, double t, std::span<const double> state, std::span<double> rate) {
    const std::size_t nodes = cfg.controller.layout.nodes;
    if (state.size() != AugmentedState::size_for(nodes) || rate.size() != state.size()) {
        throw std::invalid_argument("augmented_derivative: state length mismatch");
    }
    const ControlOutput out = controller_at(cfg, t, state, rate.subspan(AugmentedState::psi_hat_offset, nodes));
    const JointState js{read2(state, AugmentedState::q_offset), read2(state, AugmentedState::dq_offset)};
    const Vec2 tau = cfg.robot.kappa * out.u;
    Vec2 ddq;
    try {
        ddq = forward_dynamics(cfg.robot, js, tau);
    } catch (const std::domain_error &) {
        throw DivergenceError("singular mass matrix at t = " + std::to_string(t));
    }
    write2(rate, AugmentedState::q_offset, js.dq);
    write2(rate, AugmentedState::dq_offset, ddq);
    write2(rate, AugmentedState::e_int_offset, out.error.e);
    rate.back() = out.zeta_rate;
    check_finite(rate, t);
}

std::vector<double> augmented_derivative(const SimConfig &cfg, double t, const AugmentedState &state) {
    std::vector<double> rate(state.data().size());
    augmented_derivative(cfg, t, state.data(), rate);
    return rate;
}

void Rk4::step(const VectorField &f, double t, std::span<double> x, double dt) {
    const std::size_t n = x.size();
    const double half = 0.5 * dt;
    f(t, x, k1_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + half * k1_[i];
    f(t + half, tmp_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + half * k2_[i];
    f(t + half, tmp_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + dt * k3_[i];
    f(t + dt, tmp_, k4_);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] += dt / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
}

std::vector<double> rk4_step(const VectorField &f, double t, std::span<const double> x, double dt) {
    std::vector<double> out(x.begin(), x.end());
    Rk4(out.size()).step(f, t, out, dt);
    return out;
}

AugmentedState rk4_step(const SimConfig &cfg, double t, const AugmentedState &s, double dt) {
    const VectorField f = [&cfg](double tt, std::span<const double> x, std::span<double> dx) {
        augmented_derivative(cfg, tt, x, dx);
    };
    auto next = rk4_step(f, t, s.data(), dt);
    check_finite(next, t + dt);
    return AugmentedState(std::move(next), s.nodes());
}

namespace {

double weight_norm(std::span<const double> w) {
    double acc = 0.0;
    for (double v : w) acc += v * v;
    return std::sqrt(acc);
}

SimRecord make_record(const SimConfig &cfg, double t, std::span<const double> x, const ControlOutput &out) {
    const DesiredSample d = desired_trajectory(t);
    SimRecord r;
    r.t = t;
    r.q = read2(x, AugmentedState::q_offset);
    r.dq = read2(x, AugmentedState::dq_offset);
    r.e_int = read2(x, AugmentedState::e_int_offset);
    r.qd = d.q;
    r.dqd = d.dq;
    r.e = out.error.e;
    r.de = out.error.de;
    r.psi = out.error.psi;
    r.u = out.u;
    r.tau = cfg.robot.kappa * out.u;
    r.zeta = x.back();
    r.n_zeta = out.n_zeta;
    r.kappa_delta = out.kappa_delta;
    r.psi_hat_norm = weight_norm(x.subspan(AugmentedState::psi_hat_offset, cfg.controller.layout.nodes));
    r.v_track = 0.5 * quadratic_form(r.psi, mass_matrix(cfg.robot, r.q), r.psi);
    return r;
}

bool record_finite(const SimRecord &r) {
    return is_finite(r.q) && is_finite(r.dq) && is_finite(r.e_int) && is_finite(r.u) && is_finite(r.tau) &&
           is_finite(r.psi) && std::isfinite(r.zeta) && std::isfinite(r.n_zeta) && std::isfinite(r.kappa_delta) &&
           std::isfinite(r.psi_hat_norm) && std::isfinite(r.v_track);
}

// Per-step samples kept for the tail statistics.
struct StepSample {
    Vec2 e;
    double zeta;
    double psi_norm;
    double abs_zeta;
    double psi_hat_norm;
};

RunMetrics summarize(const std::vector<StepSample> &samples) {
    RunMetrics m;
    if (samples.empty()) {
        return m;
    }
    const std::size_t n = samples.size();
    const std::size_t tail_begin = std::min(n - 1, static_cast<std::size_t>(std::ceil(0.75 * static_cast<double>(n - 1))));
    double sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const StepSample &s = samples[k];
        m.sup_psi = std::max(m.sup_psi, s.psi_norm);
        m.sup_abs_zeta = std::max(m.sup_abs_zeta, s.abs_zeta);
        m.sup_psi_hat = std::max(m.sup_psi_hat, s.psi_hat_norm);
        SupremumWindow *windows[] = {&m.psi_window, &m.zeta_window, &m.psi_hat_window};
        const double values[] = {s.psi_norm, s.abs_zeta, s.psi_hat_norm};
        for (int i = 0; i < 3; ++i) {
            double &slot = k >= tail_begin ? windows[i]->tail : windows[i]->head;
            slot = std::max(slot, values[i]);
        }
        if (k >= tail_begin) {
            sq += squared_norm(s.e);
            m.max_abs_error_tail[0] = std::max(m.max_abs_error_tail[0], std::abs(s.e[0]));
            m.max_abs_error_tail[1] = std::max(m.max_abs_error_tail[1], std::abs(s.e[1]));
        }
    }
    m.rms_error_tail = std::sqrt(sq / static_cast<double>(n - tail_begin));
    for (const SupremumWindow *w : {&m.psi_window, &m.zeta_window, &m.psi_hat_window}) {
        if (w->tail > growth_factor * w->head && w->tail > 0.0) {
            m.growth_flag = true;
        }
    }
    return m;
}

void hold_step(const SimConfig &cfg, double t, std::span<double> x, const ControlOutput &held,
               std::span<const double> psi_hat_rate, Rk4 &plant) {
    const Vec2 tau = cfg.robot.kappa * held.u;
    const VectorField f = [&cfg, &tau](double, std::span<const double> y, std::span<double> dy) {
        const JointState js{{y[0], y[1]}, {y[2], y[3]}};
        const Vec2 ddq = forward_dynamics(cfg.robot, js, tau);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = ddq[0];
        dy[3] = ddq[1];
    };
    plant.step(f, t, x.subspan(0, 4), cfg.dt);
    x[AugmentedState::e_int_offset] += cfg.dt * held.error.e[0];
    x[AugmentedState::e_int_offset + 1] += cfg.dt * held.error.e[1];
    auto w = x.subspan(AugmentedState::psi_hat_offset, psi_hat_rate.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        w[j] += cfg.dt * psi_hat_rate[j];
    }
    x.back() += cfg.dt * held.zeta_rate;
}

}  // namespace

RunResult run_scenario(const SimConfig &cfg) {
    validate(cfg);
    const std::size_t steps = step_count(cfg);
    const std::size_t nodes = cfg.controller.layout.nodes;
    AugmentedState state = AugmentedState::initial(cfg);
    std::span<double> x = state.data();

    RunResult result;
    result.records.reserve(steps / cfg.decimation + 2);
    std::vector<StepSample> samples;
    samples.reserve(steps + 1);
    std::vector<double> psi_hat_rate(nodes);

    Rk4 full(x.size());
    Rk4 plant(4);
    const VectorField field = [&cfg](double tt, std::span<const double> y, std::span<double> dy) {
        augmented_derivative(cfg, tt, y, dy);
    };

    bool diverged = false;
    double divergence_time = 0.0;
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt;
        ControlOutput out;
        SimRecord rec;
        try {
            check_finite(x, t);
            out = controller_at(cfg, t, x, psi_hat_rate);
            rec = make_record(cfg, t, x, out);
        } catch (const std::exception &) {
            diverged = true;
        }
        if (diverged || !record_finite(rec) || norm(rec.dq) > divergence_speed) {
            diverged = true;
            divergence_time = t;
            break;
        }
        samples.push_back({rec.e, rec.zeta, norm(rec.psi), std::abs(rec.zeta), rec.psi_hat_norm});
        if (k % cfg.decimation == 0) {
            result.records.push_back(rec);
        }
        if (k == steps) {
            break;
        }
        try {
            if (cfg.hold) {
                hold_step(cfg, t, x, out, psi_hat_rate, plant);
            } else {
                full.step(field, t, x, cfg.dt);
            }
        } catch (const std::exception &) {
            diverged = true;
            divergence_time = t + cfg.dt;
            break;
        }
    }

    result.metrics = summarize(samples);
    result.metrics.steps_completed = samples.empty() ? 0 : samples.size() - 1;
    result.metrics.diverged = diverged;
    result.metrics.divergence_time = divergence_time;
    result.metrics.zeta_final = samples.empty() ? cfg.controller.zeta0 : samples.back().zeta;
    return result;
}

bool lemma1_check(std::span<const SimRecord> records) {
    if (records.empty()) {
        return true;
    }
    const double t0 = records.front().t;
    const double span = records.back().t - t0;
    double head_sq = 0.0, tail_sq = 0.0;
    std::size_t head_n = 0, tail_n = 0;
    double sup_e = 0.0, sup_de = 0.0, sup_int = 0.0;
    for (const SimRecord &r : records) {
        const double rel = r.t - t0;
        if (rel <= 0.25 * span) {
            head_sq += squared_norm(r.e);
            ++head_n;
        }
        if (rel >= 0.75 * span) {
            tail_sq += squared_norm(r.e);
            ++tail_n;
            sup_e = std::max(sup_e, norm(r.e));
            sup_de = std::max(sup_de, norm(r.de));
            sup_int = std::max(sup_int, norm(r.e_int));
        }
    }
    if (!std::isfinite(sup_e) || !std::isfinite(sup_de) || !std::isfinite(sup_int)) {
        return false;
    }
    const double head_rms = std::sqrt(head_sq / static_cast<double>(head_n));
    const double tail_rms = std::sqrt(tail_sq / static_cast<double>(tail_n));
    return tail_rms <= head_rms;
}

PassivityAudit passivity_audit(const RobotParams &robot, std::span<const SimRecord> records) {
    PassivityAudit audit;
    if (records.size() < 2) {
        return audit;
    }
    const double e0 = mechanical_energy(robot, {records.front().q, records.front().dq}).total();
    const double e1 = mechanical_energy(robot, {records.back().q, records.back().dq}).total();
    audit.energy_change = e1 - e0;
    for (std::size_t k = 1; k < records.size(); ++k) {
        const double h = records[k].t - records[k - 1].t;
        const double p0 = dot(records[k - 1].dq, records[k - 1].tau);
        const double p1 = dot(records[k].dq, records[k].tau);
        audit.supplied_work += 0.5 * h * (p0 + p1);
        audit.absolute_work += 0.5 * h * (std::abs(p0) + std::abs(p1));
    }
    audit.relative_residual =
        std::abs(audit.energy_change - audit.supplied_work) / (std::abs(e0) + audit.absolute_work);
    return audit;
}

double unforced_energy_drift(const RobotParams &robot, const JointState &start, double dt, double duration) {
    const VectorField f = [&robot](double, std::span<const double> y, std::span<double> dy) {
        const Vec2 ddq = forward_dynamics(robot, {{y[0], y[1]}, {y[2], y[3]}}, Vec2{});
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = ddq[0];
        dy[3] = ddq[1];
    };
    std::vector<double> x{start.q[0], start.q[1], start.dq[0], start.dq[1]};
    const double e0 = mechanical_energy(robot, start).total();
    const double scale = std::abs(e0) > 0.0 ? std::abs(e0) : 1.0;
    const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
    Rk4 rk(4);
    double worst = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        rk.step(f, static_cast<double>(k) * dt, x, dt);
        const double e = mechanical_energy(robot, {{x[0], x[1]}, {x[2], x[3]}}).total();
        worst = std::max(worst, std::abs(e - e0) / scale);
    }
    return worst;
}

}  // namespace nussbaum_pid
