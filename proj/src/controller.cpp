#include "nussbaum_pid/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace nussbaum_pid {

std::string_view to_string(ControllerKind kind) {
    return kind == ControllerKind::nussbaum_pid ? "nussbaum-pid" : "fixed-pid";
}

ControllerKind parse_controller_kind(std::string_view name) {
    if (name == "nussbaum-pid") {
        return ControllerKind::nussbaum_pid;
    }
    if (name == "fixed-pid") {
        return ControllerKind::fixed_pid;
    }
    throw std::invalid_argument("unknown controller kind '" + std::string(name) + "'");
}

namespace {

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw std::invalid_argument("controller: " + what);
    }
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

// Symmetric positive definiteness via an in-place Cholesky attempt.
bool symmetric_positive_definite(std::vector<double> a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(a[i * n + j] - a[j * n + i]) > 1e-12 * (1.0 + std::abs(a[i * n + j]))) {
                return false;
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) {
            d -= a[j * n + k] * a[j * n + k];
        }
        if (!(d > 0.0)) {
            return false;
        }
        const double root = std::sqrt(d);
        a[j * n + j] = root;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / root;
        }
    }
    return true;
}

}  // namespace

void validate(const ControllerParams &params) {
    require(positive(params.gamma), "gamma must be positive");
    require(positive(params.k_delta), "k_delta must be positive");
    require(positive(params.alpha), "alpha must be positive");
    require(positive(params.sigma), "sigma must be positive");
    require(positive(params.adapt_gain), "adapt_gain must be positive");
    require(std::isfinite(params.zeta0), "zeta0 must be finite");
    validate(params.layout);
    require(params.layout.input_dim == network_input_dim, "network input_dim must be 8");
    if (!params.adapt_matrix.empty()) {
        const std::size_t n = params.layout.nodes;
        require(params.adapt_matrix.size() == n * n, "adapt_matrix must be nodes x nodes");
        require(symmetric_positive_definite(params.adapt_matrix, n),
                "adapt_matrix must be symmetric positive definite");
    }
}

ControllerState initial_controller_state(const ControllerParams &params) {
    ControllerState s;
    s.psi_hat.assign(params.layout.nodes, 0.0);
    s.zeta = params.zeta0;
    return s;
}

Vec2 generalized_error(const ControllerParams &params, const Vec2 &e, const Vec2 &e_int, const Vec2 &de) {
    const double g = params.gamma;
    return 2.0 * g * e + (g * g) * e_int + de;
}

TrackingError tracking_error(const ControllerParams &params, const JointState &s, const Vec2 &e_int,
                             const DesiredSample &desired) {
    TrackingError err;
    err.e = desired.q - s.q;
    err.de = desired.dq - s.dq;
    err.psi = generalized_error(params, err.e, e_int, err.de);
    return err;
}

double nussbaum(double zeta) { return zeta * zeta * std::cos(zeta); }

double nussbaum_antiderivative(double v) {
    return v * v * std::sin(v) + 2.0 * v * std::cos(v) - 2.0 * std::sin(v);
}

double nussbaum_mean(double v) {
    if (!(v > 0.0)) {
        throw std::invalid_argument("nussbaum_mean: v must be positive");
    }
    return nussbaum_antiderivative(v) / v;
}

double kappa_delta(const ControllerParams &params, std::span<const double> psi_hat, std::span<const double> phi) {
    return -params.alpha * network_output(psi_hat, phi);
}

LinkedGains constant_gains(const ControllerParams &params) {
    return {2.0 * params.gamma * params.k_delta, params.gamma * params.gamma * params.k_delta, params.k_delta};
}

LinkedGains adaptive_gains(const ControllerParams &params, double kappa_delta) {
    return {2.0 * params.gamma * kappa_delta, params.gamma * params.gamma * kappa_delta, kappa_delta};
}

double nussbaum_gain(double zeta) { return -nussbaum(zeta); }

Vec2 control_input(const ControllerParams &params, const Vec2 &psi, double kappa_delta, double zeta) {
    return (-(params.k_delta + kappa_delta) * nussbaum(zeta)) * psi;
}

Vec2 control_input_pid_form(const ControllerParams &params, const Vec2 &e, const Vec2 &e_int, const Vec2 &de,
                            double kappa_delta, double zeta) {
    const LinkedGains k = constant_gains(params);
    const LinkedGains kv = adaptive_gains(params, kappa_delta);
    const double kn = nussbaum_gain(zeta);
    return ((k.proportional + kv.proportional) * kn) * e + ((k.integral + kv.integral) * kn) * e_int +
           ((k.derivative + kv.derivative) * kn) * de;
}

void weight_derivative(const ControllerParams &params, const Vec2 &psi, std::span<const double> phi,
                       std::span<const double> psi_hat, std::span<double> out) {
    const std::size_t n = phi.size();
    if (psi_hat.size() != n || out.size() != n) {
        throw std::invalid_argument("weight_derivative: length mismatch");
    }
    const double drive = params.alpha * squared_norm(psi);
    if (params.adapt_matrix.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            out[j] = -params.adapt_gain * (drive * phi[j] + params.sigma * psi_hat[j]);
        }
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += params.adapt_matrix[i * n + j] * (drive * phi[j] + params.sigma * psi_hat[j]);
        }
        out[i] = -acc;
    }
}

std::vector<double> weight_derivative(const ControllerParams &params, const Vec2 &psi, std::span<const double> phi,
                                      std::span<const double> psi_hat) {
    std::vector<double> out(phi.size());
    weight_derivative(params, psi, phi, psi_hat, out);
    return out;
}

double zeta_derivative(const ControllerParams &params, const Vec2 &psi, double kappa_delta) {
    return (params.k_delta + kappa_delta) * squared_norm(psi);
}

Vec2 fixed_pid_input(const ControllerParams &params, const Vec2 &e, const Vec2 &e_int, const Vec2 &de) {
    return params.k_delta * generalized_error(params, e, e_int, de);
}

std::array<double, network_input_dim> network_input(const TrackingError &err, const Vec2 &q) {
    return {err.e[0], err.e[1], err.de[0], err.de[1], q[0], q[1], err.psi[0], err.psi[1]};
}

ControlOutput evaluate_controller(const ControllerParams &params, ControllerKind kind, const JointState &s,
                                  std::span<const double> psi_hat, double zeta, const Vec2 &e_int,
                                  const DesiredSample &desired, std::span<double> psi_hat_rate,
                                  std::span<double> phi_scratch) {
    ControlOutput out;
    out.error = tracking_error(params, s, e_int, desired);
    if (kind == ControllerKind::fixed_pid) {
        out.u = fixed_pid_input(params, out.error.e, e_int, out.error.de);
        out.n_zeta = -1.0;
        for (double &r : psi_hat_rate) {
            r = 0.0;
        }
        return out;
    }
    const auto x = network_input(out.error, s.q);
    basis_vector(params.layout, x, phi_scratch);
    out.kappa_delta = kappa_delta(params, psi_hat, phi_scratch);
    out.n_zeta = nussbaum(zeta);
    out.u = control_input(params, out.error.psi, out.kappa_delta, zeta);
    weight_derivative(params, out.error.psi, phi_scratch, psi_hat, psi_hat_rate);
    out.zeta_rate = zeta_derivative(params, out.error.psi, out.kappa_delta);
    return out;
}

}  // namespace nussbaum_pid
