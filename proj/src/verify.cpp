#include "nussbaum_pid/verify.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace nussbaum_pid {

namespace {

std::string format(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::vector<double> closed_loop_endpoint(const SimConfig &cfg, double horizon, double dt) {
    const VectorField f = [&cfg](double t, std::span<const double> x, std::span<double> dx) {
        augmented_derivative(cfg, t, x, dx);
    };
    AugmentedState s = AugmentedState::initial(cfg);
    std::vector<double> x(s.data().begin(), s.data().end());
    Rk4 rk(x.size());
    const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
    for (std::size_t k = 0; k < steps; ++k) {
        rk.step(f, static_cast<double>(k) * dt, x, dt);
    }
    return x;
}

double max_abs_difference(const std::vector<double> &a, const std::vector<double> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace

double nussbaum_mean_quadrature(double v) {
    auto integrand = [](double z) { return z * z * std::cos(z); };
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, v, 20, 1e-15);
    return integral / v;
}

double nussbaum_mean_max_error(AntiderivativeFn antiderivative, double horizon, double spacing) {
    auto integrand = [](double z) { return z * z * std::cos(z); };
    double worst = 0.0;
    double integral = 0.0;
    const auto n = static_cast<std::size_t>(std::llround(horizon / spacing));
    // Panel-wise accumulation: each panel is short enough for one Gauss-Kronrod rule to be exact to rounding.
    for (std::size_t k = 1; k <= n; ++k) {
        const double a = static_cast<double>(k - 1) * spacing;
        const double v = static_cast<double>(k) * spacing;
        integral += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, v, 5, 1e-15);
        worst = std::max(worst, std::abs(antiderivative(v) / v - integral / v));
    }
    return worst;
}

NussbaumWitnesses find_nussbaum_witnesses(AntiderivativeFn antiderivative, double limit, double level) {
    NussbaumWitnesses w;
    constexpr double spacing = 0.01;
    const auto n = static_cast<std::size_t>(std::llround(limit / spacing));
    for (std::size_t k = 1; k <= n && !(w.above && w.below); ++k) {
        const double v = static_cast<double>(k) * spacing;
        const double mean = antiderivative(v) / v;
        if (!w.above && mean > level) w.above = v;
        if (!w.below && mean < -level) w.below = v;
    }
    return w;
}

double rk4_order_ratio(const SimConfig &cfg, double horizon, double dt) {
    const auto coarse = closed_loop_endpoint(cfg, horizon, dt);
    const auto mid = closed_loop_endpoint(cfg, horizon, dt / 2.0);
    const auto fine = closed_loop_endpoint(cfg, horizon, dt / 4.0);
    return max_abs_difference(coarse, mid) / max_abs_difference(mid, fine);
}

double gain_linking_max_error(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> positive(0.01, 2.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        ControllerParams params;
        params.gamma = positive(rng);
        params.k_delta = positive(rng);
        const Vec2 e{unit(rng), unit(rng)};
        const Vec2 e_int{unit(rng), unit(rng)};
        const Vec2 de{unit(rng), unit(rng)};
        const double kd = 5.0 * unit(rng);
        const double zeta = 10.0 * unit(rng);
        const Vec2 collapsed = control_input(params, generalized_error(params, e, e_int, de), kd, zeta);
        const Vec2 expanded = control_input_pid_form(params, e, e_int, de, kd, zeta);
        const double scale = std::max(1.0, norm(collapsed));
        worst = std::max(worst, norm(collapsed - expanded) / scale);
    }
    return worst;
}

PropertyCheck check_mass_matrix(const ModelPropertyStats &stats) {
    const bool ok = stats.max_asymmetry <= tolerance::symmetry && stats.min_eigenvalue > 0.0;
    return {"mass matrix symmetric positive definite", ok,
            "asymmetry " + format(stats.max_asymmetry) + ", eigenvalues in [" + format(stats.min_eigenvalue) + ", " +
                format(stats.max_eigenvalue) + "]"};
}

PropertyCheck check_skew_symmetry(const ModelPropertyStats &stats) {
    return {"Mdot - 2C skew-symmetric", stats.max_skew_residual <= tolerance::skew,
            "max |x^T (Mdot - 2C) x| = " + format(stats.max_skew_residual)};
}

PropertyCheck check_gravity(const RobotParams &p, const ModelPropertyStats &stats) {
    const double bound = gravity_bound(p);
    const double bound2 = gravity_bound_euclidean(p);
    const bool ok = stats.max_gravity_gradient_error <= tolerance::gravity_gradient &&
                    stats.max_gravity_component <= bound * (1.0 + 1e-12) &&
                    stats.max_gravity_norm <= bound2 * (1.0 + 1e-12);
    return {"gravity = grad(potential), bounded", ok,
            "gradient error " + format(stats.max_gravity_gradient_error) + ", max |G|_inf " +
                format(stats.max_gravity_component) + " <= " + format(bound) + ", max |G|_2 " +
                format(stats.max_gravity_norm) + " <= " + format(bound2)};
}

PropertyCheck check_passivity(const RobotParams &p) {
    const JointState start{{std::numbers::pi / 2.0, -std::numbers::pi / 2.0}, {}};
    const double drift = unforced_energy_drift(p, start, 1e-4, 5.0);
    return {"passivity: unforced energy conserved", drift < tolerance::energy_drift,
            "relative drift " + format(drift)};
}

PropertyCheck check_rk4_order() {
    const double ratio = rk4_order_ratio(make_preset(Preset::paper), 1.0, 1e-3);
    return {"RK4 fourth-order convergence",
            ratio >= tolerance::rk4_ratio_low && ratio <= tolerance::rk4_ratio_high,
            "error ratio " + format(ratio)};
}

PropertyCheck check_nussbaum_mean(const VerifyHooks &hooks) {
    const double err = nussbaum_mean_max_error(hooks.antiderivative, tolerance::nussbaum_horizon, 0.1);
    return {"Nussbaum mean analytic = quadrature", err <= tolerance::nussbaum_quadrature,
            "max error " + format(err) + " on (0, 200]"};
}

PropertyCheck check_nussbaum_witnesses(const VerifyHooks &hooks) {
    const auto w = find_nussbaum_witnesses(hooks.antiderivative, tolerance::witness_limit, tolerance::witness_level);
    const bool ok = w.above.has_value() && w.below.has_value();
    return {"Nussbaum mean unbounded both ways", ok,
            "mean > +10 at v = " + (w.above ? format(*w.above) : std::string("none")) + ", mean < -10 at v = " +
                (w.below ? format(*w.below) : std::string("none"))};
}

PropertyCheck check_gain_linking() {
    const double err = gain_linking_max_error(tolerance::model_samples, 8);
    return {"linked three-gain PID = collapsed law", err <= tolerance::gain_linking, "max error " + format(err)};
}

std::vector<PropertyCheck> run_property_suite(const VerifyHooks &hooks) {
    const RobotParams p;
    const auto samples = draw_model_samples(tolerance::model_samples, 2024);
    const ModelPropertyStats stats = evaluate_model_properties(p, samples, hooks.coriolis);
    return {check_mass_matrix(stats),   check_skew_symmetry(stats),     check_gravity(p, stats),
            check_passivity(p),            check_rk4_order(),              check_nussbaum_mean(hooks),
            check_nussbaum_witnesses(hooks), check_gain_linking()};
}

}  // namespace nussbaum_pid
