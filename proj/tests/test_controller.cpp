#include "nussbaum_pid/controller.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

using namespace nussbaum_pid;
using std::numbers::pi;

TEST_CASE("controller parameter validation") {
    ControllerParams p;
    CHECK_NOTHROW(validate(p));
    for (double ControllerParams::*field :
         {&ControllerParams::gamma, &ControllerParams::k_delta, &ControllerParams::alpha, &ControllerParams::sigma,
          &ControllerParams::adapt_gain}) {
        ControllerParams bad;
        bad.*field = 0.0;
        CHECK_THROWS_AS(validate(bad), std::invalid_argument);
    }
    p.adapt_matrix.assign(20 * 20, 0.0);
    for (std::size_t i = 0; i < 20; ++i) p.adapt_matrix[i * 20 + i] = 50.0;
    CHECK_NOTHROW(validate(p));
    p.adapt_matrix[1] = 1.0;  // asymmetric
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p.adapt_matrix[1] = 0.0;
    p.adapt_matrix[0] = -1.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("generalized error") {
    ControllerParams p;
    p.gamma = 0.5;
    CHECK(generalized_error(p, {}, {}, {}) == Vec2{});
    CHECK(generalized_error(p, {0.1, 0.0}, {}, {}) == Vec2{0.1, 0.0});
    CHECK(generalized_error(p, {}, {4.0, 0.0}, {}) == Vec2{1.0, 0.0});
    CHECK(generalized_error(p, {}, {}, {0.0, -2.0}) == Vec2{0.0, -2.0});
}

TEST_CASE("Nussbaum function") {
    CHECK(nussbaum(0.0) == 0.0);
    CHECK(nussbaum(pi) == doctest::Approx(-pi * pi));
    CHECK(nussbaum(pi) == doctest::Approx(-9.8696).epsilon(1e-5));
    CHECK(std::abs(nussbaum(pi / 2)) < 1e-15);
    CHECK(nussbaum_gain(pi) == doctest::Approx(pi * pi));
}

TEST_CASE("Nussbaum mean") {
    CHECK(nussbaum_mean(pi) == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(nussbaum_antiderivative(pi) == doctest::Approx(-2.0 * pi).epsilon(1e-13));
    CHECK(nussbaum_mean(2 * pi) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK_THROWS_AS(nussbaum_mean(0.0), std::invalid_argument);

    SUBCASE("closed form against Simpson quadrature") {
        auto n = [](double z) { return z * z * std::cos(z); };
        for (double v : {0.5, 1.0, 3.0, pi, 7.7, 25.0, 60.0, 123.4, 200.0}) {
            const int panels = 2 * static_cast<int>(std::ceil(v * 400));
            const double ref = oracle::simpson(n, 0.0, v, panels) / v;
            CHECK(std::abs(nussbaum_mean(v) - ref) <= 1e-8);
        }
    }
    SUBCASE("oscillation grows without bound in both directions") {
        for (int k : {5, 20, 80}) {
            const double up = 2 * k * pi + pi / 2;
            const double down = 2 * k * pi - pi / 2;
            CHECK(nussbaum_mean(up) == doctest::Approx(up).epsilon(2.0 / up));
            CHECK(nussbaum_mean(down) == doctest::Approx(-down).epsilon(2.0 / down));
        }
    }
}

TEST_CASE("adaptive gain") {
    ControllerParams p;
    const std::vector<double> phi{0.5, 0.25};
    CHECK(kappa_delta(p, std::vector<double>{0.0, 0.0}, phi) == 0.0);
    // psi_hat^T phi = 0.01 and -0.002
    CHECK(kappa_delta(p, std::vector<double>{0.02, 0.0}, phi) == doctest::Approx(-1.0));
    CHECK(kappa_delta(p, std::vector<double>{0.0, -0.008}, phi) == doctest::Approx(0.2));
}

TEST_CASE("control input") {
    ControllerParams p;
    p.k_delta = 0.1;
    CHECK(control_input(p, {3.0, -1.0}, 0.7, 0.0) == Vec2{});
    const Vec2 u = control_input(p, {1.0, 0.0}, 0.4, pi);
    CHECK(u[0] == doctest::Approx(pi * pi / 2));
    CHECK(u[0] == doctest::Approx(4.9348).epsilon(1e-5));
    CHECK(u[1] == 0.0);
    CHECK(control_input(p, {}, 0.4, 2.0) == Vec2{});
}

TEST_CASE("linked gains keep s^2 + 2 gamma s + gamma^2 Hurwitz") {
    ControllerParams p;
    p.gamma = 0.5;
    p.k_delta = 0.1;
    const LinkedGains k = constant_gains(p);
    CHECK(k.proportional == doctest::Approx(2 * 0.5 * 0.1));
    CHECK(k.integral == doctest::Approx(0.25 * 0.1));
    // Characteristic polynomial derivative*s^2 + proportional*s + integral has a double root at -gamma.
    const double disc = k.proportional * k.proportional - 4 * k.derivative * k.integral;
    CHECK(std::abs(disc) < 1e-15);
    CHECK(-k.proportional / (2 * k.derivative) == doctest::Approx(-p.gamma));
}

TEST_CASE("three-term PID form equals the collapsed law") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.01, 2.0);
    for (int trial = 0; trial < 1000; ++trial) {
        ControllerParams p;
        p.gamma = pos(rng);
        p.k_delta = pos(rng);
        const Vec2 e{u(rng), u(rng)}, ei{u(rng), u(rng)}, de{u(rng), u(rng)};
        const double kd = 5 * u(rng), z = 10 * u(rng);
        const Vec2 a = control_input(p, generalized_error(p, e, ei, de), kd, z);
        const Vec2 b = control_input_pid_form(p, e, ei, de, kd, z);
        CHECK(norm(a - b) <= 1e-12 * std::max(1.0, norm(a)));
    }
}

TEST_CASE("control input is positively homogeneous in Psi") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    ControllerParams p;
    for (int trial = 0; trial < 200; ++trial) {
        const Vec2 psi{u(rng), u(rng)};
        const double s = std::abs(u(rng)) + 0.1;
        const double kd = u(rng), z = 3 * u(rng);
        const Vec2 lhs = control_input(p, s * psi, kd, z);
        const Vec2 rhs = s * control_input(p, psi, kd, z);
        CHECK(norm(lhs - rhs) <= 1e-12 * std::max(1.0, norm(rhs)));
    }
}

TEST_CASE("weight derivative") {
    ControllerParams p;
    p.adapt_gain = 100.0;
    p.alpha = 100.0;
    p.sigma = 0.1;
    const std::vector<double> zero(3, 0.0);
    for (double r : weight_derivative(p, {}, std::vector<double>{0.3, 0.2, 0.1}, zero)) CHECK(r == 0.0);

    // |Psi|^2 = 0.01, phi_j = 0.5
    const auto r = weight_derivative(p, {0.1, 0.0}, std::vector<double>{0.5, 0.0, 0.0}, zero);
    CHECK(r[0] == doctest::Approx(-50.0));

    const std::vector<double> w{1.0, -2.0, 0.5};
    const auto leak = weight_derivative(p, {}, std::vector<double>{0.9, 0.9, 0.9}, w);
    for (std::size_t j = 0; j < 3; ++j) CHECK(leak[j] == doctest::Approx(-p.adapt_gain * p.sigma * w[j]));

    SUBCASE("full matrix gain equal to scalar * identity gives the same rate") {
        ControllerParams m = p;
        m.layout.nodes = 3;
        m.adapt_matrix = {100, 0, 0, 0, 100, 0, 0, 0, 100};
        const std::vector<double> phi{0.4, 0.1, 0.7};
        const auto a = weight_derivative(p, {0.3, -0.2}, phi, w);
        const auto b = weight_derivative(m, {0.3, -0.2}, phi, w);
        for (std::size_t j = 0; j < 3; ++j) CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-14));
    }
}

TEST_CASE("zeta derivative") {
    ControllerParams p;
    p.k_delta = 0.1;
    CHECK(zeta_derivative(p, {}, 0.4) == 0.0);
    CHECK(zeta_derivative(p, {1.0, 0.0}, 0.4) == doctest::Approx(0.5));
    CHECK(zeta_derivative(p, {1.0, 1.0}, -0.3) == doctest::Approx(-0.4));

    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const Vec2 psi{u(rng), u(rng)};
        const double kd = u(rng);
        const double rate = zeta_derivative(p, psi, kd);
        const double gain = p.k_delta + kd;
        CHECK((rate > 0) == (gain > 0));
        CHECK((rate < 0) == (gain < 0));
    }
    CHECK(zeta_derivative(p, {1.0, 2.0}, -0.1) == 0.0);
}

TEST_CASE("fixed-gain baseline") {
    ControllerParams p;
    p.k_delta = 0.1;
    p.gamma = 0.5;
    CHECK(fixed_pid_input(p, {}, {}, {}) == Vec2{});
    const Vec2 u = fixed_pid_input(p, {1.0, 0.0}, {}, {});
    CHECK(u[0] == doctest::Approx(0.1));
    CHECK(u[1] == 0.0);

    // With N(zeta*) = -1 the adaptive law collapses to the fixed-gain baseline. Root on (pi/2, pi).
    double lo = pi / 2, hi = pi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (nussbaum(mid) > -1.0 ? lo : hi) = mid;
    }
    const double zstar = 0.5 * (lo + hi);
    const Vec2 e{0.3, -0.7}, ei{1.1, 0.2}, de{-0.4, 0.9};
    const Vec2 a = fixed_pid_input(p, e, ei, de);
    const Vec2 b = control_input(p, generalized_error(p, e, ei, de), 0.0, zstar);
    CHECK(norm(a - b) < 1e-12);
}

TEST_CASE("network input ordering") {
    TrackingError err{{1, 2}, {3, 4}, {7, 8}};
    const auto x = network_input(err, {5, 6});
    for (std::size_t i = 0; i < 8; ++i) CHECK(x[i] == static_cast<double>(i + 1));
}

TEST_CASE("controller kind names") {
    CHECK(parse_controller_kind("nussbaum-pid") == ControllerKind::nussbaum_pid);
    CHECK(parse_controller_kind("fixed-pid") == ControllerKind::fixed_pid);
    CHECK(to_string(ControllerKind::fixed_pid) == "fixed-pid");
    CHECK_THROWS_AS(parse_controller_kind("pid"), std::invalid_argument);
}
