#include "nussbaum_pid/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace nussbaum_pid {

namespace {

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw std::invalid_argument("robot: " + what);
    }
}

// Coefficient of the q2-dependent coupling terms.
double coupling(const RobotParams &p) { return p.m2 * p.l1 * p.lc2; }

}  // namespace

void validate(const RobotParams &p) {
    require(p.m1 > 0.0 && p.m2 > 0.0, "masses must be positive");
    require(p.l1 > 0.0 && p.l2 > 0.0, "lengths must be positive");
    require(p.lc1 > 0.0 && p.lc2 > 0.0, "center-of-mass offsets must be positive");
    require(p.lc1 <= p.l1 && p.lc2 <= p.l2, "center-of-mass offset exceeds link length");
    require(p.I1 > 0.0 && p.I2 > 0.0, "inertias must be positive");
    require(std::isfinite(p.gravity) && p.gravity >= 0.0, "gravity must be finite and non-negative");
    for (double k : p.kappa.a) {
        require(std::isfinite(k), "kappa entries must be finite");
    }
    require(std::abs(p.kappa.determinant()) > 1e-12, "kappa must be invertible");
    // M(q) stays positive definite for every q2 only if I1 + m2 l1^2 exceeds the coupling swing.
    require(p.I2 * (p.I1 + p.m2 * p.l1 * p.l1) > coupling(p) * coupling(p),
            "inertia parameters do not give a positive definite mass matrix");
}

double slender_rod_deviation(const RobotParams &p, int link) {
    const double m = link == 1 ? p.m1 : p.m2;
    const double l = link == 1 ? p.l1 : p.l2;
    const double inertia = link == 1 ? p.I1 : p.I2;
    const double rod = m * l * l / 3.0;
    return std::abs(inertia - rod) / rod;
}

Mat2 mass_matrix(const RobotParams &p, const Vec2 &q) {
    const double c2 = std::cos(q[1]);
    const double h = coupling(p);
    const double m11 = p.I1 + p.I2 + p.m2 * p.l1 * p.l1 + 2.0 * h * c2;
    const double m12 = p.I2 + h * c2;
    return {m11, m12, m12, p.I2};
}

Mat2 coriolis_matrix(const RobotParams &p, const Vec2 &q, const Vec2 &dq) {
    const double h = coupling(p) * std::sin(q[1]);
    return {-h * dq[1], -h * (dq[0] + dq[1]), h * dq[0], 0.0};
}

Vec2 gravity_vector(const RobotParams &p, const Vec2 &q) {
    const double outer = p.m2 * p.lc2 * p.gravity * std::cos(q[0] + q[1]);
    return {(p.m1 * p.lc1 + p.m2 * p.l1) * p.gravity * std::cos(q[0]) + outer, outer};
}

Mat2 mass_matrix_rate(const RobotParams &p, const Vec2 &q, const Vec2 &dq) {
    const double d = -coupling(p) * std::sin(q[1]) * dq[1];
    return {2.0 * d, d, d, 0.0};
}

Vec2 forward_dynamics(const RobotParams &p, const JointState &s, const Vec2 &tau) {
    const Vec2 rhs = tau - coriolis_matrix(p, s.q, s.dq) * s.dq - gravity_vector(p, s.q);
    return solve(mass_matrix(p, s.q), rhs);
}

MechanicalEnergy mechanical_energy(const RobotParams &p, const JointState &s) {
    MechanicalEnergy e;
    e.kinetic = 0.5 * quadratic_form(s.dq, mass_matrix(p, s.q), s.dq);
    e.potential = (p.m1 * p.lc1 + p.m2 * p.l1) * p.gravity * std::sin(s.q[0]) +
                  p.m2 * p.lc2 * p.gravity * std::sin(s.q[0] + s.q[1]);
    return e;
}

double gravity_bound(const RobotParams &p) { return (p.m1 * p.lc1 + p.m2 * p.l1 + p.m2 * p.lc2) * p.gravity; }

double gravity_bound_euclidean(const RobotParams &p) {
    const double outer = p.m2 * p.lc2;
    return std::hypot(p.m1 * p.lc1 + p.m2 * p.l1 + outer, outer) * p.gravity;
}

}  // namespace nussbaum_pid
