#pragma once

#include "nussbaum_pid/linalg.hpp"

#include <string>

namespace nussbaum_pid {

/// Physical parameters of the two-link planar arm moving in a vertical plane.
///
/// Inertias are taken about each link's own joint axis (not about the center
/// of mass), so a uniform slender rod has I = m l^2 / 3 and lc = l / 2.
/// `kappa` maps the commanded input to the applied joint torque and is unknown
/// to the controller.
struct RobotParams {
    double m1 = 5.0;
    double m2 = 2.0;
    double l1 = 1.0;
    double l2 = 0.75;
    double lc1 = 0.5;
    double lc2 = 0.375;
    double I1 = 1.66;
    double I2 = 0.37;
    double gravity = 9.81;
    Mat2 kappa = Mat2::identity();
};

/// Throws std::invalid_argument naming the first violated invariant.
void validate(const RobotParams &p);

/// Relative deviation of link `link` (1 or 2) inertia from the slender-rod value m l^2 / 3.
double slender_rod_deviation(const RobotParams &p, int link);

struct JointState {
    Vec2 q;
    Vec2 dq;
};

struct MechanicalEnergy {
    double kinetic = 0.0;
    double potential = 0.0;

    double total() const { return kinetic + potential; }
};

Mat2 mass_matrix(const RobotParams &p, const Vec2 &q);

/// Christoffel-consistent Coriolis/centrifugal matrix, so that Mdot - 2C is skew-symmetric.
Mat2 coriolis_matrix(const RobotParams &p, const Vec2 &q, const Vec2 &dq);

Vec2 gravity_vector(const RobotParams &p, const Vec2 &q);

/// Analytic time derivative of the mass matrix along (q, dq).
Mat2 mass_matrix_rate(const RobotParams &p, const Vec2 &q, const Vec2 &dq);

/// Joint accelerations M^{-1} (tau - C dq - G). Throws std::domain_error if M is singular.
Vec2 forward_dynamics(const RobotParams &p, const JointState &s, const Vec2 &tau);

/// Potential energy is measured from the horizontal configuration q = 0.
MechanicalEnergy mechanical_energy(const RobotParams &p, const JointState &s);

/// (m1 lc1 + m2 l1 + m2 lc2) g: bounds every component of G(q), i.e. the max-norm.
double gravity_bound(const RobotParams &p);

/// Euclidean-norm bound sqrt((m1 lc1 + m2 l1 + m2 lc2)^2 + (m2 lc2)^2) g.
double gravity_bound_euclidean(const RobotParams &p);

}  // namespace nussbaum_pid
