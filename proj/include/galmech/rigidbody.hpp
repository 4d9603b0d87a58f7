#pragma once

#include <span>
#include <vector>

#include "galmech/dynamics.hpp"
#include "galmech/galilei.hpp"
#include "galmech/linalg.hpp"

namespace galmech {

struct PointMass {
    double mass = 0.0;
    Vec3 position = Vec3::Zero(); ///< material position s'
};

struct MassDistribution {
    std::vector<PointMass> points;

    double total_mass() const;
    /// First moment divided by the total mass. Throws InvalidInput when the total is not positive.
    Vec3 center_of_mass() const;
};

struct InertiaMatrix {
    Mat3 matrix = Mat3::Zero();
    /// False for collinear or degenerate distributions.
    bool positive_definite = false;
};

/// J0 = sum m_i (|s_i|^2 I - s_i s_i^T). Throws InvalidInput on an empty
/// distribution or a non-positive point mass.
InertiaMatrix inertia_from_points(const MassDistribution& dist);

/// Shifts every point so that the first moment vanishes.
MassDistribution recenter(const MassDistribution& dist);

/// Orientation R (as a unit quaternion) and material angular velocity Omega'.
struct RigidBodyState {
    double t = 0.0;
    Eigen::Quaterniond orientation = Eigen::Quaterniond::Identity();
    Vec3 omega_body = Vec3::Zero();

    Mat3 rotation() const { return orientation.toRotationMatrix(); }
    /// Spatial angular velocity w = R Omega'.
    Vec3 poisson() const { return orientation * omega_body; }
};

/// l0 = R J0 R^T w with w = R Omega'.
Vec3 spin_spatial(const RigidBodyState& state, const Mat3& j0);

/// RK4 step of J0 dOmega'/dt + Omega' x (J0 Omega') = 0 together with
/// dq/dt = q (0, Omega') / 2 (i.e. dR/dt = hat(w) R). The quaternion is
/// renormalized after the step. Throws SingularInertia unless J0 is
/// positive definite.
RigidBodyState euler_step(const RigidBodyState& state, const Mat3& j0, double dt);

struct PoinsotReport {
    long steps = 0;
    Vec3 spin_initial = Vec3::Zero();
    /// max_i |l0_i(t) - l0_i(0)|.
    double spin_component_drift = 0.0;
    Drift kinetic;        ///< Omega'^T J0 Omega'
    Drift momentum_norm;  ///< |J0 Omega'|
    double max_quaternion_defect = 0.0;
    double max_rotation_defect = 0.0;
};

struct RigidBodyRun {
    std::vector<RigidBodyState> samples;
    PoinsotReport report;
};

/// Free rigid motion. Throws SingularInertia for a non positive definite J0.
RigidBodyRun simulate_free(const RigidBodyState& initial, const Mat3& j0,
                           const IntegratorConfig& config);

struct MaterialConsistency {
    /// |Omega' from pullback - R^T w|
    double coriolis_vs_poisson = 0.0;
    /// |R^T l0 - J0 Omega'|
    double material_spin = 0.0;
    /// |l0(t) - l0(t_first)| across samples (zero for a free motion).
    double spatial_spin_drift = 0.0;
    /// Against the supplied samples: |R_frame - R_sample| and |Omega'_frame - Omega'_sample|.
    double rotation_mismatch = 0.0;
    double omega_mismatch = 0.0;
    long samples = 0;

    double max_discrepancy() const;
};

/// Checks, at the times of the given samples, that the Coriolis field of the
/// zero connection pulled back by the body frame equals R^T w and that the
/// material spin R^T l0 equals J0 Omega'. The samples' own orientation and
/// angular velocity are compared with the frame as well.
MaterialConsistency material_from_spatial(const RigidFrameMotion& frame, const Mat3& j0,
                                          std::span<const RigidBodyState> samples);

/// Closed-form torque-free motion of an axisymmetric body J0 = diag(a, a, c):
/// R(t) = rot(l0, |l0| t / a) R0 rot(e3, -lambda t), lambda = (c - a) Omega'_3 / a.
RigidFrameMotion symmetric_top_motion(double a, double c, const Vec3& omega_body0,
                                      const Mat3& r0 = Mat3::Identity());

} // namespace galmech
