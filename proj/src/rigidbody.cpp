#include "galmech/rigidbody.hpp"

#include <algorithm>
#include <cmath>

#include "galmech/connection.hpp"
#include "galmech/errors.hpp"

namespace galmech {

double MassDistribution::total_mass() const {
    double m = 0.0;
    for (const auto& pt : points) m += pt.mass;
    return m;
}

Vec3 MassDistribution::center_of_mass() const {
    const double m = total_mass();
    if (!(m > 0.0)) throw InvalidInput("mass distribution: total mass must be positive");
    Vec3 moment = Vec3::Zero();
    for (const auto& pt : points) moment += pt.mass * pt.position;
    return moment / m;
}

InertiaMatrix inertia_from_points(const MassDistribution& dist) {
    if (dist.points.empty()) throw InvalidInput("mass distribution is empty");
    InertiaMatrix out;
    for (const auto& pt : dist.points) {
        if (!(pt.mass > 0.0)) throw InvalidInput("point masses must be positive");
        const Vec3& s = pt.position;
        out.matrix += pt.mass * (s.squaredNorm() * Mat3::Identity() - s * s.transpose());
    }
    const Eigen::SelfAdjointEigenSolver<Mat3> eig(out.matrix, Eigen::EigenvaluesOnly);
    const double largest = eig.eigenvalues().maxCoeff();
    out.positive_definite = largest > 0.0 && eig.eigenvalues().minCoeff() > 1e-12 * largest;
    return out;
}

MassDistribution recenter(const MassDistribution& dist) {
    const Vec3 c = dist.center_of_mass();
    MassDistribution out = dist;
    for (auto& pt : out.points) pt.position -= c;
    return out;
}

Vec3 spin_spatial(const RigidBodyState& state, const Mat3& j0) {
    const Mat3 r = state.rotation();
    return r * j0 * r.transpose() * state.poisson();
}

namespace {

struct BodyRates {
    Vec4 q; // (w, x, y, z)
    Vec3 omega;
};

Vec4 as_vec(const Eigen::Quaterniond& q) { return Vec4(q.w(), q.x(), q.y(), q.z()); }

Eigen::Quaterniond as_quat(const Vec4& v) { return Eigen::Quaterniond(v(0), v(1), v(2), v(3)); }

BodyRates body_rates(const Vec4& q, const Vec3& omega, const Mat3& j0, const Eigen::LLT<Mat3>& llt) {
    // q (x) (0, w) / 2
    const Vec3 v = q.tail<3>();
    Vec4 qdot;
    qdot(0) = -0.5 * v.dot(omega);
    qdot.tail<3>() = 0.5 * (q(0) * omega + v.cross(omega));
    return {qdot, llt.solve(-omega.cross(j0 * omega))};
}

Eigen::LLT<Mat3> factor_inertia(const Mat3& j0) {
    if ((j0 - j0.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, j0.norm())) {
        throw SingularInertia("inertia matrix is not symmetric");
    }
    Eigen::LLT<Mat3> llt(j0);
    const Eigen::SelfAdjointEigenSolver<Mat3> eig(j0, Eigen::EigenvaluesOnly);
    const double largest = eig.eigenvalues().maxCoeff();
    if (llt.info() != Eigen::Success || !(largest > 0.0) ||
        !(eig.eigenvalues().minCoeff() > 1e-12 * largest)) {
        throw SingularInertia("inertia matrix is not positive definite");
    }
    return llt;
}

RigidBodyState rk4(const RigidBodyState& s, const Mat3& j0, const Eigen::LLT<Mat3>& llt,
                   double dt) {
    const Vec4 q0 = as_vec(s.orientation);
    const Vec3 w0 = s.omega_body;
    const BodyRates k1 = body_rates(q0, w0, j0, llt);
    const BodyRates k2 = body_rates(q0 + 0.5 * dt * k1.q, w0 + 0.5 * dt * k1.omega, j0, llt);
    const BodyRates k3 = body_rates(q0 + 0.5 * dt * k2.q, w0 + 0.5 * dt * k2.omega, j0, llt);
    const BodyRates k4 = body_rates(q0 + dt * k3.q, w0 + dt * k3.omega, j0, llt);
    RigidBodyState out;
    out.t = s.t + dt;
    out.orientation =
        as_quat(q0 + dt / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q)).normalized();
    out.omega_body = w0 + dt / 6.0 * (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega);
    return out;
}

} // namespace

RigidBodyState euler_step(const RigidBodyState& state, const Mat3& j0, double dt) {
    return rk4(state, j0, factor_inertia(j0), dt);
}

RigidBodyRun simulate_free(const RigidBodyState& initial, const Mat3& j0,
                           const IntegratorConfig& config) {
    config.validate();
    const Eigen::LLT<Mat3> llt = factor_inertia(j0);

    RigidBodyRun run;
    PoinsotReport& rep = run.report;
    rep.spin_initial = spin_spatial(initial, j0);
    rep.kinetic.initial = initial.omega_body.dot(j0 * initial.omega_body);
    rep.momentum_norm.initial = (j0 * initial.omega_body).norm();

    RigidBodyState s = initial;
    s.orientation.normalize();
    run.samples.push_back(s);
    for (long n = 1; n <= config.steps; ++n) {
        s = rk4(s, j0, llt, config.dt);
        s.t = initial.t + static_cast<double>(n) * config.dt;
        const Vec3 l0 = spin_spatial(s, j0);
        rep.spin_component_drift =
            std::max(rep.spin_component_drift, (l0 - rep.spin_initial).cwiseAbs().maxCoeff());
        rep.kinetic.max_relative = std::max(
            rep.kinetic.max_relative,
            relative_drift(rep.kinetic.initial, s.omega_body.dot(j0 * s.omega_body)));
        rep.momentum_norm.max_relative =
            std::max(rep.momentum_norm.max_relative,
                     relative_drift(rep.momentum_norm.initial, (j0 * s.omega_body).norm()));
        rep.max_quaternion_defect =
            std::max(rep.max_quaternion_defect, std::abs(s.orientation.norm() - 1.0));
        rep.max_rotation_defect = std::max(rep.max_rotation_defect, rotation_defect(s.rotation()));
        rep.steps = n;
        if (n % config.sample_every == 0 || n == config.steps) run.samples.push_back(s);
    }
    return run;
}

double MaterialConsistency::max_discrepancy() const {
    return std::max({coriolis_vs_poisson, material_spin, spatial_spin_drift, rotation_mismatch,
                     omega_mismatch});
}

MaterialConsistency material_from_spatial(const RigidFrameMotion& frame, const Mat3& j0,
                                          std::span<const RigidBodyState> samples) {
    const GalileanConnection material = pullback(GalileanConnection::zero(), frame);
    MaterialConsistency out;
    Vec3 first_spin = Vec3::Zero();
    for (const auto& sample : samples) {
        const double t = sample.t;
        const Mat3 r = frame.rotation(t);
        const Vec3 w = frame.poisson(t);
        // The body center sits at the frame origin, s' = 0.
        const Vec3 omega_pulled = material.coriolis(t + frame.clock_offset(), Vec3::Zero());
        const Vec3 l0 = r * j0 * r.transpose() * w;
        if (out.samples == 0) first_spin = l0;

        out.coriolis_vs_poisson =
            std::max(out.coriolis_vs_poisson, (omega_pulled - r.transpose() * w).norm());
        out.material_spin =
            std::max(out.material_spin, (r.transpose() * l0 - j0 * omega_pulled).norm());
        out.spatial_spin_drift = std::max(out.spatial_spin_drift, (l0 - first_spin).norm());
        out.rotation_mismatch =
            std::max(out.rotation_mismatch, (sample.rotation() - r).cwiseAbs().maxCoeff());
        out.omega_mismatch =
            std::max(out.omega_mismatch, (sample.omega_body - omega_pulled).norm());
        ++out.samples;
    }
    return out;
}

RigidFrameMotion symmetric_top_motion(double a, double c, const Vec3& omega_body0, const Mat3& r0) {
    if (!(a > 0.0) || !(c > 0.0)) throw SingularInertia("symmetric top: moments must be positive");
    const Mat3 j0 = Vec3(a, a, c).asDiagonal();
    const Vec3 l0 = r0 * j0 * omega_body0;
    const double lambda = (c - a) / a * omega_body0.z();
    const double precession = l0.norm() / a;

    auto rotation = [=](double t) -> Mat3 {
        return rodrigues(l0, precession * t) * r0 * rodrigues(Vec3::UnitZ(), -lambda * t);
    };
    RigidFrameMotion::Derivatives d;
    d.poisson = [=](double t) -> Vec3 { return l0 / a - lambda * (rotation(t) * Vec3::UnitZ()); };
    d.poisson_rate = [=](double t) -> Vec3 {
        const Vec3 axis = rotation(t) * Vec3::UnitZ();
        const Vec3 w = l0 / a - lambda * axis;
        return -lambda * w.cross(axis);
    };
    d.origin_velocity = [](double) -> Vec3 { return Vec3::Zero(); };
    d.origin_acceleration = d.origin_velocity;
    return RigidFrameMotion(0.0, rotation, [](double) -> Vec3 { return Vec3::Zero(); }, d);
}

} // namespace galmech
