#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "galmech/connection.hpp"
#include "galmech/galilei.hpp"
#include "galmech/torsor.hpp"

namespace galmech {

/// Event and torsor of a particle along its trajectory.
///
/// The torsor is carried in the proper affine frame whose clock reads zero at
/// the current event, so for a particle started by from_motion() the passage
/// stays q = m r. inertial_torsor() moves it to the fixed clock origin.
struct ParticleState {
    double t = 0.0;
    Vec3 r = Vec3::Zero();
    double m = 1.0;
    Vec3 p = Vec3::Zero();
    Vec3 l = Vec3::Zero();
    Vec3 q = Vec3::Zero();

    /// p = m v, l = l0 + m r x v, q = m r.
    static ParticleState from_motion(double t, double m, const Vec3& r, const Vec3& v,
                                     const Vec3& l0 = Vec3::Zero());

    Vec3 velocity() const { return p / m; }
    Event event() const { return {t, r}; }
    GalileanTorsor torsor() const { return {m, p, q, l}; }
    /// Torsor referred to the clock origin t = 0 (passage q - t p).
    GalileanTorsor inertial_torsor() const;
    /// l0 = l - q x p / m.
    Vec3 spin() const { return galmech::spin(torsor()); }
    /// |q - m r| relative to max(|q|, |m r|, 1e-12).
    double passage_defect() const;
};

/// Point mass m' on a prescribed trajectory, attracting with constant k_g.
struct GravitySource {
    double mass = 1.0;
    std::function<Vec3(double)> trajectory;
    double k_g = 1.0;

    static GravitySource fixed(double mass, const Vec3& position, double k_g = 1.0);
    static GravitySource moving(double mass, const Vec3& position, const Vec3& velocity,
                                double k_g = 1.0);
};

struct IntegratorConfig {
    double dt = 1e-3;
    long steps = 1000;
    /// Keep every n-th state in the returned trajectory (the last one is always kept).
    long sample_every = 1;

    /// Throws InvalidInput on dt <= 0, steps < 1 or sample_every < 1.
    void validate() const;
};

/// Minimum source distance below which the gravity field is rejected.
inline constexpr double kSingularityRadius = 1e-9;

/// g = -sum k_g m' (r - r') / |r - r'|^3. Throws GravitySingularity.
Vec3 newtonian_gravity(const std::vector<GravitySource>& sources, const Event& x);
/// Galilean connection with the Newtonian g and Omega = 0.
GalileanConnection newtonian_connection(std::vector<GravitySource> sources);

/// One classical RK4 step of
///
///     dr/dt = p / m
///     dp/dt = m (g - 2 Omega x v)
///     dl/dt = r x m (g - 2 Omega x v) - Omega x l0,   l0 = l - q x p / m
///     dq/dt = p
///
/// with dm/dt = 0. Throws InvalidInput when m <= 0.
ParticleState step(const ParticleState& state, const GalileanConnection& conn, double dt);

/// Time derivative of (r, p, l, q) at a state, per the equations of step().
struct ParticleRates {
    Vec3 r, p, l, q;
};
ParticleRates motion_rates(const ParticleState& state, const GalileanConnection& conn);
/// The same rates computed from the unsimplified affine-derivative balance
/// dl/dt = -Omega x l - q x (Omega x v - g) + (Omega x r) x p,
/// dq/dt = p - Omega x (q - m r).
ParticleRates motion_rates_unsimplified(const ParticleState& state,
                                        const GalileanConnection& conn);

/// Largest relative drift of one conserved quantity along a run.
struct Drift {
    double initial = 0.0;
    double max_relative = 0.0;
};

struct ConservationReport {
    long steps_completed = 0;
    bool truncated = false;
    std::string diagnostic;
    std::string connection_kind;
    Drift mass;
    Drift spin_norm;
    double passage_defect = 0.0;
    /// Flat connections only: drift of each inertial torsor component (m, p, q, l).
    std::optional<std::array<Drift, 10>> torsor_components;
    /// Connections with a potential: |p|^2 / 2m + m phi.
    std::optional<Drift> energy;

    double max_torsor_drift() const;
};

struct ParticleRun {
    std::vector<ParticleState> samples;
    ConservationReport report;
};

ParticleRun simulate(const ParticleState& initial, const GalileanConnection& conn,
                     const IntegratorConfig& config);

/// Maps a particle state into the coordinates of f: the event through
/// f.to_frame() and the torsor through the local Galilean transformation with
/// boost = transport velocity, rotation R(t) and inverse-side translation
/// -R^T r0(t).
ParticleState to_frame(const ParticleState& state, const RigidFrameMotion& f);

struct CovarianceResult {
    double max_discrepancy = 0.0;
    double position = 0.0;
    double momentum = 0.0;
    double angular_momentum = 0.0;
    double passage = 0.0;
    long samples = 0;
};

/// Integrates in the original coordinates and maps every sample with
/// to_frame(), integrates directly against pullback(conn, frame) and returns
/// the largest component difference.
CovarianceResult covariance_check(const ParticleState& initial, const GalileanConnection& conn,
                                  const RigidFrameMotion& frame, const IntegratorConfig& config);

/// Relative drift with the absolute fallback for |initial| < 1e-12.
double relative_drift(double initial, double current);

} // namespace galmech
