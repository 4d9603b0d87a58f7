#include "galmech/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

#include "galmech/errors.hpp"

namespace galmech {

ParticleState ParticleState::from_motion(double t, double m, const Vec3& r, const Vec3& v,
                                         const Vec3& l0) {
    ParticleState s;
    s.t = t;
    s.r = r;
    s.m = m;
    s.p = m * v;
    s.l = l0 + m * r.cross(v);
    s.q = m * r;
    return s;
}

GalileanTorsor ParticleState::inertial_torsor() const {
    // Local clock reads t_local = t_global - t, i.e. a clock change tau = -t.
    return transform(torsor(), GalileanTransformation::clock_change(-t));
}

double ParticleState::passage_defect() const {
    const Vec3 mr = m * r;
    return (q - mr).norm() / std::max({q.norm(), mr.norm(), 1e-12});
}

GravitySource GravitySource::fixed(double mass, const Vec3& position, double k_g) {
    return {mass, [position](double) -> Vec3 { return position; }, k_g};
}

GravitySource GravitySource::moving(double mass, const Vec3& position, const Vec3& velocity,
                                    double k_g) {
    return {mass, [position, velocity](double t) -> Vec3 { return position + velocity * t; }, k_g};
}

void IntegratorConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("integrator: dt must be positive");
    if (steps < 1) throw InvalidInput("integrator: steps must be at least 1");
    if (sample_every < 1) throw InvalidInput("integrator: sample_every must be at least 1");
}

Vec3 newtonian_gravity(const std::vector<GravitySource>& sources, const Event& x) {
    Vec3 g = Vec3::Zero();
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const Vec3 d = x.r - sources[i].trajectory(x.t);
        const double dist = d.norm();
        if (dist < kSingularityRadius) throw GravitySingularity(i, dist);
        g -= sources[i].k_g * sources[i].mass / (dist * dist * dist) * d;
    }
    return g;
}

GalileanConnection newtonian_connection(std::vector<GravitySource> sources) {
    for (const auto& s : sources) {
        if (!(s.mass > 0.0)) throw InvalidInput("gravity source mass must be positive");
        if (!s.trajectory) throw InvalidInput("gravity source needs a trajectory");
    }
    auto shared = std::make_shared<const std::vector<GravitySource>>(std::move(sources));
    auto gravity = [shared](double t, const Vec3& r) { return newtonian_gravity(*shared, {t, r}); };
    auto potential = [shared](double t, const Vec3& r) {
        double phi = 0.0;
        for (const auto& s : *shared) phi -= s.k_g * s.mass / (r - s.trajectory(t)).norm();
        return phi;
    };
    return {gravity, [](double, const Vec3&) -> Vec3 { return Vec3::Zero(); },
            GalileanConnection::Kind::newtonian, potential};
}

ParticleRates motion_rates(const ParticleState& s, const GalileanConnection& conn) {
    const Vec3 v = s.p / s.m;
    const Vec3 g = conn.gravity(s.t, s.r);
    const Vec3 omega = conn.coriolis(s.t, s.r);
    const Vec3 force = s.m * (g - 2.0 * omega.cross(v));
    const Vec3 l0 = s.l - s.q.cross(s.p) / s.m;
    return {v, force, s.r.cross(force) - omega.cross(l0), s.p};
}

ParticleRates motion_rates_unsimplified(const ParticleState& s, const GalileanConnection& conn) {
    const Vec3 v = s.p / s.m;
    const Vec3 g = conn.gravity(s.t, s.r);
    const Vec3 omega = conn.coriolis(s.t, s.r);
    const Vec3 pdot = s.m * g - omega.cross(s.m * v + s.p);
    const Vec3 ldot = -omega.cross(s.l) - s.q.cross(omega.cross(v) - g) + omega.cross(s.r).cross(s.p);
    const Vec3 qdot = s.p - omega.cross(s.q - s.m * s.r);
    return {v, pdot, ldot, qdot};
}

namespace {

ParticleState advance(const ParticleState& s, const ParticleRates& k, double h) {
    ParticleState out = s;
    out.t = s.t + h;
    out.r = s.r + h * k.r;
    out.p = s.p + h * k.p;
    out.l = s.l + h * k.l;
    out.q = s.q + h * k.q;
    return out;
}

} // namespace

ParticleState step(const ParticleState& state, const GalileanConnection& conn, double dt) {
    if (!(state.m > 0.0)) throw InvalidInput("particle step: mass must be positive");
    const ParticleRates k1 = motion_rates(state, conn);
    const ParticleRates k2 = motion_rates(advance(state, k1, 0.5 * dt), conn);
    const ParticleRates k3 = motion_rates(advance(state, k2, 0.5 * dt), conn);
    const ParticleRates k4 = motion_rates(advance(state, k3, dt), conn);
    const double w = dt / 6.0;
    ParticleState out = state;
    out.t = state.t + dt;
    out.r = state.r + w * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
    out.p = state.p + w * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    out.l = state.l + w * (k1.l + 2.0 * k2.l + 2.0 * k3.l + k4.l);
    out.q = state.q + w * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
    return out;
}

double relative_drift(double initial, double current) {
    const double scale = std::abs(initial);
    const double diff = std::abs(current - initial);
    return scale < 1e-12 ? diff : diff / scale;
}

double ConservationReport::max_torsor_drift() const {
    double worst = 0.0;
    if (torsor_components) {
        for (const auto& d : *torsor_components) worst = std::max(worst, d.max_relative);
    }
    return worst;
}

namespace {

double energy_of(const ParticleState& s, const GalileanConnection& conn) {
    return s.p.squaredNorm() / (2.0 * s.m) + s.m * conn.potential(s.t, s.r);
}

void track(Drift& d, double current) {
    d.max_relative = std::max(d.max_relative, relative_drift(d.initial, current));
}

} // namespace

ParticleRun simulate(const ParticleState& initial, const GalileanConnection& conn,
                     const IntegratorConfig& config) {
    config.validate();
    if (!(initial.m > 0.0)) throw InvalidInput("simulate: mass must be positive");

    ParticleRun run;
    ConservationReport& rep = run.report;
    rep.connection_kind = to_string(conn.kind());
    rep.mass.initial = initial.m;
    rep.spin_norm.initial = initial.spin().norm();
    rep.passage_defect = initial.passage_defect();

    Eigen::Matrix<double, 10, 1> torsor0;
    if (conn.is_flat()) {
        torsor0 = initial.inertial_torsor().components();
        std::array<Drift, 10> comps{};
        for (int i = 0; i < 10; ++i) comps[i].initial = torsor0(i);
        rep.torsor_components = comps;
    }
    try {
        (void)conn.gravity(initial.t, initial.r);
        if (conn.has_potential()) rep.energy = Drift{energy_of(initial, conn), 0.0};
    } catch (const GravitySingularity& e) {
        rep.truncated = true;
        rep.diagnostic = e.what();
        run.samples.push_back(initial);
        return run;
    }

    run.samples.push_back(initial);
    ParticleState s = initial;
    for (long n = 1; n <= config.steps; ++n) {
        try {
            s = step(s, conn, config.dt);
            // Pin time to the grid so that long runs do not accumulate clock error.
            s.t = initial.t + static_cast<double>(n) * config.dt;
            if (rep.energy) track(*rep.energy, energy_of(s, conn));
        } catch (const GravitySingularity& e) {
            rep.truncated = true;
            rep.diagnostic = std::string(e.what()) + " at step " + std::to_string(n);
            break;
        }
        rep.steps_completed = n;
        track(rep.mass, s.m);
        track(rep.spin_norm, s.spin().norm());
        rep.passage_defect = std::max(rep.passage_defect, s.passage_defect());
        if (rep.torsor_components) {
            const auto c = s.inertial_torsor().components();
            for (int i = 0; i < 10; ++i) track((*rep.torsor_components)[i], c(i));
        }
        if (n % config.sample_every == 0 || n == config.steps) run.samples.push_back(s);
    }
    if (rep.truncated && run.samples.back().t != s.t) run.samples.push_back(s);
    return run;
}

ParticleState to_frame(const ParticleState& state, const RigidFrameMotion& f) {
    const Mat3 r = f.rotation(state.t);
    const Vec3 u = transport_velocity(f, state.t, state.r);
    const auto a = GalileanTransformation::from_inverse_side(
        0.0, -(r.transpose() * f.origin(state.t)), u, r);
    const GalileanTorsor mu = transform(state.torsor(), a);
    const Event x = f.to_frame(state.event());
    ParticleState out;
    out.t = x.t;
    out.r = x.r;
    out.m = mu.m;
    out.p = mu.p;
    out.l = mu.l;
    out.q = mu.q;
    return out;
}

CovarianceResult covariance_check(const ParticleState& initial, const GalileanConnection& conn,
                                  const RigidFrameMotion& frame, const IntegratorConfig& config) {
    config.validate();
    const GalileanConnection pulled = pullback(conn, frame);
    ParticleState original = initial;
    ParticleState direct = to_frame(initial, frame);
    const double t0_frame = direct.t;

    CovarianceResult result;
    auto compare = [&](const ParticleState& mapped) {
        result.position = std::max(result.position, (mapped.r - direct.r).cwiseAbs().maxCoeff());
        result.momentum = std::max(result.momentum, (mapped.p - direct.p).cwiseAbs().maxCoeff());
        result.angular_momentum =
            std::max(result.angular_momentum, (mapped.l - direct.l).cwiseAbs().maxCoeff());
        result.passage = std::max(result.passage, (mapped.q - direct.q).cwiseAbs().maxCoeff());
        result.max_discrepancy = std::max(
            {result.position, result.momentum, result.angular_momentum, result.passage});
        ++result.samples;
    };

    compare(to_frame(original, frame));
    for (long n = 1; n <= config.steps; ++n) {
        original = step(original, conn, config.dt);
        original.t = initial.t + static_cast<double>(n) * config.dt;
        direct = step(direct, pulled, config.dt);
        direct.t = t0_frame + static_cast<double>(n) * config.dt;
        if (n % config.sample_every == 0 || n == config.steps) compare(to_frame(original, frame));
    }
    return result;
}

} // namespace galmech
