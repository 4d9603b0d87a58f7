#include "galmech/verify/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "galmech/connection.hpp"
#include "galmech/dynamics.hpp"
#include "galmech/galilei.hpp"
#include "galmech/rigidbody.hpp"
#include "galmech/torsor.hpp"
#include "galmech/verify/oracles.hpp"
#include "galmech/verify/sampler.hpp"

namespace galmech::verify {

namespace {

/// Collects "label = measured (<= threshold)" items; the criterion passes
/// when every item does.
class Checklist {
public:
    void at_most(const std::string& label, double measured, double threshold) {
        const bool ok = measured <= threshold;
        add(ok, fmt::format("{} = {:.3e} (<= {:.0e})", label, measured, threshold));
    }
    void at_least(const std::string& label, double measured, double threshold) {
        const bool ok = measured >= threshold;
        add(ok, fmt::format("{} = {:.3g} (>= {:g})", label, measured, threshold));
    }
    void equals(const std::string& label, long measured, long expected) {
        add(measured == expected, fmt::format("{} = {} (== {})", label, measured, expected));
    }
    void holds(const std::string& label, bool ok) { add(ok, label + (ok ? "" : " FAILED")); }

    CriterionResult result(int id, const std::string& name) const {
        return {id, name, passed_, detail_, 0.0};
    }

private:
    void add(bool ok, const std::string& text) {
        passed_ = passed_ && ok;
        if (!detail_.empty()) detail_ += "; ";
        detail_ += text;
    }

    bool passed_ = true;
    std::string detail_;
};

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Non-uniform rotation about a tilted axis with a translating origin and a
// clock offset; all derivatives analytic.
RigidFrameMotion wobbling_frame() {
    const Vec3 axis = Vec3(1.0, -2.0, 2.0).normalized();
    RigidFrameMotion::Derivatives d;
    d.poisson = [axis](double t) -> Vec3 { return axis * (0.3 + 0.2 * t); };
    d.poisson_rate = [axis](double) -> Vec3 { return axis * 0.2; };
    d.origin_velocity = [](double t) -> Vec3 { return Vec3(std::cos(t), t, 0.2); };
    d.origin_acceleration = [](double t) -> Vec3 { return Vec3(-std::sin(t), 1.0, 0.0); };
    return RigidFrameMotion(
        0.7, [axis](double t) -> Mat3 { return rodrigues(axis, 0.3 * t + 0.1 * t * t); },
        [](double t) -> Vec3 { return Vec3(std::sin(t), 0.5 * t * t, 0.2 * t); }, d);
}

// Inhomogeneous, time-dependent fields exercising every term of the connection.
GalileanConnection textured_connection(const Vec3& g0, const Vec3& omega0) {
    return GalileanConnection(
        [g0](double t, const Vec3& r) -> Vec3 { return g0 + 0.1 * r + Vec3(0.0, 0.05 * t, 0.0); },
        [omega0](double t, const Vec3& r) -> Vec3 {
            return omega0 + 0.02 * Vec3(r.y(), t, -r.x());
        });
}

// ---------------------------------------------------------------------------

CriterionResult representation_equivalence(std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    Sampler s(seed);
    double worst = 0.0;
    double worst_skew = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const GalileanTorsor mu = s.torsor();
        const GalileanTransformation a = s.galilean();
        const Mat5 by_matrix = transform_matrix(mu.to_matrix(), a);
        worst = std::max(worst, max_abs(transform(mu, a).to_matrix() - by_matrix));
        worst_skew = std::max(worst_skew, max_abs(by_matrix + by_matrix.transpose()));
    }
    const double elapsed = seconds_since(start);
    Checklist c;
    c.at_most("max |component law - conjugation|", worst, 1e-12);
    c.at_most("max skew defect", worst_skew, 1e-12);
    c.at_most("runtime s", elapsed, 1.0);
    return c.result(1, "torsor component law matches 5x5 conjugation (1000 samples)");
}

CriterionResult invariant_suite(std::uint64_t seed) {
    Sampler s(seed + 1);
    double mass = 0.0;
    double spin_norm = 0.0;
    double spin_rotation = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const GalileanTorsor mu = s.spinning_torsor();
        const GalileanTransformation a = s.galilean(2.0);
        const TorsorInvariants before = invariants(mu);
        const TorsorInvariants after = invariants(transform(mu, a));
        mass = std::max(mass, std::abs(after.m - before.m) / std::abs(before.m));
        spin_norm = std::max(spin_norm, std::abs(after.spin_norm - before.spin_norm) / before.spin_norm);
        spin_rotation =
            std::max(spin_rotation, (after.spin - a.R().transpose() * before.spin).norm() /
                                        std::max(1.0, before.spin_norm));
    }
    Checklist c;
    c.at_most("relative mass change", mass, 1e-10);
    c.at_most("relative |l0| change", spin_norm, 1e-10);
    c.at_most("|l0' - R^T l0|", spin_rotation, 1e-10);
    return c.result(2, "m and |l0| invariant, l0 rotates as R^T l0 (1000 samples)");
}

CriterionResult stabilizer_fixed_point(std::uint64_t seed) {
    Sampler s(seed + 2);
    double worst = 0.0;
    long dim2 = 0;
    long rank2 = 0;
    for (int i = 0; i < 100; ++i) {
        const GalileanTorsor mu = s.spinning_torsor();
        const auto a = stabilizer_element(mu, s.uniform(-std::numbers::pi, std::numbers::pi),
                                          s.uniform(-2.0, 2.0));
        worst = std::max(worst, max_abs(transform(mu, a).components() - mu.components()));
        dim2 += isotropy_dimension(mu) == 2 ? 1 : 0;
        rank2 += isotropy_dimension_from_rank(mu) == 2 ? 1 : 0;
    }
    long dim4 = 0;
    long rank4 = 0;
    double worst_spinless = 0.0;
    for (int i = 0; i < 100; ++i) {
        const GalileanTorsor mu = s.spinless_torsor();
        const auto a = stabilizer_element(mu, s.uniform(-std::numbers::pi, std::numbers::pi),
                                          s.uniform(-2.0, 2.0), s.unit_vector());
        worst_spinless =
            std::max(worst_spinless, max_abs(transform(mu, a).components() - mu.components()));
        dim4 += isotropy_dimension(mu) == 4 ? 1 : 0;
        rank4 += isotropy_dimension_from_rank(mu) == 4 ? 1 : 0;
    }
    Checklist c;
    c.at_most("max |transform(mu, a) - mu| (l0 != 0)", worst, 1e-10);
    c.at_most("max |transform(mu, a) - mu| (l0 == 0)", worst_spinless, 1e-10);
    c.equals("isotropy dim 2 count", dim2, 100);
    c.equals("isotropy dim 4 count", dim4, 100);
    c.equals("orbit-rank dim 2 count", rank2, 100);
    c.equals("orbit-rank dim 4 count", rank4, 100);
    return c.result(3, "stabilizer elements fix their torsor; isotropy dimension 2 / 4");
}

CriterionResult free_particle(std::uint64_t) {
    const ParticleState start = ParticleState::from_motion(
        0.0, 1.5, Vec3(1.0, -2.0, 0.5), Vec3(0.3, 0.2, -0.4), Vec3(0.1, -0.2, 0.3));
    const ParticleRun run = simulate(start, GalileanConnection::zero(), {1e-3, 10000, 1000});
    Checklist c;
    c.equals("steps", run.report.steps_completed, 10000);
    c.at_most("max relative drift over 10 torsor components", run.report.max_torsor_drift(), 1e-12);
    c.at_most("|l0| drift", run.report.spin_norm.max_relative, 1e-12);
    return c.result(4, "free particle: all ten torsor components constant (1e4 RK4 steps)");
}

CriterionResult uniform_gravity(std::uint64_t) {
    const Vec3 g(0.0, 0.0, -9.81);
    const double m = 1.0;
    const double dt = 1e-3;
    const ParticleState start =
        ParticleState::from_motion(0.0, m, Vec3::Zero(), Vec3(1.0, 0.0, 0.0));
    const ParticleRun run = simulate(start, GalileanConnection::uniform(g), {dt, 1000, 1});
    const auto& traj = run.samples;
    const double parabola_err =
        (traj.back().r - parabola(Vec3::Zero(), Vec3(1.0, 0.0, 0.0), g, 1.0)).norm();

    double l_law = 0.0;
    double q_law = 0.0;
    for (std::size_t n = 2; n + 2 < traj.size(); ++n) {
        const Vec3 ldot = five_point_derivative(traj[n - 2].l, traj[n - 1].l, traj[n + 1].l,
                                                traj[n + 2].l, dt);
        const Vec3 qdot = five_point_derivative(traj[n - 2].q, traj[n - 1].q, traj[n + 1].q,
                                                traj[n + 2].q, dt);
        l_law = std::max(l_law, (ldot - traj[n].r.cross(m * g)).norm());
        q_law = std::max(q_law, (qdot - traj[n].p).norm());
    }
    // Fourth-order stencil on an RK4 trajectory: residual budget 1e3 dt^4.
    const double law_tol = 1e3 * std::pow(dt, 4);
    Checklist c;
    c.at_most("|r(1) - parabola|", parabola_err, 1e-9);
    c.at_most("max |dl/dt - r x m g|", l_law, law_tol);
    c.at_most("max |dq/dt - p|", q_law, law_tol);
    return c.result(5, "uniform gravity: parabola, dl/dt = r x m g, dq/dt = p");
}

struct OrbitResult {
    double radius_drift = 0.0;
    double period = 0.0;
    double energy_drift = 0.0;
};

OrbitResult circular_orbit(double dt, long steps) {
    const GalileanConnection conn = newtonian_connection({GravitySource::fixed(1.0, Vec3::Zero())});
    const ParticleState start =
        ParticleState::from_motion(0.0, 1.0, Vec3(1.0, 0.0, 0.0), Vec3(0.0, 1.0, 0.0));
    const ParticleRun run = simulate(start, conn, {dt, steps, 1});
    OrbitResult out;
    out.energy_drift = std::abs(run.report.energy->max_relative * run.report.energy->initial);
    for (std::size_t n = 1; n < run.samples.size(); ++n) {
        const ParticleState& a = run.samples[n - 1];
        const ParticleState& b = run.samples[n];
        out.radius_drift = std::max(out.radius_drift, std::abs(b.r.norm() - 1.0));
        if (out.period == 0.0 && a.t > 1.0 && a.r.y() < 0.0 && b.r.y() >= 0.0) {
            // Cubic Hermite root of y(t) on [a.t, b.t].
            const double h = b.t - a.t;
            const double y0 = a.r.y(), y1 = b.r.y();
            const double m0 = a.velocity().y() * h, m1 = b.velocity().y() * h;
            double s = y0 / (y0 - y1);
            for (int it = 0; it < 50; ++it) {
                const double s2 = s * s, s3 = s2 * s;
                const double y = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
                                 (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
                const double dy = (6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * m0 +
                                  (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * m1;
                const double next = s - y / dy;
                if (std::abs(next - s) < 1e-15) break;
                s = next;
            }
            out.period = a.t + s * h;
        }
    }
    return out;
}

CriterionResult newtonian_orbit(std::uint64_t) {
    const auto start = std::chrono::steady_clock::now();
    const double two_pi = 2.0 * std::numbers::pi;
    const OrbitResult fine = circular_orbit(1e-4, static_cast<long>(std::ceil(two_pi / 1e-4)) + 10);
    // Convergence of the energy error is measured over one revolution at
    // coarse steps, where it sits far above rounding.
    const OrbitResult coarse = circular_orbit(two_pi / 200.0, 200);
    const OrbitResult halved = circular_orbit(two_pi / 400.0, 400);
    const double elapsed = seconds_since(start);
    Checklist c;
    c.at_most("radius drift", fine.radius_drift, 1e-8);
    c.at_most("|period - 2 pi|", std::abs(fine.period - two_pi), 1e-6);
    c.at_least("energy drift ratio (dt -> dt/2)", coarse.energy_drift / halved.energy_drift, 15.0);
    c.at_most("runtime s", elapsed, 10.0);
    return c.result(6, "Newtonian circular orbit: radius, period, 4th-order energy drift");
}

CriterionResult frame_covariance(std::uint64_t) {
    const ParticleState start = ParticleState::from_motion(
        0.0, 2.0, Vec3(1.0, 0.5, 2.0), Vec3(0.3, -0.2, 1.0), Vec3(0.1, 0.2, 0.3));
    const CovarianceResult cov =
        covariance_check(start, GalileanConnection::uniform(Vec3(0.0, 0.0, -9.81)),
                         RigidFrameMotion::uniform_rotation(Vec3(0.0, 0.0, 0.5)),
                         {1e-4, 20000, 100});
    Checklist c;
    c.at_most("max discrepancy (rotating frame, t in [0, 2])", cov.max_discrepancy, 1e-6);
    return c.result(7, "free fall covariant under a rotating frame (omega = 0.5 rad/s)");
}

CriterionResult rigid_body(std::uint64_t) {
    const Mat3 triaxial = Vec3(1.0, 2.0, 3.0).asDiagonal();
    Checklist c;
    const Vec3 starts[] = {Vec3(0.4, 1.0, -0.6), Vec3(1.0, 1e-6, 0.0), Vec3(1e-6, 1.0, 0.0)};
    for (const Vec3& w0 : starts) {
        RigidBodyState s0;
        s0.orientation = Eigen::Quaterniond(Eigen::AngleAxisd(0.3, Vec3(1, 1, 0).normalized()));
        s0.omega_body = w0;
        const RigidBodyRun run = simulate_free(s0, triaxial, {1e-3, 100000, 1000});
        const std::string tag = w0.x() < 1e-3 ? " (intermediate axis)" : " (generic)";
        c.at_most("l0 component drift" + tag, run.report.spin_component_drift, 1e-8);
        c.at_most("kinetic relative drift" + tag, run.report.kinetic.max_relative, 1e-10);
    }

    // Symmetric top: (Omega'_1, Omega'_2) turns at (J3 - J1) / J1 * Omega'_3.
    const Mat3 top = Vec3(1.0, 1.0, 2.0).asDiagonal();
    RigidBodyState s0;
    s0.omega_body = Vec3(1.0, 0.0, 1.0);
    const RigidBodyRun run = simulate_free(s0, top, {1e-3, 10000, 1});
    double phase = 0.0;
    double previous = 0.0;
    for (const auto& s : run.samples) {
        const double angle = std::atan2(s.omega_body.y(), s.omega_body.x());
        double delta = angle - previous;
        while (delta > std::numbers::pi) delta -= 2.0 * std::numbers::pi;
        while (delta < -std::numbers::pi) delta += 2.0 * std::numbers::pi;
        phase += delta;
        previous = angle;
    }
    const double rate = phase / run.samples.back().t;
    c.at_most("|precession rate - 1|", std::abs(rate - 1.0), 1e-6);
    return c.result(8, "free rigid body: spatial spin and Poinsot invariants conserved");
}

CriterionResult connection_cross_check(std::uint64_t seed) {
    Sampler s(seed + 9);
    double j_err = 0.0;
    double affine_err = 0.0;
    double t_err = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const GalileanConnection conn = textured_connection(s.vec(10.0), s.vec());
        const Event x{s.uniform(-1.0, 1.0), s.vec()};
        const DisplacementForm dx{s.uniform(-1.0, 1.0), s.vec()};
        const GalileanTorsor mu = s.torsor();
        const GalileanTorsor dmu = s.torsor();

        const AngularDerivative tuple = covariant_derivative_J(conn, mu, dmu, x, dx);
        const Mat4 matrix =
            covariant_derivative_J_matrix(conn, angular_block(mu), angular_block(dmu), x, dx);
        j_err = std::max(j_err, max_abs(angular_block({0.0, Vec3::Zero(), tuple.q, tuple.l}) - matrix));

        const AngularDerivative affine_tuple = affine_derivative_J(conn, mu, dmu, x, dx);
        const Mat4 affine_matrix = affine_derivative_J_matrix(conn, angular_block(mu), linear_block(mu),
                                                              angular_block(dmu), x, dx);
        affine_err = std::max(
            affine_err,
            max_abs(angular_block({0.0, Vec3::Zero(), affine_tuple.q, affine_tuple.l}) - affine_matrix));

        // nabla p = dp - m g dt + Omega x (m dr + p dt).
        const Vec4 nt = covariant_derivative_T(conn, linear_block(mu), linear_block(dmu), x, dx);
        const Vec3 expected = dmu.p - mu.m * conn.gravity(x.t, x.r) * dx.dt +
                              conn.coriolis(x.t, x.r).cross(mu.m * dx.dr + mu.p * dx.dt);
        t_err = std::max({t_err, std::abs(nt(0) - dmu.m), (nt.tail<3>() - expected).cwiseAbs().maxCoeff()});
    }

    double pull_err = 0.0;
    double top_row = 0.0;
    const GalileanConnection base = textured_connection(Vec3(0.0, 0.0, -9.81), Vec3(0.05, 0.0, 0.1));
    const RigidFrameMotion frames[] = {RigidFrameMotion::uniform_rotation(Vec3(0.0, 0.0, 0.5)),
                                       RigidFrameMotion::uniform_acceleration(Vec3(0.4, -0.1, 0.2)),
                                       wobbling_frame()};
    for (const auto& f : frames) {
        const GalileanConnection pulled = pullback(base, f);
        for (int i = 0; i < 50; ++i) {
            const Event xf{s.uniform(0.0, 2.0), s.vec(2.0)};
            const DisplacementForm dxf{s.uniform(-1.0, 1.0), s.vec()};
            const Mat4 closed = connection_matrix(pulled, xf, dxf);
            const Mat4 numeric = fd_pullback_matrix(base, f, xf, dxf);
            pull_err = std::max(pull_err, max_abs(closed - numeric));
            top_row = std::max(top_row, numeric.row(0).cwiseAbs().maxCoeff());
        }
    }
    Checklist c;
    c.at_most("nabla J tuple vs matrix", j_err, 1e-12);
    c.at_most("affine nabla J tuple vs matrix", affine_err, 1e-12);
    c.at_most("nabla T tuple vs matrix", t_err, 1e-12);
    c.at_most("closed-form vs finite-difference pullback", pull_err, 1e-5);
    c.at_most("pulled-back top row", top_row, 1e-9);
    return c.result(9, "connection tuple formulas match matrix forms; pullback matches P^-1(wP + dP)");
}

CriterionResult group_axioms(std::uint64_t seed) {
    Sampler s(seed + 10);
    double assoc = 0.0;
    double ident = 0.0;
    double inv = 0.0;
    double homo = 0.0;
    const GalileanTransformation e = GalileanTransformation::identity();
    for (int i = 0; i < 1000; ++i) {
        const auto a = s.galilean();
        const auto b = s.galilean();
        const auto c = s.galilean();
        assoc = std::max(assoc, max_abs(compose(compose(a, b), c).lift5() - compose(a, compose(b, c)).lift5()));
        ident = std::max({ident, max_abs(compose(a, e).lift5() - a.lift5()),
                          max_abs(compose(e, a).lift5() - a.lift5())});
        inv = std::max({inv, max_abs(compose(a, inverse(a)).lift5() - Mat5::Identity()),
                        max_abs(compose(inverse(a), a).lift5() - Mat5::Identity())});
        homo = std::max(homo, max_abs(compose(a, b).lift5() - a.lift5() * b.lift5()));
    }

    double jac = 0.0;
    const RigidFrameMotion frames[] = {RigidFrameMotion::uniform_rotation(Vec3(0.0, 0.0, 1.0)),
                                       RigidFrameMotion::uniform_acceleration(Vec3(1.0, 0.0, 0.0)),
                                       wobbling_frame()};
    for (const auto& f : frames) {
        for (int i = 0; i < 50; ++i) {
            const Event x{s.uniform(0.0, 2.0), s.vec(2.0)};
            const Mat4 analytic = jacobian(f, x.t, x.r).linear_inverse();
            jac = std::max(jac, max_abs(analytic - fd_frame_jacobian(f, x, 1e-5)));
        }
    }

    // Ten one-parameter subgroups give independent tangents at the identity.
    Eigen::Matrix<double, 25, 10> tangents;
    for (int g = 0; g < 10; ++g) {
        const double h = 1e-6;
        const Mat5 d = (one_parameter_subgroup(g, h).lift5() - one_parameter_subgroup(g, -h).lift5()) / (2 * h);
        tangents.col(g) = Eigen::Map<const Eigen::Matrix<double, 25, 1>>(d.data());
    }
    Eigen::FullPivLU<Eigen::Matrix<double, 25, 10>> lu(tangents);
    lu.setThreshold(1e-8);

    Checklist c;
    c.at_most("associativity", assoc, 1e-12);
    c.at_most("identity", ident, 1e-12);
    c.at_most("inverse", inv, 1e-12);
    c.at_most("lift5 homomorphism", homo, 1e-12);
    c.at_most("Jacobian vs finite differences", jac, 1e-6);
    c.equals("group dimension", lu.rank(), 10);
    return c.result(10, "Galilei group axioms via lift5; Jacobians match finite differences");
}

} // namespace

const std::vector<Criterion>& acceptance_criteria() {
    static const std::vector<Criterion> all = {
        {1, "representation-oracle equivalence", representation_equivalence},
        {2, "invariant suite", invariant_suite},
        {3, "stabilizer fixed point", stabilizer_fixed_point},
        {4, "free particle", free_particle},
        {5, "uniform gravity", uniform_gravity},
        {6, "Newtonian circular orbit", newtonian_orbit},
        {7, "frame covariance", frame_covariance},
        {8, "rigid body", rigid_body},
        {9, "connection cross-check", connection_cross_check},
        {10, "group axioms", group_axioms},
    };
    return all;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    std::vector<CriterionResult> out;
    for (const auto& c : acceptance_criteria()) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = c.run(seed);
        } catch (const std::exception& e) {
            r = {c.id, c.name, false, std::string("exception: ") + e.what(), 0.0};
        }
        r.seconds = seconds_since(start);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    return fmt::format("[{}] {:>2} {}: {} ({:.3f} s)", r.passed ? "PASS" : "FAIL", r.id, r.name,
                       r.detail, r.seconds);
}

} // namespace galmech::verify
