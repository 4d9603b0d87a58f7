#include <doctest.h>

#include <numbers>

#include "galmech/errors.hpp"
#include "galmech/rigidbody.hpp"
#include "galmech/verify/sampler.hpp"
#include "support.hpp"

using namespace galmech;
using galmech::test::max_diff;

namespace {

MassDistribution cube() {
    MassDistribution d;
    for (int i = 0; i < 8; ++i) {
        d.points.push_back({1.0, Vec3(i & 1 ? 1 : -1, i & 2 ? 1 : -1, i & 4 ? 1 : -1)});
    }
    return d;
}

RigidBodyState state(const Vec3& omega, const Mat3& r = Mat3::Identity()) {
    RigidBodyState s;
    s.orientation = Eigen::Quaterniond(r);
    s.omega_body = omega;
    return s;
}

} // namespace

TEST_CASE("inertia from points") {
    const auto single = inertia_from_points({{{1.0, Vec3(1, 0, 0)}}});
    CHECK(max_diff(single.matrix, Mat3(Vec3(0, 1, 1).asDiagonal())) < 1e-15);
    CHECK_FALSE(single.positive_definite);

    const auto box = inertia_from_points(cube());
    CHECK(max_diff(box.matrix, Mat3(16.0 * Mat3::Identity())) < 1e-15);
    CHECK(box.positive_definite);

    const auto collapsed = inertia_from_points(recenter({{{3.0, Vec3(1, 2, 3)}}}));
    CHECK(collapsed.matrix.isZero(0.0));
    CHECK_FALSE(collapsed.positive_definite);

    CHECK_THROWS_AS(inertia_from_points({}), InvalidInput);
    CHECK_THROWS_AS(inertia_from_points({{{-1.0, Vec3(1, 0, 0)}}}), InvalidInput);

    verify::Sampler s;
    MassDistribution cloud;
    for (int i = 0; i < 10; ++i) cloud.points.push_back({s.uniform(0.1, 2), s.vec(2)});
    const Mat3 j = inertia_from_points(cloud).matrix;
    CHECK(max_diff(j, Mat3(j.transpose())) < 1e-12);
}

TEST_CASE("recenter") {
    const auto centered = recenter(cube());
    for (std::size_t i = 0; i < 8; ++i) CHECK(centered.points[i].position == cube().points[i].position);

    const auto pair = recenter({{{1.0, Vec3::Zero()}, {1.0, Vec3(2, 0, 0)}}});
    CHECK(max_diff(pair.points[0].position, Vec3(-1, 0, 0)) < 1e-15);
    CHECK(max_diff(pair.points[1].position, Vec3(1, 0, 0)) < 1e-15);

    verify::Sampler s;
    MassDistribution cloud;
    for (int i = 0; i < 10; ++i) cloud.points.push_back({s.uniform(0.1, 2), s.vec(5)});
    const auto moved = recenter(cloud);
    Vec3 moment = Vec3::Zero();
    for (const auto& p : moved.points) moment += p.mass * p.position;
    CHECK(moment.norm() / moved.total_mass() < 1e-12);

    CHECK_THROWS_AS(recenter({}), InvalidInput);
}

TEST_CASE("spatial spin") {
    verify::Sampler s;
    const Mat3 j = Vec3(1, 2, 3).asDiagonal();
    const Vec3 w = s.vec();
    CHECK(max_diff(spin_spatial(state(w), j), Vec3(j * w)) < 1e-15);

    const Mat3 r = s.rotation();
    const auto spun = state(s.vec(), r);
    CHECK(max_diff(spin_spatial(spun, 2.5 * Mat3::Identity()), Vec3(2.5 * spun.poisson())) < 1e-14);

    const auto top = state(Vec3(1, 0, 0), rodrigues(Vec3::UnitZ(), std::numbers::pi / 2));
    CHECK(max_diff(top.poisson(), Vec3(0, 1, 0)) < 1e-15);
    CHECK(max_diff(spin_spatial(top, Vec3(1, 1, 2).asDiagonal()), Vec3(0, 1, 0)) < 1e-15);

    for (int i = 0; i < 50; ++i) {
        const auto st = state(s.vec(), s.rotation());
        CHECK(max_diff(spin_spatial(st, j), Vec3(st.rotation() * (j * st.omega_body))) < 1e-12);
    }
}

TEST_CASE("euler step: trivial motions") {
    const auto sphere = simulate_free(state(Vec3(0.3, -1, 2)), 2.0 * Mat3::Identity(), {1e-3, 1000, 100});
    for (const auto& s : sphere.samples) CHECK(max_diff(s.omega_body, Vec3(0.3, -1, 2)) < 1e-14);

    const auto axis = simulate_free(state(Vec3(0, 0, 3)), Vec3(1, 2, 3).asDiagonal(), {1e-3, 1000, 100});
    for (const auto& s : axis.samples) CHECK(max_diff(s.omega_body, Vec3(0, 0, 3)) < 1e-14);
    const auto& last = axis.samples.back();
    CHECK(max_diff(last.rotation(), rodrigues(Vec3::UnitZ(), 3.0 * last.t)) < 1e-10);
}

TEST_CASE("inertia must be positive definite and symmetric") {
    CHECK_THROWS_AS(euler_step(state(Vec3(1, 0, 0)), Vec3(0, 1, 1).asDiagonal(), 1e-3), SingularInertia);
    Mat3 skewed = Mat3::Identity();
    skewed(0, 1) = 0.5;
    CHECK_THROWS_AS(euler_step(state(Vec3(1, 0, 0)), skewed, 1e-3), SingularInertia);
    CHECK_THROWS_AS(simulate_free(state(Vec3(1, 0, 0)), -Mat3::Identity(), {1e-3, 10, 1}), SingularInertia);
}

TEST_CASE("symmetric top against the closed form") {
    const Mat3 r0 = rodrigues(Vec3(1, 2, 0), 0.4);
    const Vec3 w0(1, 0, 1);
    const auto run = simulate_free(state(w0, r0), Vec3(1, 1, 2).asDiagonal(), {1e-3, 10000, 50});
    const auto exact = symmetric_top_motion(1.0, 2.0, w0, r0);
    for (const auto& s : run.samples) {
        CHECK(std::abs(s.omega_body.z() - 1.0) < 1e-13);
        CHECK(max_diff(s.omega_body, Vec3(std::cos(s.t), std::sin(s.t), 1.0)) < 1e-10);
        CHECK(max_diff(s.rotation(), exact.rotation(s.t)) < 1e-9);
    }
}

TEST_CASE("Poinsot invariants and orientation constraint") {
    const Mat3 j = Vec3(1, 2, 3).asDiagonal();
    for (const Vec3& w0 : {Vec3(1, 1e-6, 0), Vec3(1e-6, 1, 0), Vec3(0.4, 1, -0.6)}) {
        const auto run = simulate_free(state(w0), j, {1e-3, 20000, 1000});
        CHECK(run.report.spin_component_drift < 1e-8);
        CHECK(run.report.kinetic.max_relative < 1e-10);
        CHECK(run.report.momentum_norm.max_relative < 1e-10);
        CHECK(run.report.max_quaternion_defect < 1e-12);
        CHECK(run.report.max_rotation_defect < 1e-10);
    }
}

TEST_CASE("material frame: uniform rotation") {
    const double w0 = 0.8;
    const Mat3 j = 3.0 * Mat3::Identity();
    const auto run = simulate_free(state(Vec3(0, 0, w0)), j, {1e-3, 2000, 100});
    const auto frame = RigidFrameMotion::uniform_rotation(Vec3(0, 0, w0));
    const auto report = material_from_spatial(frame, j, run.samples);
    CHECK(report.samples == static_cast<long>(run.samples.size()));
    CHECK(report.coriolis_vs_poisson < 1e-15);
    CHECK(report.omega_mismatch < 1e-15);
    CHECK(report.rotation_mismatch < 1e-12);
    CHECK(report.material_spin < 1e-14);
}

TEST_CASE("material frame: symmetric top run") {
    const Vec3 w0(0.7, -0.2, 1.3);
    const Mat3 j = Vec3(1.5, 1.5, 0.8).asDiagonal();
    const auto run = simulate_free(state(w0), j, {1e-3, 10000, 100});
    const auto frame = symmetric_top_motion(1.5, 0.8, w0);
    const auto report = material_from_spatial(frame, j, run.samples);
    CHECK(report.max_discrepancy() < 1e-8);
}

TEST_CASE("material frame: spherical body in arbitrary motion") {
    const Vec3 axis = Vec3(1, -1, 2).normalized();
    const RigidFrameMotion wobble(
        0.0, [axis](double t) -> Mat3 { return rodrigues(axis, std::sin(t)) * rodrigues(Vec3::UnitX(), t); },
        [](double) -> Vec3 { return Vec3::Zero(); });
    std::vector<RigidBodyState> samples;
    for (int i = 0; i < 10; ++i) {
        RigidBodyState s;
        s.t = 0.3 * i;
        s.orientation = Eigen::Quaterniond(wobble.rotation(s.t));
        s.omega_body = wobble.rotation(s.t).transpose() * wobble.poisson(s.t);
        samples.push_back(s);
    }
    const auto report = material_from_spatial(wobble, 2.0 * Mat3::Identity(), samples);
    CHECK(report.material_spin < 1e-8);
    CHECK(report.coriolis_vs_poisson < 1e-8);
}

TEST_CASE("a spherical body behaves as a spinning particle at rest") {
    const double c = 1.7;
    const Vec3 l0(0.2, -0.5, 0.9);
    const auto body = simulate_free(state(l0 / c), c * Mat3::Identity(), {1e-3, 5000, 500});
    const auto particle = simulate(ParticleState::from_motion(0.0, 2.0, Vec3::Zero(), Vec3::Zero(), l0),
                                   GalileanConnection::zero(), {1e-3, 5000, 500});
    REQUIRE(body.samples.size() == particle.samples.size());
    for (std::size_t i = 0; i < body.samples.size(); ++i) {
        CHECK(max_diff(spin_spatial(body.samples[i], c * Mat3::Identity()), particle.samples[i].spin()) < 1e-12);
    }
}
