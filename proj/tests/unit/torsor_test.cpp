#include <doctest.h>

#include <numbers>

#include "galmech/connection.hpp"
#include "galmech/errors.hpp"
#include "galmech/torsor.hpp"
#include "galmech/verify/sampler.hpp"
#include "support.hpp"

using namespace galmech;
using galmech::test::max_diff;

TEST_CASE("to_matrix layout and round trip") {
    CHECK(GalileanTorsor{}.to_matrix() == Mat5::Zero());

    const GalileanTorsor mu{1.0, Vec3(1, 0, 0), Vec3::Zero(), Vec3::Zero()};
    const Mat5 m = mu.to_matrix();
    CHECK(m(0, 1) == 1.0);
    CHECK(m(0, 2) == 1.0);
    CHECK(m(1, 0) == -1.0);
    CHECK(m(2, 0) == -1.0);
    CHECK((m + m.transpose()).isZero(0.0));

    verify::Sampler s;
    for (int i = 0; i < 100; ++i) {
        const GalileanTorsor t = s.torsor(3.0);
        CHECK(GalileanTorsor::from_matrix(t.to_matrix()).components() == t.components());
        CHECK(GalileanTorsor::from_components(t.components()).components() == t.components());
    }
}

TEST_CASE("from_matrix rejects non-skew input") {
    Mat5 m = GalileanTorsor{1.0, Vec3(1, 2, 3), Vec3(4, 5, 6), Vec3(7, 8, 9)}.to_matrix();
    m(3, 1) += 1e-9;
    CHECK_THROWS_AS(GalileanTorsor::from_matrix(m), InvalidInput);
    Mat5 d = Mat5::Zero();
    d(2, 2) = 1.0;
    CHECK_THROWS_AS(GalileanTorsor::from_matrix(d), InvalidInput);
    CHECK_THROWS_AS(transform_matrix(d, GalileanTransformation::identity()), InvalidInput);
}

TEST_CASE("transform: identity, boost, translation") {
    verify::Sampler s;
    const GalileanTorsor any = s.torsor();
    CHECK(transform(any, GalileanTransformation::identity()).components() == any.components());

    const GalileanTorsor mu{2.0, Vec3(1, 0, 0), Vec3::Zero(), Vec3(0, 0, 3)};
    const auto b = transform(mu, GalileanTransformation::boost(Vec3(0, 1, 0)));
    CHECK(b.m == 2.0);
    CHECK(max_diff(b.p, Vec3(1, -2, 0)) < 1e-15);
    CHECK(b.q.norm() < 1e-15);
    CHECK(max_diff(b.l, Vec3(0, 0, 3)) < 1e-15);

    const GalileanTorsor nu{1.0, Vec3(0, 0, 1), Vec3::Zero(), Vec3::Zero()};
    const auto shift = GalileanTransformation::from_inverse_side(0.0, Vec3(1, 0, 0), Vec3::Zero(),
                                                                 Mat3::Identity());
    const auto t = transform(nu, shift);
    CHECK(max_diff(t.l, Vec3(0, -1, 0)) < 1e-15);
    CHECK(max_diff(t.p, nu.p) < 1e-15);
    CHECK(max_diff(t.q, Vec3(1, 0, 0)) < 1e-15);
}

TEST_CASE("transform_matrix: identity and the translation law on J") {
    verify::Sampler s;
    const GalileanTorsor mu = s.torsor();
    CHECK(max_diff(transform_matrix(mu.to_matrix(), GalileanTransformation::identity()),
                   mu.to_matrix()) < 1e-15);

    for (int i = 0; i < 50; ++i) {
        const GalileanTorsor nu = s.torsor();
        const auto a = GalileanTransformation::from_inverse_side(s.uniform(-1, 1), s.vec(),
                                                                 Vec3::Zero(), Mat3::Identity());
        const Mat5 out = transform_matrix(nu.to_matrix(), a);
        const Vec4 c = a.lift5_inverse().col(0).tail<4>();
        const Vec4 t = linear_block(nu);
        const Mat4 expected = angular_block(nu) + c * t.transpose() - t * c.transpose();
        CHECK(max_diff(Mat4(out.bottomRightCorner<4, 4>()), expected) < 1e-12);
    }
}

TEST_CASE("functoriality follows the 5x5 representation") {
    verify::Sampler s;
    for (int i = 0; i < 200; ++i) {
        const GalileanTorsor mu = s.torsor();
        const auto a = s.galilean();
        const auto b = s.galilean();
        const auto lhs = transform(mu, compose(a, b)).components();
        const auto rhs = transform(transform(mu, a), b).components();
        CHECK(max_diff(lhs, rhs) < 1e-11);
    }
}

TEST_CASE("spin examples") {
    const GalileanTorsor rest{1.5, Vec3(1, 2, 3), Vec3::Zero(), Vec3(4, 5, 6)};
    CHECK(spin(rest) == rest.l);

    const GalileanTorsor mu{1.0, Vec3(0, 1, 0), Vec3(1, 0, 0), Vec3(0, 0, 5)};
    CHECK(max_diff(spin(mu), Vec3(0, 0, 4)) < 1e-15);

    const auto particle =
        GalileanTorsor::particle(2.0, Vec3(0, 1, 0), Vec3(1, 0, 0), Vec3(0, 0, 1), 0.0);
    CHECK(max_diff(spin(particle), Vec3(0, 0, 1)) < 1e-15);

    // The spin does not depend on where along its line the particle is sampled.
    const auto later = GalileanTorsor::particle(2.0, Vec3(3, 1, 0), Vec3(1, 0, 0), Vec3(0, 0, 1), 3.0);
    CHECK(max_diff(later.components(), particle.components()) < 1e-14);
}

TEST_CASE("massless torsors are rejected by spin operations") {
    const GalileanTorsor mu{0.0, Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
    CHECK_NOTHROW(mu.to_matrix());
    CHECK_NOTHROW(transform(mu, GalileanTransformation::boost(Vec3(1, 1, 1))));
    CHECK_THROWS_AS(spin(mu), MasslessTorsor);
    CHECK_THROWS_AS(invariants(mu), MasslessTorsor);
    CHECK_THROWS_AS(stabilizer_element(mu, 0.1, 0.0), MasslessTorsor);
    CHECK_THROWS_AS(isotropy_dimension(mu), MasslessTorsor);
    CHECK_THROWS_AS(is_spinless(mu), MasslessTorsor);
}

TEST_CASE("invariants of a rest torsor") {
    const auto inv = invariants(GalileanTorsor::at_rest(3.0, Vec3(0, 0, 4)));
    CHECK(inv.m == 3.0);
    CHECK(inv.spin_norm == 4.0);
    CHECK(inv.spin == Vec3(0, 0, 4));
}

TEST_CASE("evaluate: skew, bilinear, direct example, frame independence") {
    const GalileanTorsor unit{1.0, Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
    const AffineFunction one{1.0, Vec4::Zero()};
    const AffineFunction dt{0.0, Vec4(1, 0, 0, 0)};
    CHECK(evaluate(unit, one, dt) == 1.0);

    verify::Sampler s;
    for (int i = 0; i < 100; ++i) {
        const GalileanTorsor mu = s.torsor();
        const AffineFunction psi = s.affine_function(4);
        const AffineFunction chi = s.affine_function(4);
        const AffineFunction eta = s.affine_function(4);
        CHECK(std::abs(evaluate(mu, psi, psi)) < 1e-14);
        CHECK(std::abs(evaluate(mu, psi, chi) + evaluate(mu, chi, psi)) < 1e-13);

        const double alpha = s.uniform(-2, 2);
        const AffineFunction mix{alpha * psi.chi + eta.chi, alpha * psi.phi + eta.phi};
        CHECK(std::abs(evaluate(mu, mix, chi) - (alpha * evaluate(mu, psi, chi) + evaluate(mu, eta, chi))) <
              1e-12);

        const auto a = s.galilean();
        const AffineTransformation aff = a.to_affine();
        const double moved = evaluate(transform(mu, a), transform_affine_function(psi, aff),
                                      transform_affine_function(chi, aff));
        CHECK(std::abs(moved - evaluate(mu, psi, chi)) < 1e-10);
    }
    CHECK_THROWS_AS(evaluate(unit, AffineFunction{1.0, Eigen::Vector3d::Zero()}, dt), InvalidInput);
}

TEST_CASE("stabilizer elements") {
    const auto rest = GalileanTorsor::at_rest(2.0, Vec3(0, 1, 0));
    const auto e = stabilizer_element(rest, 0.0, 0.0);
    CHECK(max_diff(e.lift5(), Mat5::Identity()) < 1e-15);

    const GalileanTorsor mu{1.0, Vec3(1, 0, 0), Vec3::Zero(), Vec3(0, 0, 2)};
    const auto a = stabilizer_element(mu, std::numbers::pi / 2, 0.0);
    CHECK(max_diff(transform(mu, a).components(), mu.components()) < 1e-12);

    verify::Sampler s;
    for (int i = 0; i < 100; ++i) {
        const GalileanTorsor nu = s.spinning_torsor();
        const double theta = s.uniform(-4, 4);
        const double tp = s.uniform(-3, 3);
        const auto b = stabilizer_element(nu, theta, tp);
        CHECK(max_diff(transform(nu, b).components(), nu.components()) < 1e-10);
        CHECK(std::abs(b.tau_prime() - tp) < 1e-15);
        // Rotation axis is the spin direction.
        CHECK(max_diff(b.R() * spin(nu), spin(nu)) < 1e-12);
    }
}

TEST_CASE("isotropy dimension") {
    CHECK(isotropy_dimension(GalileanTorsor::at_rest(1.0, Vec3(0, 0, 4))) == 2);
    CHECK(isotropy_dimension(GalileanTorsor::at_rest(1.0, Vec3::Zero())) == 4);

    // Constructed with q x p = m l exactly.
    const Vec3 q(1, 2, 0), p(0, 1, 3);
    const GalileanTorsor spinless{1.0, p, q, q.cross(p)};
    CHECK(is_spinless(spinless));
    CHECK(isotropy_dimension(spinless) == 4);

    verify::Sampler s;
    for (int i = 0; i < 50; ++i) {
        const auto a = s.spinning_torsor();
        const auto b = s.spinless_torsor();
        CHECK(isotropy_dimension_from_rank(a) == 2);
        CHECK(isotropy_dimension_from_rank(b) == 4);
        // Orbit dimension counts the independent invariants: 10 - 8 = 2, 10 - 6 = 4.
        CHECK(isotropy_dimension(transform(a, s.galilean())) == 2);
    }
}

TEST_CASE("orbit tangent matches finite differences of the action") {
    verify::Sampler s;
    const GalileanTorsor mu = s.torsor();
    const auto tangent = orbit_tangent(mu);
    for (int g = 0; g < 10; ++g) {
        const double h = 1e-6;
        const auto fd = (transform(mu, one_parameter_subgroup(g, h)).components() -
                         transform(mu, one_parameter_subgroup(g, -h)).components()) /
                        (2 * h);
        CHECK(max_diff(tangent.col(g), fd) < 1e-8);
    }
}
