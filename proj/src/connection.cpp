#include "galmech/connection.hpp"

#include <utility>

#include "galmech/errors.hpp"

namespace galmech {

GalileanConnection::GalileanConnection(Field gravity, Field coriolis, Kind kind,
                                       Potential potential)
    : gravity_(std::move(gravity)),
      coriolis_(std::move(coriolis)),
      kind_(kind),
      potential_(std::move(potential)) {
    if (!gravity_ || !coriolis_) throw InvalidInput("connection: both fields are required");
}

GalileanConnection GalileanConnection::zero() {
    const Field none = [](double, const Vec3&) -> Vec3 { return Vec3::Zero(); };
    return {none, none, Kind::zero, [](double, const Vec3&) { return 0.0; }};
}

GalileanConnection GalileanConnection::uniform(const Vec3& g) {
    return {[g](double, const Vec3&) -> Vec3 { return g; },
            [](double, const Vec3&) -> Vec3 { return Vec3::Zero(); }, Kind::uniform,
            [g](double, const Vec3& r) { return -g.dot(r); }};
}

GalileanConnection GalileanConnection::rotating_frame(const Vec3& w, const Vec3& g0) {
    return {[w, g0](double, const Vec3& r) -> Vec3 { return g0 - w.cross(w.cross(r)); },
            [w](double, const Vec3&) -> Vec3 { return w; }, Kind::rotating_frame};
}

std::string to_string(GalileanConnection::Kind kind) {
    switch (kind) {
    case GalileanConnection::Kind::zero: return "zero";
    case GalileanConnection::Kind::uniform: return "uniform";
    case GalileanConnection::Kind::newtonian: return "newtonian";
    case GalileanConnection::Kind::rotating_frame: return "rotating_frame";
    case GalileanConnection::Kind::pulled_back: return "pulled_back";
    case GalileanConnection::Kind::custom: return "custom";
    }
    return "unknown";
}

Mat4 connection_matrix(const GalileanConnection& conn, const Event& x, const DisplacementForm& dx) {
    const Vec3 omega = conn.coriolis(x.t, x.r);
    const Vec3 g = conn.gravity(x.t, x.r);
    Mat4 w = Mat4::Zero();
    w.block<3, 1>(1, 0) = omega.cross(dx.dr) - g * dx.dt;
    w.block<3, 3>(1, 1) = hat(omega) * dx.dt;
    return w;
}

AffineConnectionPart affine_part(const GalileanConnection& conn, const Event& x,
                                 const DisplacementForm& dx) {
    return {dx.dt, -conn.coriolis(x.t, x.r).cross(x.r) * dx.dt};
}

Vec4 linear_block(const GalileanTorsor& mu) {
    return Vec4(mu.m, mu.p.x(), mu.p.y(), mu.p.z());
}

Mat4 angular_block(const GalileanTorsor& mu) {
    Mat4 j = Mat4::Zero();
    j.block<1, 3>(0, 1) = -mu.q.transpose();
    j.block<3, 1>(1, 0) = mu.q;
    j.block<3, 3>(1, 1) = -hat(mu.l);
    return j;
}

AngularDerivative read_angular_block(const Mat4& j) {
    return {-vee(j.block<3, 3>(1, 1)), j.block<3, 1>(1, 0)};
}

Vec4 covariant_derivative_T(const GalileanConnection& conn, const Vec4& t_column,
                            const Vec4& dt_column, const Event& x, const DisplacementForm& dx) {
    return dt_column + connection_matrix(conn, x, dx) * t_column;
}

AngularDerivative covariant_derivative_J(const GalileanConnection& conn, const GalileanTorsor& mu,
                                         const GalileanTorsor& dmu, const Event& x,
                                         const DisplacementForm& dx) {
    const Vec3 omega = conn.coriolis(x.t, x.r);
    const Vec3 g = conn.gravity(x.t, x.r);
    return {dmu.l + omega.cross(mu.l) * dx.dt + mu.q.cross(omega.cross(dx.dr) - g * dx.dt),
            dmu.q + omega.cross(mu.q) * dx.dt};
}

Mat4 covariant_derivative_J_matrix(const GalileanConnection& conn, const Mat4& j, const Mat4& dj,
                                   const Event& x, const DisplacementForm& dx) {
    const Mat4 w = connection_matrix(conn, x, dx);
    return dj + w * j + j * w.transpose();
}

AngularDerivative affine_derivative_J(const GalileanConnection& conn, const GalileanTorsor& mu,
                                      const GalileanTorsor& dmu, const Event& x,
                                      const DisplacementForm& dx) {
    const AngularDerivative linear = covariant_derivative_J(conn, mu, dmu, x, dx);
    const AffineConnectionPart a = affine_part(conn, x, dx);
    return {linear.l + a.dr.cross(mu.p), linear.q + mu.m * a.dr - a.dt * mu.p};
}

Mat4 affine_derivative_J_matrix(const GalileanConnection& conn, const Mat4& j, const Vec4& t_column,
                                const Mat4& dj, const Event& x, const DisplacementForm& dx) {
    const Vec4 a = affine_part(conn, x, dx).column();
    return covariant_derivative_J_matrix(conn, j, dj, x, dx) + a * t_column.transpose() -
           t_column * a.transpose();
}

GalileanConnection pullback(const GalileanConnection& conn, const RigidFrameMotion& f) {
    auto gravity = [conn, f](double t_frame, const Vec3& s) -> Vec3 {
        const double t = t_frame - f.clock_offset();
        const Mat3 r = f.rotation(t);
        const Vec3 y = r * s;
        const Vec3 x = f.origin(t) + y;
        const Vec3 w = f.poisson(t);
        const Vec3 u = w.cross(y) + f.origin_velocity(t);
        const Vec3 omega = conn.coriolis(t, x);
        return r.transpose() * (conn.gravity(t, x) - 2.0 * omega.cross(u) -
                                f.origin_acceleration(t) - f.poisson_rate(t).cross(y) -
                                w.cross(w.cross(y)));
    };
    auto coriolis = [conn, f](double t_frame, const Vec3& s) -> Vec3 {
        const double t = t_frame - f.clock_offset();
        const Mat3 r = f.rotation(t);
        const Vec3 x = f.origin(t) + r * s;
        return r.transpose() * (conn.coriolis(t, x) + f.poisson(t));
    };
    return {gravity, coriolis, GalileanConnection::Kind::pulled_back};
}

} // namespace galmech
