#include "galmech/galilei.hpp"

#include <utility>

#include "galmech/errors.hpp"

namespace galmech {

GalileanTransformation::GalileanTransformation(double tau, const Vec3& k, const Vec3& u,
                                               const Mat3& rotation)
    : tau_(tau), k_(k), u_(u), rotation_(rotation) {
    if (!(rotation_defect(rotation) <= kRotationTolerance)) {
        throw InvalidInput("galilean transformation: R is not a rotation");
    }
}

GalileanTransformation GalileanTransformation::clock_change(double tau) {
    return {tau, Vec3::Zero(), Vec3::Zero(), Mat3::Identity()};
}

GalileanTransformation GalileanTransformation::translation(const Vec3& k) {
    return {0.0, k, Vec3::Zero(), Mat3::Identity()};
}

GalileanTransformation GalileanTransformation::boost(const Vec3& u) {
    return {0.0, Vec3::Zero(), u, Mat3::Identity()};
}

GalileanTransformation GalileanTransformation::rotation(const Mat3& r) {
    return {0.0, Vec3::Zero(), Vec3::Zero(), r};
}

GalileanTransformation GalileanTransformation::from_inverse_side(double tau_prime,
                                                                 const Vec3& k_prime,
                                                                 const Vec3& u, const Mat3& r) {
    // k' = R^T (u tau - k)  =>  k = u tau - R k'.
    const double tau = -tau_prime;
    return {tau, u * tau - r * k_prime, u, r};
}

GalileanTransformation GalileanTransformation::from_affine(const AffineTransformation& a) {
    if (a.dimension() != 4) throw InvalidInput("galilean transformation: dimension must be 4");
    const MatX& p = a.linear();
    if (p(0, 0) != 1.0 || p(0, 1) != 0.0 || p(0, 2) != 0.0 || p(0, 3) != 0.0) {
        throw InvalidInput("galilean transformation: linear part must have first row (1, 0, 0, 0)");
    }
    return {a.translation()(0), a.translation().tail<3>(), p.col(0).tail<3>(),
            p.bottomRightCorner<3, 3>()};
}

Mat4 GalileanTransformation::linear() const {
    Mat4 p = Mat4::Zero();
    p(0, 0) = 1.0;
    p.block<3, 1>(1, 0) = u_;
    p.block<3, 3>(1, 1) = rotation_;
    return p;
}

Mat4 GalileanTransformation::linear_inverse() const {
    Mat4 p = Mat4::Zero();
    p(0, 0) = 1.0;
    p.block<3, 1>(1, 0) = -(rotation_.transpose() * u_);
    p.block<3, 3>(1, 1) = rotation_.transpose();
    return p;
}

Mat5 GalileanTransformation::lift5() const {
    Mat5 m = Mat5::Zero();
    m(0, 0) = 1.0;
    m(1, 0) = tau_;
    m.block<3, 1>(2, 0) = k_;
    m.block<4, 4>(1, 1) = linear();
    return m;
}

Mat5 GalileanTransformation::lift5_inverse() const {
    Mat5 m = Mat5::Zero();
    m(0, 0) = 1.0;
    m(1, 0) = tau_prime();
    m.block<3, 1>(2, 0) = k_prime();
    m.block<4, 4>(1, 1) = linear_inverse();
    return m;
}

AffineTransformation GalileanTransformation::to_affine() const {
    return AffineTransformation(Vec4(tau_, k_.x(), k_.y(), k_.z()), linear());
}

GalileanTransformation compose(const GalileanTransformation& a, const GalileanTransformation& b) {
    GalileanTransformation c;
    c.tau_ = a.tau_ + b.tau_;
    c.k_ = a.k_ + a.u_ * b.tau_ + a.rotation_ * b.k_;
    c.u_ = a.u_ + a.rotation_ * b.u_;
    c.rotation_ = a.rotation_ * b.rotation_;
    c.chain_ = a.chain_ + b.chain_ + 1;
    if (c.chain_ > GalileanTransformation::kReorthonormalizeAfter) {
        c.rotation_ = orthonormalize(c.rotation_);
        c.chain_ = 0;
    }
    return c;
}

GalileanTransformation inverse(const GalileanTransformation& a) {
    const Mat3 rt = a.R().transpose();
    return {a.tau_prime(), a.k_prime(), -(rt * a.u()), rt};
}

Event act(const GalileanTransformation& a, const Event& x) {
    return {x.t + a.tau_prime(), a.R().transpose() * (x.r - a.u() * x.t) + a.k_prime()};
}

// ---------------------------------------------------------------------------

RigidFrameMotion::RigidFrameMotion(double clock_offset, RotationFn rotation, VectorFn origin,
                                   Derivatives derivatives)
    : clock_offset_(clock_offset),
      rotation_(std::move(rotation)),
      origin_(std::move(origin)),
      d_(std::move(derivatives)) {
    if (!rotation_ || !origin_) throw InvalidInput("frame motion: rotation and origin are required");
}

RigidFrameMotion RigidFrameMotion::stationary() {
    Derivatives d;
    d.poisson = [](double) -> Vec3 { return Vec3::Zero(); };
    d.poisson_rate = d.poisson;
    d.origin_velocity = d.poisson;
    d.origin_acceleration = d.poisson;
    return RigidFrameMotion(
        0.0, [](double) -> Mat3 { return Mat3::Identity(); },
        [](double) -> Vec3 { return Vec3::Zero(); }, d);
}

RigidFrameMotion RigidFrameMotion::uniform_rotation(const Vec3& w) {
    Derivatives d;
    d.poisson = [w](double) -> Vec3 { return w; };
    d.poisson_rate = [](double) -> Vec3 { return Vec3::Zero(); };
    d.origin_velocity = d.poisson_rate;
    d.origin_acceleration = d.poisson_rate;
    return RigidFrameMotion(
        0.0, [w](double t) -> Mat3 { return rodrigues(w, w.norm() * t); },
        [](double) -> Vec3 { return Vec3::Zero(); }, d);
}

RigidFrameMotion RigidFrameMotion::uniform_acceleration(const Vec3& a, const Vec3& v0,
                                                        const Vec3& x0) {
    Derivatives d;
    d.poisson = [](double) -> Vec3 { return Vec3::Zero(); };
    d.poisson_rate = d.poisson;
    d.origin_velocity = [a, v0](double t) -> Vec3 { return v0 + a * t; };
    d.origin_acceleration = [a](double) -> Vec3 { return a; };
    return RigidFrameMotion(
        0.0, [](double) -> Mat3 { return Mat3::Identity(); },
        [a, v0, x0](double t) -> Vec3 { return x0 + v0 * t + 0.5 * t * t * a; }, d);
}

Vec3 RigidFrameMotion::poisson(double t) const {
    if (d_.poisson) return d_.poisson(t);
    const double h = step(t);
    const Mat3 rdot = (rotation_(t + h) - rotation_(t - h)) / (2.0 * h);
    return vee(rdot * rotation_(t).transpose());
}

Vec3 RigidFrameMotion::poisson_rate(double t) const {
    if (d_.poisson_rate) return d_.poisson_rate(t);
    if (d_.poisson) {
        const double h = step(t);
        return (d_.poisson(t + h) - d_.poisson(t - h)) / (2.0 * h);
    }
    // d/dt (dR R^T) = d2R R^T + dR dR^T; the second term is symmetric.
    const double h = second_step(t);
    const Mat3 rddot = (rotation_(t + h) - 2.0 * rotation_(t) + rotation_(t - h)) / (h * h);
    return vee(rddot * rotation_(t).transpose());
}

Vec3 RigidFrameMotion::origin_velocity(double t) const {
    if (d_.origin_velocity) return d_.origin_velocity(t);
    const double h = step(t);
    return (origin_(t + h) - origin_(t - h)) / (2.0 * h);
}

Vec3 RigidFrameMotion::origin_acceleration(double t) const {
    if (d_.origin_acceleration) return d_.origin_acceleration(t);
    if (d_.origin_velocity) {
        const double h = step(t);
        return (d_.origin_velocity(t + h) - d_.origin_velocity(t - h)) / (2.0 * h);
    }
    const double h = second_step(t);
    return (origin_(t + h) - 2.0 * origin_(t) + origin_(t - h)) / (h * h);
}

Event RigidFrameMotion::to_frame(const Event& x) const {
    return {x.t + clock_offset_, rotation_(x.t).transpose() * (x.r - origin_(x.t))};
}

Event RigidFrameMotion::from_frame(const Event& x_frame) const {
    const double t = x_frame.t - clock_offset_;
    return {t, origin_(t) + rotation_(t) * x_frame.r};
}

RigidFrameMotion RigidFrameMotion::inverse() const {
    // Inverse change: x = Rt(t')^T (s - r0t(t')) with Rt = R^T, r0t = -R^T r0,
    // evaluated at t = t' - tau0.
    const RigidFrameMotion self = *this;
    const double tau0 = clock_offset_;
    Derivatives d;
    d.poisson = [self, tau0](double tp) -> Vec3 {
        const double t = tp - tau0;
        return -(self.rotation(t).transpose() * self.poisson(t));
    };
    d.poisson_rate = [self, tau0](double tp) -> Vec3 {
        const double t = tp - tau0;
        return -(self.rotation(t).transpose() * self.poisson_rate(t));
    };
    d.origin_velocity = [self, tau0](double tp) -> Vec3 {
        const double t = tp - tau0;
        return self.rotation(t).transpose() *
               (self.poisson(t).cross(self.origin(t)) - self.origin_velocity(t));
    };
    d.origin_acceleration = [self, tau0](double tp) -> Vec3 {
        const double t = tp - tau0;
        const Vec3 w = self.poisson(t);
        const Vec3 r0 = self.origin(t);
        const Vec3 v0 = self.origin_velocity(t);
        return self.rotation(t).transpose() * (self.poisson_rate(t).cross(r0) + 2.0 * w.cross(v0) -
                                               w.cross(w.cross(r0)) - self.origin_acceleration(t));
    };
    return RigidFrameMotion(
        -tau0, [self, tau0](double tp) -> Mat3 { return self.rotation(tp - tau0).transpose(); },
        [self, tau0](double tp) -> Vec3 {
            const double t = tp - tau0;
            return -(self.rotation(t).transpose() * self.origin(t));
        },
        d);
}

Vec3 transport_velocity(const RigidFrameMotion& f, double t, const Vec3& r) {
    return f.poisson(t).cross(r - f.origin(t)) + f.origin_velocity(t);
}

GalileanTransformation jacobian(const RigidFrameMotion& f, double t, const Vec3& r) {
    return {0.0, Vec3::Zero(), transport_velocity(f, t, r), f.rotation(t)};
}

} // namespace galmech
