#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "galmech/affine.hpp"
#include "galmech/linalg.hpp"

namespace galmech {

/// Space-time event X = (t, r).
struct Event {
    double t = 0.0;
    Vec3 r = Vec3::Zero();

    Vec4 coordinates() const { return Vec4(t, r.x(), r.y(), r.z()); }
    static Event from_coordinates(const Vec4& x) { return {x(0), x.tail<3>()}; }
};

/// Element (tau, k, u, R) of the Galilei group, stored on the direct side:
/// C = (tau, k), P = [[1, 0], [u, R]].
///
/// Coordinates transform with the inverse side, X' = C' + P^-1 X, where
/// tau' = -tau and k' = R^T (u tau - k); the inverse element itself has
/// boost -R^T u and rotation R^T.
class GalileanTransformation {
public:
    static constexpr double kRotationTolerance = 1e-10;
    /// Compositions accumulated before R is re-projected onto SO(3).
    static constexpr int kReorthonormalizeAfter = 100;

    GalileanTransformation() = default;
    /// Throws InvalidInput unless R is a rotation to kRotationTolerance.
    GalileanTransformation(double tau, const Vec3& k, const Vec3& u, const Mat3& rotation);

    static GalileanTransformation identity() { return {}; }
    static GalileanTransformation clock_change(double tau);
    static GalileanTransformation translation(const Vec3& k);
    static GalileanTransformation boost(const Vec3& u);
    static GalileanTransformation rotation(const Mat3& r);
    /// Build from the inverse-side parameters (tau', k') with direct-side u and R.
    static GalileanTransformation from_inverse_side(double tau_prime, const Vec3& k_prime,
                                                    const Vec3& u, const Mat3& r);
    /// Reads a dimension-4 affine transformation; throws InvalidInput if it is not Galilean.
    static GalileanTransformation from_affine(const AffineTransformation& a);

    double tau() const { return tau_; }
    const Vec3& k() const { return k_; }
    const Vec3& u() const { return u_; }
    const Mat3& R() const { return rotation_; }
    /// tau' = -tau.
    double tau_prime() const { return -tau_; }
    /// k' = R^T (u tau - k).
    Vec3 k_prime() const { return rotation_.transpose() * (u_ * tau_ - k_); }
    int chain_length() const { return chain_; }

    /// P = [[1, 0], [u, R]] (4x4).
    Mat4 linear() const;
    /// P^-1 = [[1, 0], [-R^T u, R^T]].
    Mat4 linear_inverse() const;
    /// Homogeneous 5x5 lift [[1, 0], [C, P]].
    Mat5 lift5() const;
    /// [[1, 0], [C', P^-1]].
    Mat5 lift5_inverse() const;
    AffineTransformation to_affine() const;

private:
    friend GalileanTransformation compose(const GalileanTransformation&,
                                          const GalileanTransformation&);

    double tau_ = 0.0;
    Vec3 k_ = Vec3::Zero();
    Vec3 u_ = Vec3::Zero();
    Mat3 rotation_ = Mat3::Identity();
    int chain_ = 0;
};

/// Group law: lift5(compose(a, b)) == lift5(a) * lift5(b). Acting on
/// coordinates, act(compose(a, b), X) == act(b, act(a, X)).
GalileanTransformation compose(const GalileanTransformation& a, const GalileanTransformation& b);
GalileanTransformation inverse(const GalileanTransformation& a);

/// t' = t + tau', r' = R^T (r - u t) + k'.
Event act(const GalileanTransformation& a, const Event& x);

/// Time-dependent rigid motion of a frame generating the Galilean coordinate
/// change r' = R(t)^T (r - r0(t)), t' = t + tau0.
///
/// The Poisson vector w satisfies dR/dt = hat(w) R. Derivatives can be given
/// analytically; missing ones fall back to central differences with step
/// h = 1e-6 max(1, |t|) for first derivatives. Second derivatives of a
/// function without an analytic first derivative use the second central
/// difference with h2 = 1e-4 max(1, |t|).
class RigidFrameMotion {
public:
    using RotationFn = std::function<Mat3(double)>;
    using VectorFn = std::function<Vec3(double)>;

    struct Derivatives {
        VectorFn poisson;             ///< w(t)
        VectorFn poisson_rate;        ///< dw/dt
        VectorFn origin_velocity;     ///< dr0/dt
        VectorFn origin_acceleration; ///< d2r0/dt2
    };

    RigidFrameMotion(double clock_offset, RotationFn rotation, VectorFn origin,
                     Derivatives derivatives = {});

    static RigidFrameMotion stationary();
    /// R(t) = rodrigues(w, |w| t), r0 = 0.
    static RigidFrameMotion uniform_rotation(const Vec3& angular_velocity);
    /// R = I, r0(t) = r0 + v0 t + a t^2 / 2.
    static RigidFrameMotion uniform_acceleration(const Vec3& acceleration,
                                                 const Vec3& initial_velocity = Vec3::Zero(),
                                                 const Vec3& initial_origin = Vec3::Zero());

    double clock_offset() const { return clock_offset_; }
    Mat3 rotation(double t) const { return rotation_(t); }
    Vec3 origin(double t) const { return origin_(t); }
    Vec3 poisson(double t) const;
    Vec3 poisson_rate(double t) const;
    Vec3 origin_velocity(double t) const;
    Vec3 origin_acceleration(double t) const;

    /// Spatial event (t, r) to frame coordinates (t + tau0, R^T (r - r0)).
    Event to_frame(const Event& x) const;
    /// Frame coordinates (t', s) back to (t' - tau0, r0 + R s).
    Event from_frame(const Event& x_frame) const;

    /// The reverse coordinate change, parameterized by frame time.
    RigidFrameMotion inverse() const;

    static double step(double t) { return 1e-6 * std::max(1.0, std::abs(t)); }
    static double second_step(double t) { return 1e-4 * std::max(1.0, std::abs(t)); }

private:
    double clock_offset_;
    RotationFn rotation_;
    VectorFn origin_;
    Derivatives d_;
};

/// Velocity of transport u = w(t) x (r - r0(t)) + dr0/dt.
Vec3 transport_velocity(const RigidFrameMotion& f, double t, const Vec3& r);

/// Linear part of the coordinate change at (t, r): boost u from
/// transport_velocity and rotation R(t), so that linear_inverse() is dX'/dX.
GalileanTransformation jacobian(const RigidFrameMotion& f, double t, const Vec3& r);

} // namespace galmech
