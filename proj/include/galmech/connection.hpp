#pragma once

#include <functional>
#include <string>

#include "galmech/galilei.hpp"
#include "galmech/linalg.hpp"
#include "galmech/torsor.hpp"

namespace galmech {

/// Galilean connection given by a gravity field g(t, r) and a Coriolis field
/// Omega(t, r). Contracted with a displacement (dt, dr) it reads
///
///     omega = [ 0                          0             ]
///             [ hat(Omega) dr - g dt   hat(Omega) dt ]
class GalileanConnection {
public:
    using Field = std::function<Vec3(double, const Vec3&)>;
    using Potential = std::function<double(double, const Vec3&)>;

    enum class Kind { zero, uniform, newtonian, rotating_frame, pulled_back, custom };

    GalileanConnection(Field gravity, Field coriolis, Kind kind = Kind::custom,
                       Potential potential = {});

    static GalileanConnection zero();
    static GalileanConnection uniform(const Vec3& g);
    /// Fields seen from a frame spinning at constant angular velocity w about
    /// the origin: Omega = w, g = g0 - w x (w x r).
    static GalileanConnection rotating_frame(const Vec3& w, const Vec3& g0 = Vec3::Zero());

    Vec3 gravity(double t, const Vec3& r) const { return gravity_(t, r); }
    Vec3 coriolis(double t, const Vec3& r) const { return coriolis_(t, r); }
    Kind kind() const { return kind_; }
    /// Zero connection: both fields vanish identically.
    bool is_flat() const { return kind_ == Kind::zero; }
    /// Gravitational potential per unit mass, when the field derives from one.
    bool has_potential() const { return static_cast<bool>(potential_); }
    double potential(double t, const Vec3& r) const { return potential_(t, r); }

private:
    Field gravity_;
    Field coriolis_;
    Kind kind_;
    Potential potential_;
};

std::string to_string(GalileanConnection::Kind kind);

/// Infinitesimal space-time displacement dX = (dt, dr).
struct DisplacementForm {
    double dt = 0.0;
    Vec3 dr = Vec3::Zero();

    Vec4 column() const { return Vec4(dt, dr.x(), dr.y(), dr.z()); }
};

/// Affine part of the connection, omega_A = (d_A t, d_A r).
struct AffineConnectionPart {
    double dt = 0.0;
    Vec3 dr = Vec3::Zero();

    Vec4 column() const { return Vec4(dt, dr.x(), dr.y(), dr.z()); }
};

/// Angular block derivative (d l, d q) of a torsor.
struct AngularDerivative {
    Vec3 l = Vec3::Zero();
    Vec3 q = Vec3::Zero();
};

/// omega contracted with dX at the event.
Mat4 connection_matrix(const GalileanConnection& conn, const Event& x, const DisplacementForm& dx);

/// omega_A = dX - dV0 - omega V0 for the origin field V0 = (0, r); this
/// collapses to (dt, -Omega x r dt).
AffineConnectionPart affine_part(const GalileanConnection& conn, const Event& x,
                                 const DisplacementForm& dx);

/// T = (m, p) as a 4-column.
Vec4 linear_block(const GalileanTorsor& mu);
/// J = [[0, -q^T], [q, -hat(l)]].
Mat4 angular_block(const GalileanTorsor& mu);
/// Reads (l, q) back from an angular block.
AngularDerivative read_angular_block(const Mat4& j);

/// nabla T = dT + omega T.
Vec4 covariant_derivative_T(const GalileanConnection& conn, const Vec4& t_column,
                            const Vec4& dt_column, const Event& x, const DisplacementForm& dx);

/// nabla l = dl + Omega x l dt + q x (Omega x dr - g dt),
/// nabla q = dq + Omega x q dt.
AngularDerivative covariant_derivative_J(const GalileanConnection& conn, const GalileanTorsor& mu,
                                         const GalileanTorsor& dmu, const Event& x,
                                         const DisplacementForm& dx);

/// Matrix form nabla J = dJ + omega J + J omega^T.
Mat4 covariant_derivative_J_matrix(const GalileanConnection& conn, const Mat4& j, const Mat4& dj,
                                   const Event& x, const DisplacementForm& dx);

/// Affine covariant derivative of the angular block:
/// nabla~ l = nabla l + d_A r x p, nabla~ q = nabla q + m d_A r - d_A t p.
AngularDerivative affine_derivative_J(const GalileanConnection& conn, const GalileanTorsor& mu,
                                      const GalileanTorsor& dmu, const Event& x,
                                      const DisplacementForm& dx);

/// Matrix form nabla~ J = nabla J + omega_A T^T - T omega_A^T.
Mat4 affine_derivative_J_matrix(const GalileanConnection& conn, const Mat4& j, const Vec4& t_column,
                                const Mat4& dj, const Event& x, const DisplacementForm& dx);

/// Connection expressed in the frame coordinates (t', s') of f.
///
/// With t = t' - tau0, x = r0 + R s', y = x - r0, u = w x y + dr0/dt:
///
///     Omega' = R^T (Omega + w)
///     g'     = R^T (g - 2 Omega x u - d2r0/dt2 - dw/dt x y - w x (w x y))
///
/// For Omega = 0 this is Omega' = R^T w with the usual Euler and centrifugal
/// terms in g'.
GalileanConnection pullback(const GalileanConnection& conn, const RigidFrameMotion& f);

} // namespace galmech
