#pragma once

#include "galmech/connection.hpp"
#include "galmech/galilei.hpp"

namespace galmech::verify {

/// Central-difference Jacobian dX'/dX of the coordinate change of f at x.
Mat4 fd_frame_jacobian(const RigidFrameMotion& f, const Event& x, double h = 1e-6);

/// omega' = P^-1 (omega P + dP) contracted with a frame displacement dX', with
/// P = dX/dX' at the frame event and dP its central difference along dX'.
Mat4 fd_pullback_matrix(const GalileanConnection& conn, const RigidFrameMotion& f,
                        const Event& frame_event, const DisplacementForm& dx_frame,
                        double h = 1e-6);

/// r0 + v0 t + g t^2 / 2.
Vec3 parabola(const Vec3& r0, const Vec3& v0, const Vec3& g, double t);

/// Fourth-order central first derivative from samples at t - 2h .. t + 2h.
template <typename T>
T five_point_derivative(const T& fm2, const T& fm1, const T& fp1, const T& fp2, double h) {
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
}

} // namespace galmech::verify
