#include "galmech/verify/oracles.hpp"

namespace galmech::verify {

Mat4 fd_frame_jacobian(const RigidFrameMotion& f, const Event& x, double h) {
    Mat4 jac;
    const Vec4 x0 = x.coordinates();
    for (int j = 0; j < 4; ++j) {
        Vec4 plus = x0;
        Vec4 minus = x0;
        plus(j) += h;
        minus(j) -= h;
        jac.col(j) = (f.to_frame(Event::from_coordinates(plus)).coordinates() -
                      f.to_frame(Event::from_coordinates(minus)).coordinates()) /
                     (2.0 * h);
    }
    return jac;
}

namespace {

// P = dX/dX' at a frame event, from the Jacobian of the coordinate change.
Mat4 direct_jacobian(const RigidFrameMotion& f, const Event& frame_event) {
    const Event x = f.from_frame(frame_event);
    return jacobian(f, x.t, x.r).linear();
}

} // namespace

Mat4 fd_pullback_matrix(const GalileanConnection& conn, const RigidFrameMotion& f,
                        const Event& frame_event, const DisplacementForm& dx_frame, double h) {
    const Mat4 p = direct_jacobian(f, frame_event);
    const Vec4 dxf = dx_frame.column();
    const Vec4 x0 = frame_event.coordinates();
    const Mat4 dp = (direct_jacobian(f, Event::from_coordinates(x0 + h * dxf)) -
                     direct_jacobian(f, Event::from_coordinates(x0 - h * dxf))) /
                    (2.0 * h);
    const Vec4 dx = p * dxf;
    const Mat4 omega =
        connection_matrix(conn, f.from_frame(frame_event), {dx(0), dx.tail<3>()});
    return p.inverse() * (omega * p + dp);
}

Vec3 parabola(const Vec3& r0, const Vec3& v0, const Vec3& g, double t) {
    return r0 + v0 * t + 0.5 * t * t * g;
}

} // namespace galmech::verify
