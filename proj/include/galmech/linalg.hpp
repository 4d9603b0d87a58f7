#pragma once

#include <Eigen/Dense>

namespace galmech {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

/// Cross-product matrix: hat(v) * w == v.cross(w).
inline Mat3 hat(const Vec3& v) {
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
         -v.y(), v.x(), 0.0;
    return m;
}

/// Inverse of hat() applied to the skew part of m.
inline Vec3 vee(const Mat3& m) {
    return Vec3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)) * 0.5;
}

/// Rodrigues' formula. A zero axis yields the identity.
Mat3 rodrigues(const Vec3& axis, double angle);

/// Rotation by |v| about v / |v|.
Mat3 rotation_from_vector(const Vec3& rotation_vector);

/// Rotation vector (axis * angle) of a rotation matrix, angle in [0, pi].
Vec3 rotation_to_vector(const Mat3& r);

/// Nearest rotation in the Frobenius norm (polar factor via SVD).
Mat3 orthonormalize(const Mat3& r);

/// max |R^T R - I| and |det R - 1|.
double rotation_defect(const Mat3& r);

} // namespace galmech
