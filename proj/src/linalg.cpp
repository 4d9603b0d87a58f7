#include "galmech/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace galmech {

Mat3 rodrigues(const Vec3& axis, double angle) {
    const double n = axis.norm();
    if (n == 0.0) return Mat3::Identity();
    const Mat3 k = hat(axis / n);
    return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
}

Mat3 rotation_from_vector(const Vec3& rotation_vector) {
    return rodrigues(rotation_vector, rotation_vector.norm());
}

Vec3 rotation_to_vector(const Mat3& r) {
    const Eigen::AngleAxisd aa(r);
    return aa.axis() * aa.angle();
}

Mat3 orthonormalize(const Mat3& r) {
    Eigen::JacobiSVD<Mat3> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 u = svd.matrixU();
    const Mat3 v = svd.matrixV();
    if ((u * v.transpose()).determinant() < 0.0) u.col(2) *= -1.0;
    return u * v.transpose();
}

double rotation_defect(const Mat3& r) {
    const double ortho = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
    return std::max(ortho, std::abs(r.determinant() - 1.0));
}

} // namespace galmech
