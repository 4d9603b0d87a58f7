#include "galmech/affine.hpp"

#include <cmath>
#include <string>

#include "galmech/errors.hpp"

namespace galmech {

namespace {

void require_dimension(Eigen::Index expected, Eigen::Index got, const char* what) {
    if (expected != got) {
        throw InvalidInput(std::string(what) + ": dimension mismatch (" + std::to_string(expected) +
                           " vs " + std::to_string(got) + ")");
    }
}

} // namespace

double AffineFunction::operator()(const AffinePoint& v) const {
    require_dimension(dimension(), v.dimension(), "affine function evaluation");
    return chi + phi.dot(v.components);
}

AffineTransformation::AffineTransformation(VecX translation, MatX linear)
    : translation_(std::move(translation)), linear_(std::move(linear)) {
    if (translation_.size() == 0) throw InvalidInput("affine transformation: empty dimension");
    if (linear_.rows() != translation_.size() || linear_.cols() != translation_.size()) {
        throw InvalidInput("affine transformation: linear part must be " +
                           std::to_string(translation_.size()) + "x" +
                           std::to_string(translation_.size()));
    }
    Eigen::FullPivLU<MatX> lu(linear_);
    if (!(std::abs(lu.determinant()) > kDeterminantThreshold)) {
        throw InvalidInput("affine transformation: singular linear part");
    }
    linear_inverse_ = lu.inverse();
}

AffineTransformation AffineTransformation::identity(Eigen::Index n) {
    return AffineTransformation(VecX::Zero(n), MatX::Identity(n, n));
}

AffineTransformation AffineTransformation::from_lift(const MatX& lifted) {
    if (lifted.rows() != lifted.cols() || lifted.rows() < 2) {
        throw InvalidInput("affine lift: expected a square matrix of size >= 2");
    }
    const Eigen::Index n = lifted.rows() - 1;
    if (lifted(0, 0) != 1.0 || !lifted.row(0).tail(n).isZero(0.0)) {
        throw InvalidInput("affine lift: first row must be (1, 0, ..., 0)");
    }
    return AffineTransformation(lifted.col(0).tail(n), lifted.bottomRightCorner(n, n));
}

MatX AffineTransformation::lift() const {
    const Eigen::Index n = dimension();
    MatX m = MatX::Zero(n + 1, n + 1);
    m(0, 0) = 1.0;
    m.col(0).tail(n) = translation_;
    m.bottomRightCorner(n, n) = linear_;
    return m;
}

MatX AffineTransformation::lift_inverse() const {
    const Eigen::Index n = dimension();
    MatX m = MatX::Zero(n + 1, n + 1);
    m(0, 0) = 1.0;
    m.col(0).tail(n) = inverse_translation();
    m.bottomRightCorner(n, n) = linear_inverse_;
    return m;
}

AffineTransformation compose(const AffineTransformation& a, const AffineTransformation& b) {
    require_dimension(a.dimension(), b.dimension(), "compose");
    return AffineTransformation(a.translation() + a.linear() * b.translation(),
                                a.linear() * b.linear());
}

AffineTransformation inverse(const AffineTransformation& a) {
    return AffineTransformation(a.inverse_translation(), a.linear_inverse());
}

AffinePoint apply_affine(const AffineTransformation& a, const AffinePoint& v) {
    require_dimension(a.dimension(), v.dimension(), "apply_affine");
    return {a.inverse_translation() + a.linear_inverse() * v.components};
}

AffineFunction transform_affine_function(const AffineFunction& psi, const AffineTransformation& a) {
    require_dimension(a.dimension(), psi.dimension(), "transform_affine_function");
    // Row-vector rule: chi' = chi + phi . C, phi' = phi P.
    return {psi.chi + psi.phi.dot(a.translation()), (psi.phi.transpose() * a.linear()).transpose()};
}

} // namespace galmech
