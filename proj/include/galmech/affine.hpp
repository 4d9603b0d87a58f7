#pragma once

#include "galmech/linalg.hpp"

namespace galmech {

/// Components of a point of an n-dimensional affine space in a given affine frame.
struct AffinePoint {
    VecX components;

    Eigen::Index dimension() const { return components.size(); }
};

/// Affine function psi(V) = chi + phi . V.
struct AffineFunction {
    double chi = 0.0;
    VecX phi;

    Eigen::Index dimension() const { return phi.size(); }
    double operator()(const AffinePoint& v) const;
};

/// Change of affine frame a = (C, P) of the n-dimensional affine group.
///
/// C is the translation and P the regular linear part, both on the direct
/// side. Components transform with the inverse side (C', P^-1) where
/// C' = -P^-1 C. The homogeneous lift is [[1, 0], [C, P]].
class AffineTransformation {
public:
    static constexpr double kDeterminantThreshold = 1e-12;

    /// Throws InvalidInput if sizes disagree or |det P| <= kDeterminantThreshold.
    AffineTransformation(VecX translation, MatX linear);

    static AffineTransformation identity(Eigen::Index n);
    /// Inverse of lift(): reads C and P from a homogeneous matrix whose first
    /// row is (1, 0, ..., 0).
    static AffineTransformation from_lift(const MatX& lifted);

    Eigen::Index dimension() const { return translation_.size(); }
    const VecX& translation() const { return translation_; }
    const MatX& linear() const { return linear_; }
    const MatX& linear_inverse() const { return linear_inverse_; }
    /// C' = -P^-1 C.
    VecX inverse_translation() const { return -(linear_inverse_ * translation_); }

    /// Homogeneous (n+1)x(n+1) representation [[1, 0], [C, P]].
    MatX lift() const;
    /// [[1, 0], [C', P^-1]].
    MatX lift_inverse() const;

private:
    VecX translation_;
    MatX linear_;
    MatX linear_inverse_;
};

/// lift(compose(a, b)) == lift(a) * lift(b).
AffineTransformation compose(const AffineTransformation& a, const AffineTransformation& b);
AffineTransformation inverse(const AffineTransformation& a);

/// V' = C' + P^-1 V.
AffinePoint apply_affine(const AffineTransformation& a, const AffinePoint& v);

/// (chi', phi') = (chi, phi) * lift(a), so that psi'(V') == psi(V).
AffineFunction transform_affine_function(const AffineFunction& psi, const AffineTransformation& a);

} // namespace galmech
