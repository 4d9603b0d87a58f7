#pragma once

#include <array>

#include "galmech/affine.hpp"
#include "galmech/galilei.hpp"
#include "galmech/linalg.hpp"

namespace galmech {

/// Galilean torsor: mass m, linear momentum p, passage q, angular momentum l.
///
/// Matrix form (skew 5x5):
///
///     [  0   m   p^T    ]
///     [ -m   0  -q^T    ]
///     [ -p   q  -hat(l) ]
struct GalileanTorsor {
    double m = 0.0;
    Vec3 p = Vec3::Zero();
    Vec3 q = Vec3::Zero();
    Vec3 l = Vec3::Zero();

    Mat5 to_matrix() const;
    /// Throws InvalidInput unless the matrix is skew to kSkewTolerance.
    static GalileanTorsor from_matrix(const Mat5& mu);

    /// (m, p, q, l) flattened.
    Eigen::Matrix<double, 10, 1> components() const;
    static GalileanTorsor from_components(const Eigen::Matrix<double, 10, 1>& c);

    /// Torsor of a particle at rest at the origin with spin l0.
    static GalileanTorsor at_rest(double m, const Vec3& l0);
    /// Particle passing through r at time t with velocity v and spin l0:
    /// p = m v, l = l0 + m r x v, q = m (r - v t).
    static GalileanTorsor particle(double m, const Vec3& r, const Vec3& v, const Vec3& l0,
                                   double t = 0.0);

    static constexpr double kSkewTolerance = 1e-12;
};

struct TorsorInvariants {
    double m = 0.0;
    Vec3 spin = Vec3::Zero();
    double spin_norm = 0.0;
};

/// Component law: m' = m, p' = R^T (p - m u),
/// l' = R^T (l + u x q) + k' x p', q' = R^T (q - tau' (p - m u)) + m k'.
GalileanTorsor transform(const GalileanTorsor& mu, const GalileanTransformation& a);

/// Conjugation by the 5x5 lift: mu' = lift^-1 mu lift^-T. Functorial in the
/// order transform(mu, compose(a, b)) == transform(transform(mu, a), b).
Mat5 transform_matrix(const Mat5& mu, const GalileanTransformation& a);

/// l0 = l - q x p / m. Throws MasslessTorsor if m == 0.
Vec3 spin(const GalileanTorsor& mu);
TorsorInvariants invariants(const GalileanTorsor& mu);

/// mu(psi, psi_hat) = psi~ mu~ psi_hat~^T with psi~ = (chi, phi). Both
/// functions must be of dimension 4.
double evaluate(const GalileanTorsor& mu, const AffineFunction& psi, const AffineFunction& psi_hat);

/// True when |l0| <= 1e-12 max(1, |l|, |q||p|/m).
bool is_spinless(const GalileanTorsor& mu);

/// Element of the isotropy group of mu: rotation by theta about l0 (or about
/// axis_if_spinless when l0 vanishes), boost u = (p - R p) / m and inverse-side
/// translation k' = (q - R^T q + tau' p) / m.
GalileanTransformation stabilizer_element(const GalileanTorsor& mu, double theta, double tau_prime,
                                          const Vec3& axis_if_spinless = Vec3::UnitZ());

/// 2 when l0 != 0, 4 when l0 == 0 (massive torsors only).
int isotropy_dimension(const GalileanTorsor& mu);

/// The ten one-parameter subgroups of the Galilei group: clock change,
/// translations, boosts and rotations about the coordinate axes.
GalileanTransformation one_parameter_subgroup(int generator, double s);
/// Tangent of the one-parameter subgroup at the identity, as a 5x5 lift derivative.
Mat5 lie_algebra_generator(int generator);

/// 10x10 tangent map of the group action at mu: column i is d/ds of
/// transform(mu, one_parameter_subgroup(i, s)) at s = 0.
Eigen::Matrix<double, 10, 10> orbit_tangent(const GalileanTorsor& mu);

/// 10 - rank(orbit_tangent(mu)), rank with relative threshold rel_tol.
int isotropy_dimension_from_rank(const GalileanTorsor& mu, double rel_tol = 1e-9);

} // namespace galmech
