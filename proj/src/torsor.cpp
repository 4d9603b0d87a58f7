#include "galmech/torsor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "galmech/errors.hpp"

namespace galmech {

namespace {

void require_massive(const GalileanTorsor& mu) {
    if (mu.m == 0.0) throw MasslessTorsor();
}

void require_skew(const Mat5& mu) {
    const double defect = (mu + mu.transpose()).cwiseAbs().maxCoeff();
    if (!(defect <= GalileanTorsor::kSkewTolerance)) {
        throw InvalidInput("torsor matrix is not skew-symmetric (defect " + std::to_string(defect) +
                           ")");
    }
}

GalileanTorsor read_components(const Mat5& mu) {
    GalileanTorsor t;
    t.m = mu(0, 1);
    t.p = mu.block<1, 3>(0, 2).transpose();
    t.q = mu.block<3, 1>(2, 1);
    t.l = -vee(mu.block<3, 3>(2, 2));
    return t;
}

} // namespace

Mat5 GalileanTorsor::to_matrix() const {
    Mat5 mu = Mat5::Zero();
    mu(0, 1) = m;
    mu(1, 0) = -m;
    mu.block<1, 3>(0, 2) = p.transpose();
    mu.block<3, 1>(2, 0) = -p;
    mu.block<1, 3>(1, 2) = -q.transpose();
    mu.block<3, 1>(2, 1) = q;
    mu.block<3, 3>(2, 2) = -hat(l);
    return mu;
}

GalileanTorsor GalileanTorsor::from_matrix(const Mat5& mu) {
    require_skew(mu);
    return read_components(mu);
}

Eigen::Matrix<double, 10, 1> GalileanTorsor::components() const {
    Eigen::Matrix<double, 10, 1> c;
    c << m, p, q, l;
    return c;
}

GalileanTorsor GalileanTorsor::from_components(const Eigen::Matrix<double, 10, 1>& c) {
    return {c(0), c.segment<3>(1), c.segment<3>(4), c.segment<3>(7)};
}

GalileanTorsor GalileanTorsor::at_rest(double m, const Vec3& l0) {
    return {m, Vec3::Zero(), Vec3::Zero(), l0};
}

GalileanTorsor GalileanTorsor::particle(double m, const Vec3& r, const Vec3& v, const Vec3& l0,
                                        double t) {
    return {m, m * v, m * (r - v * t), l0 + m * r.cross(v)};
}

GalileanTorsor transform(const GalileanTorsor& mu, const GalileanTransformation& a) {
    const Mat3 rt = a.R().transpose();
    const Vec3 relative = mu.p - mu.m * a.u();
    const Vec3 k_prime = a.k_prime();
    GalileanTorsor out;
    out.m = mu.m;
    out.p = rt * relative;
    out.l = rt * (mu.l + a.u().cross(mu.q)) + k_prime.cross(out.p);
    out.q = rt * (mu.q - a.tau_prime() * relative) + mu.m * k_prime;
    return out;
}

Mat5 transform_matrix(const Mat5& mu, const GalileanTransformation& a) {
    require_skew(mu);
    const Mat5 back = a.lift5_inverse();
    return back * mu * back.transpose();
}

Vec3 spin(const GalileanTorsor& mu) {
    require_massive(mu);
    return mu.l - mu.q.cross(mu.p) / mu.m;
}

TorsorInvariants invariants(const GalileanTorsor& mu) {
    const Vec3 l0 = spin(mu);
    return {mu.m, l0, l0.norm()};
}

double evaluate(const GalileanTorsor& mu, const AffineFunction& psi, const AffineFunction& psi_hat) {
    if (psi.dimension() != 4 || psi_hat.dimension() != 4) {
        throw InvalidInput("torsor evaluation: affine functions must be of dimension 4");
    }
    Vec5 a;
    a << psi.chi, psi.phi;
    Vec5 b;
    b << psi_hat.chi, psi_hat.phi;
    return a.dot(mu.to_matrix() * b);
}

bool is_spinless(const GalileanTorsor& mu) {
    const Vec3 l0 = spin(mu);
    const double scale =
        std::max({1.0, mu.l.norm(), mu.q.norm() * mu.p.norm() / std::abs(mu.m)});
    return l0.norm() <= 1e-12 * scale;
}

GalileanTransformation stabilizer_element(const GalileanTorsor& mu, double theta, double tau_prime,
                                          const Vec3& axis_if_spinless) {
    require_massive(mu);
    const Vec3 axis = is_spinless(mu) ? axis_if_spinless : spin(mu);
    const Mat3 r = rodrigues(axis, theta);
    const Vec3 u = (mu.p - r * mu.p) / mu.m;
    const Vec3 k_prime = (mu.q - r.transpose() * mu.q + tau_prime * mu.p) / mu.m;
    return GalileanTransformation::from_inverse_side(tau_prime, k_prime, u, r);
}

int isotropy_dimension(const GalileanTorsor& mu) {
    require_massive(mu);
    return is_spinless(mu) ? 4 : 2;
}

GalileanTransformation one_parameter_subgroup(int generator, double s) {
    if (generator < 0 || generator >= 10) throw InvalidInput("generator index must be in [0, 10)");
    if (generator == 0) return GalileanTransformation::clock_change(s);
    const Vec3 e = Vec3::Unit((generator - 1) % 3) * s;
    if (generator <= 3) return GalileanTransformation::translation(e);
    if (generator <= 6) return GalileanTransformation::boost(e);
    return GalileanTransformation::rotation(rotation_from_vector(e));
}

Mat5 lie_algebra_generator(int generator) {
    if (generator < 0 || generator >= 10) throw InvalidInput("generator index must be in [0, 10)");
    Mat5 a = Mat5::Zero();
    const int axis = (generator - 1) % 3;
    if (generator == 0) {
        a(1, 0) = 1.0;
    } else if (generator <= 3) {
        a(2 + axis, 0) = 1.0;
    } else if (generator <= 6) {
        a(2 + axis, 1) = 1.0;
    } else {
        a.block<3, 3>(2, 2) = hat(Vec3::Unit(axis));
    }
    return a;
}

Eigen::Matrix<double, 10, 10> orbit_tangent(const GalileanTorsor& mu) {
    // d/ds [L(s)^-1 mu L(s)^-T] at s = 0 is -A mu - mu A^T.
    const Mat5 m = mu.to_matrix();
    Eigen::Matrix<double, 10, 10> tangent;
    for (int i = 0; i < 10; ++i) {
        const Mat5 a = lie_algebra_generator(i);
        tangent.col(i) = read_components(-a * m - m * a.transpose()).components();
    }
    return tangent;
}

int isotropy_dimension_from_rank(const GalileanTorsor& mu, double rel_tol) {
    Eigen::JacobiSVD<Eigen::Matrix<double, 10, 10>> svd(orbit_tangent(mu));
    const auto& sv = svd.singularValues();
    const double cutoff = rel_tol * std::max(sv(0), 1e-300);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i) rank += sv(i) > cutoff ? 1 : 0;
    return 10 - rank;
}

} // namespace galmech
