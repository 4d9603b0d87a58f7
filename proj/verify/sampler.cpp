#include "galmech/verify/sampler.hpp"

namespace galmech::verify {

Vec3 Sampler::unit_vector() {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec3 v;
    do {
        v = Vec3(n(rng_), n(rng_), n(rng_));
    } while (v.norm() < 1e-3);
    return v.normalized();
}

Mat3 Sampler::rotation() {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Quaterniond q(n(rng_), n(rng_), n(rng_), n(rng_));
    return q.normalized().toRotationMatrix();
}

GalileanTransformation Sampler::galilean(double scale) {
    return {uniform(-scale, scale), vec(scale), vec(scale), rotation()};
}

GalileanTorsor Sampler::torsor(double scale) {
    return {uniform(0.5, 2.0), vec(scale), vec(scale), vec(scale)};
}

GalileanTorsor Sampler::spinning_torsor(double scale) {
    GalileanTorsor mu = torsor(scale);
    // Shift l so that |l0| >= 0.2 scale.
    const Vec3 l0 = spin(mu);
    if (l0.norm() < 0.2 * scale) mu.l += 0.5 * scale * unit_vector();
    return mu;
}

GalileanTorsor Sampler::spinless_torsor(double scale) {
    GalileanTorsor mu = torsor(scale);
    mu.l = mu.q.cross(mu.p) / mu.m;
    return mu;
}

AffineTransformation Sampler::affine(Eigen::Index n) {
    MatX p = MatX::Identity(n, n);
    VecX c(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        c(i) = uniform(-1.0, 1.0);
        for (Eigen::Index j = 0; j < n; ++j) p(i, j) += 0.4 * uniform(-1.0, 1.0);
    }
    return AffineTransformation(c, p);
}

AffineFunction Sampler::affine_function(Eigen::Index n) {
    VecX phi(n);
    for (Eigen::Index i = 0; i < n; ++i) phi(i) = uniform(-1.0, 1.0);
    return {uniform(-1.0, 1.0), phi};
}

AffinePoint Sampler::affine_point(Eigen::Index n) {
    VecX v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(-2.0, 2.0);
    return {v};
}

} // namespace galmech::verify
