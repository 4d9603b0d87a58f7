#pragma once

#include <cstdint>
#include <random>

#include "galmech/affine.hpp"
#include "galmech/galilei.hpp"
#include "galmech/torsor.hpp"

namespace galmech::verify {

/// Seeded random inputs for property checks.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed = 20061204) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    Vec3 vec(double scale = 1.0) { return Vec3(uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)); }
    Vec3 unit_vector();
    Mat3 rotation();
    GalileanTransformation galilean(double scale = 1.0);
    /// Mass drawn from [0.5, 2].
    GalileanTorsor torsor(double scale = 1.0);
    /// Massive torsor with |l0| bounded away from zero.
    GalileanTorsor spinning_torsor(double scale = 1.0);
    /// Massive torsor with l0 == 0 exactly: l = q x p / m.
    GalileanTorsor spinless_torsor(double scale = 1.0);
    /// Well-conditioned transformation, P = I + 0.4 * random.
    AffineTransformation affine(Eigen::Index n);
    AffineFunction affine_function(Eigen::Index n);
    AffinePoint affine_point(Eigen::Index n);

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace galmech::verify
