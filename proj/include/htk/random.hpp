#pragma once

// Seeded generator used everywhere randomness is needed. Uniform variates are
// derived from raw mt19937_64 output by hand so streams are identical across
// standard library implementations.

#include "tensor_core.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace htk {

class rng {
public:
    explicit rng(std::uint64_t seed = 0) : eng_(seed) {}

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Haar-distributed rotation from a uniformly drawn unit quaternion.
    rotation random_rotation() {
        const double u1 = uniform(), u2 = uniform(), u3 = uniform();
        const double two_pi = 2 * std::numbers::pi;
        const double a = std::sqrt(1 - u1), b = std::sqrt(u1);
        const double x = a * std::sin(two_pi * u2), y = a * std::cos(two_pi * u2);
        const double z = b * std::sin(two_pi * u3), w = b * std::cos(two_pi * u3);
        mat3 m;
        m << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
            2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
            2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
        return rotation::unchecked(m);
    }

    vec3 random_vector(double lo = -1, double hi = 1) { return vec3(uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)); }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace htk
