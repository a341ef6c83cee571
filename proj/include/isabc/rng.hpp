#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "isabc/complex_block.hpp"

namespace isabc {

// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-trial random stream. The sequence depends only on
// (master seed, point id, trial index), never on which worker runs it.
// Deviates are built from raw mt19937_64 output so results do not depend on
// the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix64(seed)) {}
    Rng(std::uint64_t master, std::uint64_t point, std::uint64_t trial)
        : eng_(mix64(mix64(mix64(master) ^ point) ^ (trial * 0xd1b54a32d192ed03ULL))) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    std::uint8_t bit() noexcept { return static_cast<std::uint8_t>(eng_() >> 63); }

    double normal() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    // Circularly-symmetric complex Gaussian with E|w|^2 = var.
    cd cn(double var) noexcept {
        const double s = std::sqrt(var / 2.0);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

    double phase() noexcept { return 2.0 * std::numbers::pi * uniform(); }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace isabc
