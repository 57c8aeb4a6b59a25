#pragma once

#include <cstdint>
#include <random>

namespace ancsim {

// Project-wide random number source. The engine (std::mt19937_64) is fully
// specified by the standard and the value mappings below avoid
// std::*_distribution, whose output differs between standard library
// implementations. Same seed, same stream, on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1) with 53 random mantissa bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform double in the half-open interval [lo, hi).
    double uniform(double lo, double hi) {
        return lo + uniform01() * (hi - lo);
    }

    // Standard normal via Box-Muller; the spare deviate is cached.
    double gaussian();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

// Derived seed for an independent stream. substream(seed, 0) == seed, so the
// first stream of a run is seeded with the advertised value.
std::uint64_t substream(std::uint64_t seed, std::uint64_t index);

} // namespace ancsim
