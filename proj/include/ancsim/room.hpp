#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace ancsim {

struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double distance(const Position& a, const Position& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Shoebox room. Walls are indexed x=0, x=Lx, y=0, y=Ly, z=0, z=Lz and carry
// pressure reflection coefficients in [0, 1] (no phase inversion per bounce).
struct RoomModel {
    std::array<double, 3> dimensions{6.0, 4.0, 3.0};   // meters
    std::array<double, 6> reflection{0.8, 0.7, 0.6, 0.5, 0.4, 0.5};
    double sound_speed = 343.0;                         // m/s
    double sample_rate = 2000.0;                        // Hz

    // Throws ConfigError if any field is out of range.
    void validate() const;

    bool contains(const Position& p) const {
        return p.x > 0.0 && p.x < dimensions[0] &&
               p.y > 0.0 && p.y < dimensions[1] &&
               p.z > 0.0 && p.z < dimensions[2];
    }
};

// Finite discrete-time acoustic channel between two fixed points.
struct ImpulseResponse {
    std::vector<double> taps;
    double sample_rate = 0.0;   // Hz
};

} // namespace ancsim
