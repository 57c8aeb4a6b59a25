#pragma once

// Independent reference implementations used only by tests. Each one is a
// deliberately plain re-derivation of the quantity it checks, written without
// looking at the library code path.

#include <cstddef>
#include <span>
#include <vector>

#include "ancsim/room.hpp"

namespace oracles {

// Image-source sum by explicit enumeration over total reflection order.
// Covers every image whose interpolation window can reach [0, num_taps).
std::vector<double> ism_brute_force(const ancsim::RoomModel& room,
                                    const ancsim::Position& source,
                                    const ancsim::Position& receiver,
                                    std::size_t num_taps,
                                    int max_order);

// Textbook double-loop linear convolution truncated to the input length.
std::vector<double> conv_direct(std::span<const double> x,
                                std::span<const double> h);

struct LmsTrace {
    std::vector<double> desired;
    std::vector<double> error;
    std::vector<double> weights;
};

// Minimal LMS canceller for the identity-path case (d = x, anti-noise adds
// straight into the microphone): e = x + w.x_hist, w -= mu * e * x_hist.
LmsTrace lms_reference(std::span<const double> x, std::size_t length, double mu);

double population_variance(std::span<const double> v);

} // namespace oracles
