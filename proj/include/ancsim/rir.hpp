#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ancsim/room.hpp"

namespace ancsim {

// Half-width of the Hann-windowed sinc used for fractional-delay deposits,
// in samples. An image at delay t writes taps on (t - kFracDelayHalfWidth,
// t + kFracDelayHalfWidth).
inline constexpr int kFracDelayHalfWidth = 16;

// Image-source-method room impulse response between source and receiver.
// Every image whose interpolation window can touch [0, num_taps) is included,
// i.e. all images with path length <= (num_taps + half-width) * c / Fs.
// max_order limits the total number of wall reflections per image; -1 means
// unlimited.
//
// Throws GeometryError for coincident (closer than 1 cm) or out-of-room
// points, ConfigError for num_taps == 0.
ImpulseResponse generate_rir(const RoomModel& room,
                             const Position& source,
                             const Position& receiver,
                             std::size_t num_taps,
                             int max_order = -1);

// Schroeder backward integration, normalized to 0 dB at the first sample.
// Throws DataError if the response has no energy.
std::vector<double> energy_decay_curve(const ImpulseResponse& ir);

// Reverberation time from the -5 dB .. -25 dB least-squares fit of the decay
// curve (T20 method), extrapolated to the 60 dB convention.
// Throws DataError when the curve does not decay by 25 dB or the fit window
// is degenerate.
double estimate_t60(std::span<const double> edc_db, double sample_rate);

// Number of generate_rir calls since process start. Lets harnesses confirm
// how many responses a sweep actually computed.
std::uint64_t rir_generation_count();

} // namespace ancsim
