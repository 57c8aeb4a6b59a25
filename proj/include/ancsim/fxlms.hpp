#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ancsim/room.hpp"

namespace ancsim {

struct FxLmsConfig {
    std::size_t filter_length = 350;
    double step_size = 1e-5;
    std::vector<double> initial_weights;   // empty = all zero

    void validate() const;
};

struct AncRunResult {
    std::vector<double> desired;        // d(n), noise at the error microphone
    std::vector<double> error;          // e(n), residual after cancellation
    std::vector<double> final_weights;
    bool diverged = false;
};

// Causal linear convolution truncated to the input length.
// Throws ConfigError for an empty channel.
std::vector<double> propagate(std::span<const double> signal,
                              const ImpulseResponse& channel);

// Feedforward FxLMS through RIR channels. Per step:
//   d[n] = (x * p)[n]
//   y[n] = w . [x[n] .. x[n-L+1]]
//   e[n] = d[n] + (s * y)[n]          (summation at the microphone; the
//                                      filter converges to the inverting
//                                      controller)
//   xf[n] = (s_hat * x)[n]
//   w   <- w - mu * e[n] * [xf[n] .. xf[n-L+1]]
// On the first non-finite e or y the run stops, traces are truncated to the
// steps before it, and `diverged` is set.
AncRunResult run_fxlms(std::span<const double> x,
                       const ImpulseResponse& primary,
                       const ImpulseResponse& secondary,
                       const ImpulseResponse& secondary_estimate,
                       const FxLmsConfig& config);

// Same loop with a precomputed desired signal; a position sweep shares one
// d(n) across every grid cell.
AncRunResult run_fxlms_with_desired(std::span<const double> x,
                                    std::span<const double> desired,
                                    const ImpulseResponse& secondary,
                                    const ImpulseResponse& secondary_estimate,
                                    const FxLmsConfig& config);

} // namespace ancsim
