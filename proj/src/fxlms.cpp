#include "ancsim/fxlms.hpp"

#include <algorithm>
#include <cmath>

#include "ancsim/errors.hpp"

namespace ancsim {

void FxLmsConfig::validate() const {
    if (filter_length == 0) throw ConfigError("fxlms: filter_length must be positive");
    // step_size == 0 is allowed: it freezes the weights, useful as a no-op
    // baseline where e(n) must reproduce d(n).
    if (!(step_size >= 0.0)) throw ConfigError("fxlms: step_size must be non-negative");
    if (!initial_weights.empty() && initial_weights.size() != filter_length)
        throw ConfigError("fxlms: initial_weights length does not match filter_length");
}

std::vector<double> propagate(std::span<const double> signal,
                              const ImpulseResponse& channel) {
    if (channel.taps.empty()) throw ConfigError("propagate: empty channel");

    const std::size_t n_sig = signal.size();
    const std::size_t n_tap = channel.taps.size();
    std::vector<double> out(n_sig, 0.0);
    for (std::size_t n = 0; n < n_sig; ++n) {
        const std::size_t k_max = std::min(n + 1, n_tap);
        double acc = 0.0;
        for (std::size_t k = 0; k < k_max; ++k)
            acc += channel.taps[k] * signal[n - k];
        out[n] = acc;
    }
    return out;
}

AncRunResult run_fxlms_with_desired(std::span<const double> x,
                                    std::span<const double> desired,
                                    const ImpulseResponse& secondary,
                                    const ImpulseResponse& secondary_estimate,
                                    const FxLmsConfig& config) {
    config.validate();
    if (x.empty()) throw ConfigError("run_fxlms: empty input signal");
    if (desired.size() != x.size())
        throw ConfigError("run_fxlms: desired length does not match input");
    if (secondary.taps.empty() || secondary_estimate.taps.empty())
        throw ConfigError("run_fxlms: empty secondary channel");

    const std::size_t n_steps = x.size();
    const std::size_t len = config.filter_length;
    const double mu = config.step_size;

    // The filtered reference does not depend on the adaptation, so it is
    // convolved up front. The anti-noise path does (y feeds back through the
    // weight update), hence the streaming FIR below.
    const std::vector<double> xf = propagate(x, secondary_estimate);

    AncRunResult result;
    result.final_weights = config.initial_weights.empty()
                               ? std::vector<double>(len, 0.0)
                               : config.initial_weights;
    std::vector<double>& w = result.final_weights;
    result.desired.resize(n_steps);
    result.error.resize(n_steps);

    std::vector<double> y(n_steps, 0.0);
    const std::vector<double>& s = secondary.taps;

    for (std::size_t n = 0; n < n_steps; ++n) {
        const std::size_t k_max = std::min(n + 1, len);
        double yn = 0.0;
        for (std::size_t k = 0; k < k_max; ++k)
            yn += w[k] * x[n - k];
        y[n] = yn;

        double anti = 0.0;
        const std::size_t m_max = std::min(n + 1, s.size());
        for (std::size_t m = 0; m < m_max; ++m)
            anti += s[m] * y[n - m];

        const double en = desired[n] + anti;
        if (!std::isfinite(en) || !std::isfinite(yn)) {
            result.desired.resize(n);
            result.error.resize(n);
            result.diverged = true;
            return result;
        }
        result.desired[n] = desired[n];
        result.error[n] = en;

        const double step = mu * en;
        for (std::size_t k = 0; k < k_max; ++k)
            w[k] -= step * xf[n - k];
    }

    for (double wi : w) {
        if (!std::isfinite(wi)) {
            result.diverged = true;
            break;
        }
    }
    return result;
}

AncRunResult run_fxlms(std::span<const double> x,
                       const ImpulseResponse& primary,
                       const ImpulseResponse& secondary,
                       const ImpulseResponse& secondary_estimate,
                       const FxLmsConfig& config) {
    const std::vector<double> d = propagate(x, primary);
    return run_fxlms_with_desired(x, d, secondary, secondary_estimate, config);
}

} // namespace ancsim
