#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ancsim {

// Multi-harmonic source with an additive Gaussian wideband component.
// Harmonic k (1-based) sits at k * fundamental_hz with sine coefficient
// sine_coeffs[k-1] and cosine coefficient cosine_coeffs[k-1].
struct SignalSpec {
    double fundamental_hz = 30.0;
    std::vector<double> sine_coeffs{-1.0, -0.5, 0.1};
    std::vector<double> cosine_coeffs{2.0, 1.0, 0.5};
    double noise_variance = 0.1;
    double sample_rate = 2000.0;
    double duration_s = 100.0;
    std::uint64_t seed = 1;

    std::size_t num_samples() const;
    // Throws ConfigError on mismatched coefficient lists or a highest
    // harmonic at or above Nyquist.
    void validate() const;
};

// x[n] = sum_k a_k sin(2 pi k f0 n / Fs) + b_k cos(2 pi k f0 n / Fs) + w[n],
// w ~ N(0, noise_variance) drawn from Rng(spec.seed).
std::vector<double> synthesize(const SignalSpec& spec);

struct Psd {
    std::vector<double> frequency_hz;
    std::vector<double> power_db;   // 10*log10 of one-sided density
};

// Welch-averaged periodogram: 4096-sample segments, 50% overlap, Hann window.
// Resolution at 2 kHz is 0.49 Hz. Throws ConfigError when the signal is
// shorter than one segment.
Psd psd(std::span<const double> signal, double sample_rate);

inline constexpr std::size_t kWelchSegment = 4096;

// Largest power_db value within +-band_hz of center_hz; used to read
// narrowband line levels off a Psd.
double psd_peak_near(const Psd& p, double center_hz, double band_hz);

} // namespace ancsim
