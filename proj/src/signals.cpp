#include "ancsim/signals.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "ancsim/errors.hpp"
#include "ancsim/rng.hpp"

namespace ancsim {

double Rng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller on two fresh uniforms; u1 kept away from zero.
    double u1 = uniform01();
    if (u1 < 0x1.0p-53) u1 = 0x1.0p-53;
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
    if (index == 0) return seed;
    // splitmix64 of the offset seed
    std::uint64_t z = seed + index * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::size_t SignalSpec::num_samples() const {
    return static_cast<std::size_t>(std::llround(duration_s * sample_rate));
}

void SignalSpec::validate() const {
    if (!(sample_rate > 0.0)) throw ConfigError("signal: sample_rate must be positive");
    if (!(fundamental_hz > 0.0)) throw ConfigError("signal: fundamental must be positive");
    if (sine_coeffs.empty() || sine_coeffs.size() != cosine_coeffs.size())
        throw ConfigError("signal: sine/cosine coefficient lists must match and be non-empty");
    if (noise_variance < 0.0) throw ConfigError("signal: noise_variance must be non-negative");
    if (!(duration_s > 0.0)) throw ConfigError("signal: duration must be positive");
    const double highest = fundamental_hz * static_cast<double>(sine_coeffs.size());
    if (highest >= sample_rate / 2.0)
        throw ConfigError("signal: highest harmonic violates Nyquist");
}

std::vector<double> synthesize(const SignalSpec& spec) {
    spec.validate();
    const std::size_t n_samples = spec.num_samples();
    const std::size_t n_harm = spec.sine_coeffs.size();

    std::vector<double> x(n_samples, 0.0);
    for (std::size_t k = 0; k < n_harm; ++k) {
        const double omega =
            2.0 * std::numbers::pi * spec.fundamental_hz * static_cast<double>(k + 1) /
            spec.sample_rate;
        const double a = spec.sine_coeffs[k];
        const double b = spec.cosine_coeffs[k];
        for (std::size_t n = 0; n < n_samples; ++n) {
            const double phase = omega * static_cast<double>(n);
            x[n] += a * std::sin(phase) + b * std::cos(phase);
        }
    }

    if (spec.noise_variance > 0.0) {
        Rng rng(spec.seed);
        const double sigma = std::sqrt(spec.noise_variance);
        for (auto& v : x) v += sigma * rng.gaussian();
    }
    return x;
}

namespace {

// In-place iterative radix-2 FFT.
void fft(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

} // namespace

Psd psd(std::span<const double> signal, double sample_rate) {
    if (!(sample_rate > 0.0)) throw ConfigError("psd: sample_rate must be positive");
    const std::size_t seg = kWelchSegment;
    if (signal.size() < seg)
        throw ConfigError("psd: signal shorter than one Welch segment");

    // Periodic Hann window.
    std::vector<double> window(seg);
    double window_power = 0.0;
    for (std::size_t n = 0; n < seg; ++n) {
        window[n] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi *
                                          static_cast<double>(n) /
                                          static_cast<double>(seg)));
        window_power += window[n] * window[n];
    }

    const std::size_t hop = seg / 2;
    const std::size_t n_bins = seg / 2 + 1;
    std::vector<double> accum(n_bins, 0.0);
    std::size_t n_segments = 0;

    std::vector<std::complex<double>> buf(seg);
    for (std::size_t start = 0; start + seg <= signal.size(); start += hop) {
        for (std::size_t n = 0; n < seg; ++n)
            buf[n] = {signal[start + n] * window[n], 0.0};
        fft(buf);
        for (std::size_t k = 0; k < n_bins; ++k)
            accum[k] += std::norm(buf[k]);
        ++n_segments;
    }

    // One-sided density, averaged over segments.
    Psd out;
    out.frequency_hz.resize(n_bins);
    out.power_db.resize(n_bins);
    const double scale = 1.0 / (sample_rate * window_power * static_cast<double>(n_segments));
    for (std::size_t k = 0; k < n_bins; ++k) {
        out.frequency_hz[k] =
            static_cast<double>(k) * sample_rate / static_cast<double>(seg);
        double p = accum[k] * scale;
        if (k != 0 && k != n_bins - 1) p *= 2.0;
        out.power_db[k] = 10.0 * std::log10(p);
    }
    return out;
}

double psd_peak_near(const Psd& p, double center_hz, double band_hz) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < p.frequency_hz.size(); ++k) {
        if (std::abs(p.frequency_hz[k] - center_hz) <= band_hz)
            best = std::max(best, p.power_db[k]);
    }
    return best;
}

} // namespace ancsim
