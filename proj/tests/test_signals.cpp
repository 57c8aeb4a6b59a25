#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ancsim/errors.hpp"
#include "ancsim/signals.hpp"
#include "oracles.hpp"

using namespace ancsim;

namespace {

SignalSpec paper_spec() {
    SignalSpec spec;
    spec.seed = 77;
    return spec;
}

} // namespace

TEST_SUITE("signals") {

TEST_CASE("first sample is the sum of the cosine coefficients") {
    SignalSpec spec = paper_spec();
    spec.noise_variance = 0.0;
    const auto x = synthesize(spec);
    REQUIRE(x.size() == 200000);
    CHECK(x[0] == doctest::Approx(3.5).epsilon(1e-12));
}

TEST_CASE("zero coefficients and zero noise give the zero signal") {
    SignalSpec spec = paper_spec();
    spec.sine_coeffs = {0.0, 0.0};
    spec.cosine_coeffs = {0.0, 0.0};
    spec.noise_variance = 0.0;
    spec.duration_s = 1.0;
    for (double v : synthesize(spec)) CHECK(v == 0.0);
}

TEST_CASE("noise component has the requested variance and zero mean") {
    SignalSpec spec = paper_spec();
    auto noisy = synthesize(spec);
    spec.noise_variance = 0.0;
    const auto clean = synthesize(spec);

    std::vector<double> noise(noisy.size());
    for (std::size_t i = 0; i < noisy.size(); ++i) noise[i] = noisy[i] - clean[i];

    double mean = 0.0;
    for (double v : noise) mean += v;
    mean /= static_cast<double>(noise.size());
    CHECK(std::abs(mean) < 3e-3);   // sigma of the mean is ~7e-4 here
    CHECK(oracles::population_variance(noise) == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("same seed reproduces the signal bit for bit") {
    SignalSpec spec = paper_spec();
    spec.duration_s = 5.0;
    const auto a = synthesize(spec);
    const auto b = synthesize(spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("seeds only change the wideband part") {
    SignalSpec spec = paper_spec();
    spec.duration_s = 50.0;
    const auto a = synthesize(spec);
    spec.seed = 78;
    const auto b = synthesize(spec);

    // The deterministic component cancels in the difference, which is then
    // white: no harmonic line may stand clear of its local floor.
    std::vector<double> diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    const Psd p = psd(diff, spec.sample_rate);
    for (double line_hz : {30.0, 60.0, 90.0}) {
        const double at_line = psd_peak_near(p, line_hz, 1.0);
        const double nearby = psd_peak_near(p, line_hz + 6.0, 3.0);
        CHECK(at_line < nearby + 3.0);
    }
}

TEST_CASE("noise-free synthesis is periodic") {
    SignalSpec spec = paper_spec();
    spec.noise_variance = 0.0;
    spec.duration_s = 2.0;

    // 30 Hz at 2 kHz repeats every 200 samples (Fs/f0 = 66.67 is the period
    // in continuous time; three fundamental cycles land on the sample grid).
    auto x = synthesize(spec);
    for (std::size_t n = 0; n + 200 < x.size(); ++n)
        CHECK(x[n + 200] == doctest::Approx(x[n]).epsilon(1e-9));

    // With Fs/f0 integer the period is exactly Fs/f0 samples.
    spec.fundamental_hz = 25.0;
    x = synthesize(spec);
    for (std::size_t n = 0; n + 80 < x.size(); ++n)
        CHECK(x[n + 80] == doctest::Approx(x[n]).epsilon(1e-9));
}

TEST_CASE("nyquist violation is rejected") {
    SignalSpec spec = paper_spec();
    spec.fundamental_hz = 300.0;
    spec.sine_coeffs = {1.0, 1.0, 1.0, 1.0};
    spec.cosine_coeffs = {1.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(synthesize(spec), ConfigError);   // 1200 Hz >= Fs/2

    spec.sine_coeffs = {1.0};
    CHECK_THROWS_AS(synthesize(spec), ConfigError);   // list length mismatch
}

TEST_CASE("psd of a pure tone peaks at the tone") {
    SignalSpec spec = paper_spec();
    spec.sine_coeffs = {1.0};
    spec.cosine_coeffs = {0.0};
    spec.noise_variance = 0.0;
    const auto x = synthesize(spec);
    const Psd p = psd(x, spec.sample_rate);
    const std::size_t peak =
        std::max_element(p.power_db.begin(), p.power_db.end()) - p.power_db.begin();
    CHECK(std::abs(p.frequency_hz[peak] - 30.0) <= 1.0);
}

TEST_CASE("psd of the study signal shows lines at 30, 60 and 90 Hz") {
    const auto x = synthesize(paper_spec());
    const Psd p = psd(x, 2000.0);
    for (double line_hz : {30.0, 60.0, 90.0}) {
        const double at_line = psd_peak_near(p, line_hz, 1.0);
        const double floor_lo = psd_peak_near(p, line_hz - 10.0, 3.0);
        const double floor_hi = psd_peak_near(p, line_hz + 10.0, 3.0);
        CHECK(at_line > floor_lo + 10.0);
        CHECK(at_line > floor_hi + 10.0);
    }

    // The three largest narrowband peaks sit on the harmonic comb.
    std::vector<std::pair<double, double>> peaks;   // power, frequency
    for (std::size_t k = 1; k + 1 < p.power_db.size(); ++k) {
        if (p.power_db[k] > p.power_db[k - 1] && p.power_db[k] > p.power_db[k + 1])
            peaks.emplace_back(p.power_db[k], p.frequency_hz[k]);
    }
    std::sort(peaks.rbegin(), peaks.rend());
    REQUIRE(peaks.size() >= 3);
    std::vector<double> top{peaks[0].second, peaks[1].second, peaks[2].second};
    std::sort(top.begin(), top.end());
    CHECK(std::abs(top[0] - 30.0) <= 1.0);
    CHECK(std::abs(top[1] - 60.0) <= 1.0);
    CHECK(std::abs(top[2] - 90.0) <= 1.0);
}

TEST_CASE("psd of white noise is flat after averaging") {
    SignalSpec spec = paper_spec();
    spec.sine_coeffs = {0.0};
    spec.cosine_coeffs = {0.0};
    spec.noise_variance = 0.1;
    const auto x = synthesize(spec);
    const Psd p = psd(x, spec.sample_rate);

    std::vector<double> band;
    for (std::size_t k = 0; k < p.frequency_hz.size(); ++k)
        if (p.frequency_hz[k] >= 10.0 && p.frequency_hz[k] <= 900.0)
            band.push_back(p.power_db[k]);
    std::vector<double> sorted = band;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted[sorted.size() / 2];
    for (double v : band) CHECK(std::abs(v - median) <= 3.0);
}

TEST_CASE("psd rejects signals shorter than one segment") {
    std::vector<double> x(kWelchSegment - 1, 1.0);
    CHECK_THROWS_AS(psd(x, 2000.0), ConfigError);
}

} // TEST_SUITE
