#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ancsim {

// Attenuation is capped here when the residual variance is exactly zero.
inline constexpr double kPerfectCancellationDb = 200.0;

struct Attenuation {
    double db = 0.0;
    bool perfect = false;   // residual variance was zero; db holds the cap
};

// A_dB = 10 log10( Var[d] / Var[e] ) over the steady-state window: the first
// floor(N/3) samples of both traces are discarded, variances are population
// variances. Throws ConfigError on length mismatch or fewer than 3 samples,
// DataError when the trimmed d is constant.
Attenuation estimated_attenuation(std::span<const double> d,
                                  std::span<const double> e);

// Top-percentile threshold C = mean + 1.96 * sigma (population). With
// Gaussian-looking values about 2.5% of them exceed C.
// Throws ConfigError for fewer than 2 values.
double threshold_top(std::span<const double> values_db);

struct GridAxes {
    std::vector<double> xs;   // meters
    std::vector<double> ys;
};

struct CellValue {
    std::size_t ix = 0;
    std::size_t iy = 0;
    double a_db = 0.0;
};

// Attenuation per anti-noise grid position. values/present/mask are |xs|*|ys|
// arrays indexed ix * |ys| + iy; a missing cell (failed or diverged
// simulation) has present == 0 and a NaN value.
struct AttenuationMap {
    std::vector<double> grid_x;
    std::vector<double> grid_y;
    std::vector<double> values;
    std::vector<std::uint8_t> present;
    std::vector<std::uint8_t> mask;        // present and value >= threshold_db
    double mean_db = 0.0;
    double std_db = 0.0;
    double min_db = 0.0;
    double max_db = 0.0;
    double threshold_db = 0.0;
    std::size_t present_count = 0;
    std::size_t argmax_ix = 0;
    std::size_t argmax_iy = 0;

    std::size_t index(std::size_t ix, std::size_t iy) const {
        return ix * grid_y.size() + iy;
    }
};

// Assembles the dense map and its statistics from per-cell attenuations.
// Input order is irrelevant; a duplicated cell index is a ConfigError and an
// empty cell list is a DataError.
AttenuationMap build_map(const GridAxes& axes, std::span<const CellValue> cells);

} // namespace ancsim
