#include "ancsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ancsim/errors.hpp"

namespace ancsim {

namespace {

double population_variance(std::span<const double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(v.size());
}

} // namespace

Attenuation estimated_attenuation(std::span<const double> d,
                                  std::span<const double> e) {
    if (d.size() != e.size())
        throw ConfigError("estimated_attenuation: length mismatch");
    if (d.size() < 3)
        throw ConfigError("estimated_attenuation: need at least 3 samples");

    // Steady state only: drop the adaptation transient in the first third.
    const std::size_t skip = d.size() / 3;
    const auto d_trim = d.subspan(skip);
    const auto e_trim = e.subspan(skip);

    const double var_d = population_variance(d_trim);
    const double var_e = population_variance(e_trim);
    if (var_d == 0.0)
        throw DataError("estimated_attenuation: desired signal is constant");
    if (var_e == 0.0)
        return {kPerfectCancellationDb, true};
    return {10.0 * std::log10(var_d / var_e), false};
}

double threshold_top(std::span<const double> values_db) {
    if (values_db.size() < 2)
        throw ConfigError("threshold_top: need at least 2 values");
    double mean = 0.0;
    for (double v : values_db) mean += v;
    mean /= static_cast<double>(values_db.size());
    double var = 0.0;
    for (double v : values_db) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values_db.size());
    return mean + 1.96 * std::sqrt(var);
}

AttenuationMap build_map(const GridAxes& axes, std::span<const CellValue> cells) {
    if (axes.xs.empty() || axes.ys.empty())
        throw ConfigError("build_map: empty grid");
    if (cells.empty())
        throw DataError("build_map: no attenuation values");

    AttenuationMap map;
    map.grid_x = axes.xs;
    map.grid_y = axes.ys;
    const std::size_t total = axes.xs.size() * axes.ys.size();
    map.values.assign(total, std::numeric_limits<double>::quiet_NaN());
    map.present.assign(total, 0);
    map.mask.assign(total, 0);

    for (const auto& cell : cells) {
        if (cell.ix >= axes.xs.size() || cell.iy >= axes.ys.size())
            throw ConfigError("build_map: cell index outside grid");
        const std::size_t idx = map.index(cell.ix, cell.iy);
        if (map.present[idx])
            throw ConfigError("build_map: duplicate cell");
        map.values[idx] = cell.a_db;
        map.present[idx] = 1;
    }

    // Statistics over present cells, scanned in fixed grid order so the
    // result does not depend on the input ordering.
    double sum = 0.0;
    map.min_db = std::numeric_limits<double>::infinity();
    map.max_db = -std::numeric_limits<double>::infinity();
    for (std::size_t ix = 0; ix < axes.xs.size(); ++ix) {
        for (std::size_t iy = 0; iy < axes.ys.size(); ++iy) {
            const std::size_t idx = map.index(ix, iy);
            if (!map.present[idx]) continue;
            const double v = map.values[idx];
            sum += v;
            map.min_db = std::min(map.min_db, v);
            if (v > map.max_db) {
                map.max_db = v;
                map.argmax_ix = ix;
                map.argmax_iy = iy;
            }
            ++map.present_count;
        }
    }
    map.mean_db = sum / static_cast<double>(map.present_count);

    double var = 0.0;
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (!map.present[idx]) continue;
        const double dv = map.values[idx] - map.mean_db;
        var += dv * dv;
    }
    var /= static_cast<double>(map.present_count);
    map.std_db = std::sqrt(var);
    map.threshold_db = map.mean_db + 1.96 * map.std_db;

    for (std::size_t idx = 0; idx < total; ++idx)
        map.mask[idx] = map.present[idx] && map.values[idx] >= map.threshold_db;

    return map;
}

} // namespace ancsim
