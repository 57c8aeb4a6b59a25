#include "ancsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "ancsim/errors.hpp"
#include "ancsim/rir.hpp"
#include "ancsim/rng.hpp"

namespace ancsim {

namespace {

constexpr std::size_t kMaxPlacementAttempts = 1000;

unsigned resolve_workers(unsigned workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Index-based worker pool: slot i of `results` belongs to cell i alone, so
// the outcome is identical for any worker count.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, const Fn& body,
                  const ProgressFn& progress) {
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;

    auto drain = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            body(i);
            const std::size_t d = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(d, count);
            }
        }
    };

    const unsigned n_threads = std::min<std::size_t>(resolve_workers(workers), count);
    if (n_threads <= 1) {
        drain();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(drain);
    for (auto& th : pool) th.join();
}

std::vector<double> axis_ticks(double room_len, double margin, double spacing) {
    std::vector<double> ticks;
    const double usable = room_len - 2.0 * margin;
    if (usable < 0.0) return ticks;
    const auto count = static_cast<std::size_t>(std::floor(usable / spacing + 1e-9)) + 1;
    ticks.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        ticks.push_back(margin + static_cast<double>(i) * spacing);
    return ticks;
}

} // namespace

void SweepConfig::validate() const {
    room.validate();
    signal.validate();
    fxlms.validate();
    if (!(grid_spacing > 0.0)) throw ConfigError("sweep: grid_spacing must be positive");
    if (!(grid_margin >= 0.0)) throw ConfigError("sweep: grid_margin must be non-negative");
    if (!(exclusion_radius >= 0.0))
        throw ConfigError("sweep: exclusion_radius must be non-negative");
    if (rir_taps == 0) throw ConfigError("sweep: rir_taps must be positive");
    if (signal.sample_rate != room.sample_rate)
        throw ConfigError("sweep: signal and room sample rates differ");
    if (!(grid_z > 0.0 && grid_z < room.dimensions[2]))
        throw ConfigError("sweep: grid_z outside room");
    if (!room.contains(noise_source)) throw GeometryError("sweep: noise source outside room");
    if (!room.contains(microphone)) throw GeometryError("sweep: microphone outside room");
    if (distance(noise_source, microphone) <= exclusion_radius ||
        distance(noise_source, microphone) <= 0.01)
        throw GeometryError("sweep: noise source and microphone too close");
}

GridAxes grid_axes(const SweepConfig& config) {
    const double usable_x = config.room.dimensions[0] - 2.0 * config.grid_margin;
    const double usable_y = config.room.dimensions[1] - 2.0 * config.grid_margin;
    if (config.grid_spacing > usable_x || config.grid_spacing > usable_y)
        throw ConfigError("sweep: grid spacing exceeds the room footprint");
    GridAxes axes;
    axes.xs = axis_ticks(config.room.dimensions[0], config.grid_margin, config.grid_spacing);
    axes.ys = axis_ticks(config.room.dimensions[1], config.grid_margin, config.grid_spacing);
    if (axes.xs.empty() || axes.ys.empty())
        throw ConfigError("sweep: grid spacing/margin leave no candidate positions");
    return axes;
}

std::vector<GridCell> enumerate_grid(const SweepConfig& config) {
    config.validate();
    const GridAxes axes = grid_axes(config);

    std::vector<GridCell> cells;
    cells.reserve(axes.xs.size() * axes.ys.size());
    for (std::size_t ix = 0; ix < axes.xs.size(); ++ix) {
        for (std::size_t iy = 0; iy < axes.ys.size(); ++iy) {
            const Position pos{axes.xs[ix], axes.ys[iy], config.grid_z};
            if (distance(pos, config.microphone) < config.exclusion_radius) continue;
            if (distance(pos, config.noise_source) < config.exclusion_radius) continue;
            cells.push_back({ix, iy, pos});
        }
    }
    if (cells.empty())
        throw ConfigError("sweep: every grid position is excluded");
    return cells;
}

AttenuationMap run_sweep(const SweepConfig& config, unsigned workers,
                         const ProgressFn& progress) {
    const std::vector<GridCell> cells = enumerate_grid(config);
    const GridAxes axes = grid_axes(config);

    // Shared, immutable per-scenario inputs.
    const std::vector<double> x = synthesize(config.signal);
    const ImpulseResponse primary =
        generate_rir(config.room, config.noise_source, config.microphone, config.rir_taps);
    const std::vector<double> d = propagate(x, primary);

    struct CellOutcome {
        bool ok = false;
        double a_db = 0.0;
    };
    std::vector<CellOutcome> outcomes(cells.size());

    parallel_for(
        cells.size(), workers,
        [&](std::size_t i) {
            try {
                const ImpulseResponse secondary = generate_rir(
                    config.room, cells[i].pos, config.microphone, config.rir_taps);
                const AncRunResult run = run_fxlms_with_desired(
                    x, d, secondary, secondary, config.fxlms);
                if (run.diverged) return;
                const Attenuation att = estimated_attenuation(run.desired, run.error);
                outcomes[i] = {true, att.db};
            } catch (const Error&) {
                // invalid geometry or degenerate cell: leave it missing
            }
        },
        progress);

    std::vector<CellValue> values;
    values.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (outcomes[i].ok)
            values.push_back({cells[i].ix, cells[i].iy, outcomes[i].a_db});
    }
    if (values.empty())
        throw DataError("sweep: every grid cell failed");
    return build_map(axes, values);
}

void MonteCarloConfig::validate() const {
    if (runs == 0) throw ConfigError("montecarlo: runs must be positive");
    if (!(x_interval[0] < x_interval[1]) || !(y_interval[0] < y_interval[1]))
        throw ConfigError("montecarlo: placement intervals must be non-empty");
    const auto& dims = sweep_template.room.dimensions;
    if (x_interval[0] < 0.0 || x_interval[1] > dims[0] ||
        y_interval[0] < 0.0 || y_interval[1] > dims[1])
        throw ConfigError("montecarlo: placement intervals extend outside the room");
    if (!(placement_z > 0.0 && placement_z < dims[2]))
        throw ConfigError("montecarlo: placement_z outside room");
    sweep_template.room.validate();
    sweep_template.signal.validate();
    sweep_template.fxlms.validate();
}

MonteCarloResult run_monte_carlo(const MonteCarloConfig& config, unsigned workers,
                                 const ProgressFn& progress) {
    config.validate();

    MonteCarloResult result;
    std::vector<double> all_values;

    for (std::size_t run = 0; run < config.runs; ++run) {
        const std::uint64_t run_seed = config.base_seed + run;

        SweepConfig sweep = config.sweep_template;
        sweep.signal.seed = run_seed;

        // Draw noise source then microphone; collisions with the exclusion
        // radius redraw from the next substream.
        std::size_t attempt = 0;
        bool placed = false;
        for (; attempt < kMaxPlacementAttempts; ++attempt) {
            Rng rng(substream(run_seed, attempt));
            sweep.noise_source = {rng.uniform(config.x_interval[0], config.x_interval[1]),
                                  rng.uniform(config.y_interval[0], config.y_interval[1]),
                                  config.placement_z};
            sweep.microphone = {rng.uniform(config.x_interval[0], config.x_interval[1]),
                                rng.uniform(config.y_interval[0], config.y_interval[1]),
                                config.placement_z};
            if (!sweep.room.contains(sweep.noise_source) ||
                !sweep.room.contains(sweep.microphone))
                continue;
            const double sep = distance(sweep.noise_source, sweep.microphone);
            if (sep <= sweep.exclusion_radius || sep <= 0.01) continue;
            placed = true;
            break;
        }
        if (!placed) {
            result.failures.push_back({run, "no valid placement after redraws"});
            continue;
        }

        try {
            ProgressFn cell_progress;
            if (progress) {
                cell_progress = [&, run](std::size_t done, std::size_t total) {
                    progress(run * total + done, config.runs * total);
                };
            }
            AttenuationMap map = run_sweep(sweep, workers, cell_progress);

            MonteCarloRecord rec;
            rec.run_index = run;
            rec.noise_source = sweep.noise_source;
            rec.microphone = sweep.microphone;
            rec.best_position = {map.grid_x[map.argmax_ix], map.grid_y[map.argmax_iy],
                                 sweep.grid_z};
            rec.best_db = map.max_db;
            rec.mean_db = map.mean_db;
            rec.redraws = attempt;
            result.records.push_back(rec);

            for (std::size_t idx = 0; idx < map.values.size(); ++idx)
                if (map.present[idx]) all_values.push_back(map.values[idx]);
            result.maps.push_back(std::move(map));
        } catch (const Error& err) {
            result.failures.push_back({run, err.what()});
        }
    }

    if (result.records.empty())
        throw DataError("montecarlo: every run failed");

    double sum = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (double v : all_values) {
        sum += v;
        best = std::max(best, v);
    }
    result.cell_count = all_values.size();
    result.mean_db = sum / static_cast<double>(all_values.size());
    result.max_db = best;
    result.improvement_db = result.max_db - result.mean_db;
    return result;
}

} // namespace ancsim
