#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ancsim/fxlms.hpp"
#include "ancsim/metrics.hpp"
#include "ancsim/room.hpp"
#include "ancsim/signals.hpp"

namespace ancsim {

// One anti-noise position study: a fixed noise source and error microphone,
// anti-noise candidates on a horizontal grid at height grid_z.
struct SweepConfig {
    RoomModel room;
    Position noise_source{3.0, 2.0, 1.5};
    Position microphone{1.0, 3.0, 1.5};
    double grid_spacing = 0.11;       // meters between candidates
    double grid_z = 1.53;
    double grid_margin = 0.1;         // clearance from each wall
    double exclusion_radius = 0.05;   // keep-out around mic and noise source
    SignalSpec signal;
    FxLmsConfig fxlms;
    std::size_t rir_taps = 1000;

    void validate() const;
};

struct GridCell {
    std::size_t ix = 0;
    std::size_t iy = 0;
    Position pos;
};

GridAxes grid_axes(const SweepConfig& config);

// Grid positions in row-major (x-major) order, minus cells within
// exclusion_radius of the microphone or the noise source.
// Throws ConfigError when no cell survives.
std::vector<GridCell> enumerate_grid(const SweepConfig& config);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// Shared per-scenario work (source signal, primary path, d(n)) is computed
// once; each grid cell then gets its own secondary path and FxLMS run.
// Cells are independent work items, so the result is identical for any
// worker count. Diverged or invalid cells become missing map cells; only an
// entirely failed grid throws (DataError).
AttenuationMap run_sweep(const SweepConfig& config,
                         unsigned workers = 0,          // 0 = hardware
                         const ProgressFn& progress = {});

struct MonteCarloConfig {
    std::size_t runs = 100;
    std::array<double, 2> x_interval{1.0, 6.0};   // half-open [lo, hi)
    std::array<double, 2> y_interval{1.0, 4.0};
    double placement_z = 1.5;
    std::uint64_t base_seed = 1;
    SweepConfig sweep_template;   // noise_source/microphone are overwritten

    void validate() const;
};

struct MonteCarloRecord {
    std::size_t run_index = 0;
    Position noise_source;
    Position microphone;
    Position best_position;
    double best_db = 0.0;
    double mean_db = 0.0;    // mean over that run's present cells
    std::size_t redraws = 0;
};

struct MonteCarloFailure {
    std::size_t run_index = 0;
    std::string reason;
};

struct MonteCarloResult {
    std::vector<MonteCarloRecord> records;
    std::vector<AttenuationMap> maps;      // aligned with records
    std::vector<MonteCarloFailure> failures;
    // Aggregate over every present cell of every successful run.
    double mean_db = 0.0;
    double max_db = 0.0;
    double improvement_db = 0.0;   // max - mean
    std::size_t cell_count = 0;
};

// Run i seeds its placement draw and its signal with base_seed + i; a draw
// that collides with the exclusion radius is redrawn from the next substream.
// Per-run failures are recorded and skipped; throws DataError if every run
// fails.
MonteCarloResult run_monte_carlo(const MonteCarloConfig& config,
                                 unsigned workers = 0,
                                 const ProgressFn& progress = {});

} // namespace ancsim
