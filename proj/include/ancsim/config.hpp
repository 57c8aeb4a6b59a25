#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "ancsim/sweep.hpp"

namespace ancsim {

enum class StudyKind { Rir, Signal, Simulate, Sweep, MonteCarlo };

std::string to_string(StudyKind kind);
StudyKind study_from_string(const std::string& name);

// Everything a run depends on, resolvable from a preset, a config file and
// command-line overrides (in that order). The resolved form is written next
// to every output so a run can be reproduced from its artifacts alone.
struct ExperimentConfig {
    std::string preset = "paper";
    StudyKind study = StudyKind::Sweep;

    RoomModel room;
    SignalSpec signal;
    FxLmsConfig fxlms;
    std::size_t rir_taps = 1000;

    Position noise_source{3.0, 2.0, 1.5};
    Position microphone{1.0, 3.0, 1.5};

    double grid_spacing = 0.11;
    double grid_z = 1.53;
    double grid_margin = 0.1;
    double exclusion_radius = 0.05;

    std::size_t mc_runs = 100;
    std::array<double, 2> mc_x_interval{1.0, 6.0};
    std::array<double, 2> mc_y_interval{1.0, 4.0};
    double mc_placement_z = 1.5;
    std::uint64_t mc_base_seed = 12345;

    SweepConfig sweep_config() const;
    MonteCarloConfig monte_carlo_config() const;
};

// "paper": the full-scale study (100 s signals, 0.11 m grid, 100 runs).
// "desk":  a reduced study for quick iteration and the test suite
//          (10 s signals, 0.5 m grid, 10 runs, faster adaptation).
ExperimentConfig preset_config(const std::string& name);

// Partial JSON config: starts from the file's preset (default "paper") and
// overrides whatever keys are present.
ExperimentConfig load_config(const std::filesystem::path& file);

void save_config(const std::filesystem::path& file, const ExperimentConfig& config);
std::string config_json(const ExperimentConfig& config);
std::uint64_t config_hash(const ExperimentConfig& config);

} // namespace ancsim
