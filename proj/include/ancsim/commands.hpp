#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "ancsim/config.hpp"

namespace ancsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;     // bad configuration or input data
inline constexpr int kExitGeometry = 3;   // invalid source/receiver placement
inline constexpr int kExitDiverged = 4;   // the adaptive filter blew up

struct CommandIo {
    std::ostream& out;   // results (parse-friendly key/value lines)
    std::ostream& err;   // progress and diagnostics
};

struct RirArgs {
    std::optional<Position> source;     // defaults to the config noise source
    std::optional<Position> receiver;   // defaults to the config microphone
    std::optional<std::size_t> taps;
    bool anechoic = false;
};

int cmd_rir(const ExperimentConfig& config, const RirArgs& args,
            const std::filesystem::path& out_dir, const CommandIo& io);

int cmd_signal(const ExperimentConfig& config,
               const std::filesystem::path& out_dir, const CommandIo& io);

int cmd_simulate(const ExperimentConfig& config, const Position& antinoise,
                 const std::filesystem::path& out_dir, const CommandIo& io);

int cmd_sweep(const ExperimentConfig& config,
              const std::filesystem::path& out_dir, unsigned workers,
              bool show_progress, const CommandIo& io);

int cmd_montecarlo(const ExperimentConfig& config,
                   const std::filesystem::path& out_dir, unsigned workers,
                   bool show_progress, const CommandIo& io);

} // namespace ancsim
