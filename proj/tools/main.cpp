#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ancsim/commands.hpp"
#include "ancsim/errors.hpp"

namespace {

using ancsim::ExperimentConfig;
using ancsim::Position;
using ancsim::StudyKind;

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    unsigned workers = 0;
    bool no_progress = false;

    std::optional<double> mu;
    std::optional<double> duration_s;
    std::optional<double> spacing;
    std::optional<std::size_t> runs;
};

Position to_position(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

// preset -> config file -> explicit flags, later sources win.
ExperimentConfig resolve(const CommonArgs& args, StudyKind study) {
    if (!args.config_path.empty() && !args.preset.empty())
        throw ancsim::ConfigError("--config and --preset are mutually exclusive; "
                                  "set \"preset\" inside the config file instead");
    ExperimentConfig cfg;
    if (!args.config_path.empty()) {
        cfg = ancsim::load_config(args.config_path);
        const bool cfg_is_study = cfg.study == StudyKind::Simulate ||
                                  cfg.study == StudyKind::Sweep ||
                                  cfg.study == StudyKind::MonteCarlo;
        const bool cmd_is_study = study == StudyKind::Simulate ||
                                  study == StudyKind::Sweep ||
                                  study == StudyKind::MonteCarlo;
        if (cfg_is_study && cmd_is_study && cfg.study != study)
            throw ancsim::ConfigError("config selects study '" + to_string(cfg.study) +
                                      "' but the subcommand is '" + to_string(study) + "'");
    } else {
        cfg = ancsim::preset_config(args.preset.empty() ? "paper" : args.preset);
    }
    cfg.study = study;
    if (args.seed) {
        cfg.signal.seed = *args.seed;
        cfg.mc_base_seed = *args.seed;
    }
    if (args.mu) cfg.fxlms.step_size = *args.mu;
    if (args.duration_s) cfg.signal.duration_s = *args.duration_s;
    if (args.spacing) cfg.grid_spacing = *args.spacing;
    if (args.runs) cfg.mc_runs = *args.runs;
    return cfg;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--preset", args.preset, "Parameter preset: paper or desk")
        ->check(CLI::IsMember({"paper", "desk"}));
    cmd->add_option("--out", args.out_dir, "Output directory (default: out)");
    cmd->add_option("--seed", args.seed, "Master seed (signal and Monte-Carlo)");
    cmd->add_option("--workers", args.workers, "Worker threads (0 = all cores)");
    cmd->add_flag("--no-progress", args.no_progress, "Silence progress output");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Room-acoustics active noise control simulator"};
    app.require_subcommand(1);

    CommonArgs args;

    auto* rir = app.add_subcommand("rir", "Generate a room impulse response");
    add_common(rir, args);
    std::vector<double> source_v, receiver_v, antinoise_v;
    std::optional<std::size_t> taps;
    bool anechoic = false;
    rir->add_option("--source", source_v, "Source position x y z")->expected(3);
    rir->add_option("--receiver", receiver_v, "Receiver position x y z")->expected(3);
    rir->add_option("--taps", taps, "Impulse response length in samples");
    rir->add_flag("--anechoic", anechoic, "Zero all wall reflections");

    auto* signal = app.add_subcommand("signal", "Synthesize the source signal");
    add_common(signal, args);

    auto* simulate = app.add_subcommand("simulate", "Run one FxLMS cancellation");
    add_common(simulate, args);
    simulate->add_option("--antinoise", antinoise_v, "Anti-noise source position x y z")
        ->expected(3)
        ->required();
    simulate->add_option("--mu", args.mu, "Adaptation step size");
    simulate->add_option("--duration", args.duration_s, "Signal duration in seconds");

    auto* sweep = app.add_subcommand("sweep", "Sweep anti-noise positions on a grid");
    add_common(sweep, args);
    sweep->add_option("--mu", args.mu, "Adaptation step size");
    sweep->add_option("--duration", args.duration_s, "Signal duration in seconds");
    sweep->add_option("--spacing", args.spacing, "Grid spacing in meters");

    auto* montecarlo =
        app.add_subcommand("montecarlo", "Monte-Carlo study over random placements");
    add_common(montecarlo, args);
    montecarlo->add_option("--mu", args.mu, "Adaptation step size");
    montecarlo->add_option("--duration", args.duration_s, "Signal duration in seconds");
    montecarlo->add_option("--spacing", args.spacing, "Grid spacing in meters");
    montecarlo->add_option("--runs", args.runs, "Number of Monte-Carlo runs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ancsim::kExitConfig;
    }

    const ancsim::CommandIo io{std::cout, std::cerr};
    try {
        if (rir->parsed()) {
            ancsim::RirArgs ra;
            if (!source_v.empty()) ra.source = to_position(source_v);
            if (!receiver_v.empty()) ra.receiver = to_position(receiver_v);
            ra.taps = taps;
            ra.anechoic = anechoic;
            return cmd_rir(resolve(args, StudyKind::Rir), ra, args.out_dir, io);
        }
        if (signal->parsed())
            return cmd_signal(resolve(args, StudyKind::Signal), args.out_dir, io);
        if (simulate->parsed())
            return cmd_simulate(resolve(args, StudyKind::Simulate),
                                to_position(antinoise_v), args.out_dir, io);
        if (sweep->parsed())
            return cmd_sweep(resolve(args, StudyKind::Sweep), args.out_dir, args.workers,
                             !args.no_progress, io);
        if (montecarlo->parsed())
            return cmd_montecarlo(resolve(args, StudyKind::MonteCarlo), args.out_dir,
                                  args.workers, !args.no_progress, io);
    } catch (const ancsim::GeometryError& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return ancsim::kExitGeometry;
    } catch (const ancsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ancsim::kExitConfig;
    }
    return ancsim::kExitConfig;
}
