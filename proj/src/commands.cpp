#include "ancsim/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "ancsim/csv.hpp"
#include "ancsim/errors.hpp"
#include "ancsim/fxlms.hpp"
#include "ancsim/metrics.hpp"
#include "ancsim/rir.hpp"
#include "ancsim/sweep.hpp"

namespace ancsim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_outputs_preamble(const fs::path& out_dir, const ExperimentConfig& config) {
    fs::create_directories(out_dir);
    save_config(out_dir / "resolved_config.json", config);
}

void write_run_meta(const fs::path& out_dir, const ExperimentConfig& config,
                    unsigned workers, double wall_clock_s) {
    json meta;
    meta["config_hash"] = hash_hex(config_hash(config));
    meta["study"] = to_string(config.study);
    meta["signal_seed"] = config.signal.seed;
    meta["montecarlo_base_seed"] = config.mc_base_seed;
    meta["rng"] = "mt19937_64; uniform = 53-bit mantissa; gaussian = Box-Muller";
    meta["workers"] = workers;
    meta["wall_clock_s"] = wall_clock_s;
    std::ofstream out(out_dir / "run_meta.json");
    out << meta.dump(2) << "\n";
}

// Runs a command body and maps library errors onto the exit-code contract.
template <typename Fn>
int guarded(const CommandIo& io, const Fn& body) {
    try {
        return body();
    } catch (const GeometryError& e) {
        io.err << "geometry error: " << e.what() << "\n";
        return kExitGeometry;
    } catch (const Error& e) {
        io.err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

ProgressFn make_progress(bool enabled, std::ostream& err, const char* label) {
    if (!enabled) return {};
    return [&err, label](std::size_t done, std::size_t total) {
        const std::size_t stride = std::max<std::size_t>(1, total / 50);
        if (done % stride == 0 || done == total)
            err << label << " " << done << "/" << total << "\n";
    };
}

void write_psd_csv(const fs::path& file, const Psd& p) {
    const std::string header[] = {"frequency_hz", "power_db"};
    const std::vector<double> cols[] = {p.frequency_hz, p.power_db};
    write_table_csv(file, header, cols);
}

void write_summary(const fs::path& file, const AttenuationMap& map) {
    std::ofstream out(file);
    out << "cells_present " << map.present_count << "\n"
        << "mean_db " << format_double(map.mean_db) << "\n"
        << "std_db " << format_double(map.std_db) << "\n"
        << "min_db " << format_double(map.min_db) << "\n"
        << "max_db " << format_double(map.max_db) << "\n"
        << "threshold_db " << format_double(map.threshold_db) << "\n"
        << "argmax_x " << format_double(map.grid_x[map.argmax_ix]) << "\n"
        << "argmax_y " << format_double(map.grid_y[map.argmax_iy]) << "\n";
}

} // namespace

int cmd_rir(const ExperimentConfig& config, const RirArgs& args,
            const fs::path& out_dir, const CommandIo& io) {
    return guarded(io, [&] {
        ExperimentConfig cfg = config;
        if (args.anechoic) cfg.room.reflection.fill(0.0);
        const Position source = args.source.value_or(cfg.noise_source);
        const Position receiver = args.receiver.value_or(cfg.microphone);
        const std::size_t taps = args.taps.value_or(cfg.rir_taps);

        Stopwatch timer;
        write_outputs_preamble(out_dir, cfg);
        const ImpulseResponse ir = generate_rir(cfg.room, source, receiver, taps);
        write_column_csv(out_dir / "rir.csv", ir.taps);

        const std::vector<double> edc = energy_decay_curve(ir);
        write_column_csv(out_dir / "edc.csv", edc);

        io.out << "taps " << ir.taps.size() << "\n";
        try {
            io.out << "t60_s " << format_double(estimate_t60(edc, ir.sample_rate)) << "\n";
        } catch (const DataError& e) {
            io.err << "t60 unavailable: " << e.what() << "\n";
        }
        write_run_meta(out_dir, cfg, 1, timer.seconds());
        return kExitOk;
    });
}

int cmd_signal(const ExperimentConfig& config, const fs::path& out_dir,
               const CommandIo& io) {
    return guarded(io, [&] {
        Stopwatch timer;
        write_outputs_preamble(out_dir, config);
        const std::vector<double> x = synthesize(config.signal);
        write_column_csv(out_dir / "signal.csv", x);
        if (x.size() >= kWelchSegment)
            write_psd_csv(out_dir / "psd.csv", psd(x, config.signal.sample_rate));
        else
            io.err << "signal shorter than one Welch segment; psd.csv skipped\n";
        io.out << "samples " << x.size() << "\n";
        write_run_meta(out_dir, config, 1, timer.seconds());
        return kExitOk;
    });
}

int cmd_simulate(const ExperimentConfig& config, const Position& antinoise,
                 const fs::path& out_dir, const CommandIo& io) {
    return guarded(io, [&] {
        Stopwatch timer;
        write_outputs_preamble(out_dir, config);

        const std::vector<double> x = synthesize(config.signal);
        const ImpulseResponse primary = generate_rir(
            config.room, config.noise_source, config.microphone, config.rir_taps);
        const ImpulseResponse secondary = generate_rir(
            config.room, antinoise, config.microphone, config.rir_taps);
        const AncRunResult run = run_fxlms(x, primary, secondary, secondary, config.fxlms);

        std::vector<double> steps(run.error.size());
        for (std::size_t n = 0; n < steps.size(); ++n) steps[n] = static_cast<double>(n);
        const std::string header[] = {"n", "d", "e"};
        const std::vector<double> cols[] = {steps, run.desired, run.error};
        write_table_csv(out_dir / "trace.csv", header, cols);

        if (run.diverged) {
            io.err << "fxlms diverged after " << run.error.size() << " steps\n";
            write_run_meta(out_dir, config, 1, timer.seconds());
            return kExitDiverged;
        }

        // PSDs compare the same steady-state window the metric uses.
        const std::size_t skip = run.error.size() / 3;
        const std::span<const double> d_ss(run.desired.data() + skip,
                                           run.desired.size() - skip);
        const std::span<const double> e_ss(run.error.data() + skip,
                                           run.error.size() - skip);
        if (d_ss.size() >= kWelchSegment) {
            write_psd_csv(out_dir / "psd_d.csv", psd(d_ss, config.signal.sample_rate));
            write_psd_csv(out_dir / "psd_e.csv", psd(e_ss, config.signal.sample_rate));
        } else {
            io.err << "steady-state window shorter than one Welch segment; PSDs skipped\n";
        }

        const Attenuation att = estimated_attenuation(run.desired, run.error);
        io.out << "attenuation_db " << format_double(att.db) << "\n";
        if (att.perfect) io.out << "perfect_cancellation 1\n";
        write_run_meta(out_dir, config, 1, timer.seconds());
        return kExitOk;
    });
}

int cmd_sweep(const ExperimentConfig& config, const fs::path& out_dir,
              unsigned workers, bool show_progress, const CommandIo& io) {
    return guarded(io, [&] {
        Stopwatch timer;
        write_outputs_preamble(out_dir, config);
        const AttenuationMap map = run_sweep(config.sweep_config(), workers,
                                             make_progress(show_progress, io.err, "sweep"));
        write_map_csv(out_dir / "map.csv", map);
        write_mask_csv(out_dir / "mask.csv", map);
        write_column_csv(out_dir / "grid_x.csv", map.grid_x);
        write_column_csv(out_dir / "grid_y.csv", map.grid_y);
        write_summary(out_dir / "summary.txt", map);

        io.out << "cells " << map.present_count << "\n"
               << "mean_db " << format_double(map.mean_db) << "\n"
               << "max_db " << format_double(map.max_db) << "\n"
               << "best_x " << format_double(map.grid_x[map.argmax_ix]) << "\n"
               << "best_y " << format_double(map.grid_y[map.argmax_iy]) << "\n";
        write_run_meta(out_dir, config, workers, timer.seconds());
        return kExitOk;
    });
}

int cmd_montecarlo(const ExperimentConfig& config, const fs::path& out_dir,
                   unsigned workers, bool show_progress, const CommandIo& io) {
    return guarded(io, [&] {
        Stopwatch timer;
        write_outputs_preamble(out_dir, config);

        const MonteCarloConfig mc = config.monte_carlo_config();
        if (mc.x_interval[1] >= mc.sweep_template.room.dimensions[0] ||
            mc.y_interval[1] >= mc.sweep_template.room.dimensions[1]) {
            io.err << "placement interval touches a wall; boundary draws are redrawn\n";
        }
        const MonteCarloResult result = run_monte_carlo(
            mc, workers, make_progress(show_progress, io.err, "montecarlo"));

        std::vector<std::vector<double>> cols(9);
        for (const auto& rec : result.records) {
            cols[0].push_back(static_cast<double>(rec.run_index));
            cols[1].push_back(rec.noise_source.x);
            cols[2].push_back(rec.noise_source.y);
            cols[3].push_back(rec.microphone.x);
            cols[4].push_back(rec.microphone.y);
            cols[5].push_back(rec.best_position.x);
            cols[6].push_back(rec.best_position.y);
            cols[7].push_back(rec.best_db);
            cols[8].push_back(rec.mean_db);
        }
        const std::string header[] = {"run_index", "noise_x", "noise_y", "mic_x",
                                      "mic_y",     "best_x",  "best_y",  "best_db",
                                      "mean_db"};
        write_table_csv(out_dir / "montecarlo.csv", header, cols);

        for (std::size_t i = 0; i < result.maps.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "map_run_%03zu.csv",
                          result.records[i].run_index);
            write_map_csv(out_dir / name, result.maps[i]);
        }

        std::ofstream report(out_dir / "report.txt");
        report << "runs_completed " << result.records.size() << "\n"
               << "runs_failed " << result.failures.size() << "\n"
               << "cells " << result.cell_count << "\n"
               << "mean_db " << format_double(result.mean_db) << "\n"
               << "max_db " << format_double(result.max_db) << "\n"
               << "improvement_db " << format_double(result.improvement_db) << "\n";
        for (const auto& f : result.failures)
            io.err << "run " << f.run_index << " failed: " << f.reason << "\n";

        io.out << "runs " << result.records.size() << "\n"
               << "mean_db " << format_double(result.mean_db) << "\n"
               << "max_db " << format_double(result.max_db) << "\n"
               << "improvement_db " << format_double(result.improvement_db) << "\n";
        write_run_meta(out_dir, config, workers, timer.seconds());
        return kExitOk;
    });
}

} // namespace ancsim
