#include "ancsim/config.hpp"

#include <fstream>

#include <json.hpp>

#include "ancsim/errors.hpp"

namespace ancsim {

using nlohmann::json;

std::string to_string(StudyKind kind) {
    switch (kind) {
        case StudyKind::Rir: return "rir";
        case StudyKind::Signal: return "signal";
        case StudyKind::Simulate: return "simulate";
        case StudyKind::Sweep: return "sweep";
        case StudyKind::MonteCarlo: return "montecarlo";
    }
    return "unknown";
}

StudyKind study_from_string(const std::string& name) {
    if (name == "rir") return StudyKind::Rir;
    if (name == "signal") return StudyKind::Signal;
    if (name == "simulate") return StudyKind::Simulate;
    if (name == "sweep") return StudyKind::Sweep;
    if (name == "montecarlo") return StudyKind::MonteCarlo;
    throw ConfigError("unknown study kind: " + name);
}

SweepConfig ExperimentConfig::sweep_config() const {
    SweepConfig cfg;
    cfg.room = room;
    cfg.noise_source = noise_source;
    cfg.microphone = microphone;
    cfg.grid_spacing = grid_spacing;
    cfg.grid_z = grid_z;
    cfg.grid_margin = grid_margin;
    cfg.exclusion_radius = exclusion_radius;
    cfg.signal = signal;
    cfg.fxlms = fxlms;
    cfg.rir_taps = rir_taps;
    return cfg;
}

MonteCarloConfig ExperimentConfig::monte_carlo_config() const {
    MonteCarloConfig cfg;
    cfg.runs = mc_runs;
    cfg.x_interval = mc_x_interval;
    cfg.y_interval = mc_y_interval;
    cfg.placement_z = mc_placement_z;
    cfg.base_seed = mc_base_seed;
    cfg.sweep_template = sweep_config();
    return cfg;
}

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;   // defaults are the paper-scale study
    cfg.preset = name;
    cfg.signal.seed = 12345;
    if (name == "paper") return cfg;
    if (name == "desk") {
        cfg.signal.duration_s = 10.0;
        // 3e-5 reaches at 10 s roughly where the paper-scale step lands at
        // 100 s, keeping the reduced study's attenuation spread comparable.
        cfg.fxlms.step_size = 3e-5;
        cfg.grid_spacing = 0.5;
        cfg.mc_runs = 10;
        return cfg;
    }
    throw ConfigError("unknown preset: " + name + " (expected paper or desk)");
}

namespace {

template <typename T>
void maybe_get(const json& j, const char* key, T& target) {
    if (j.contains(key)) target = j.at(key).get<T>();
}

void get_position(const json& j, const char* key, Position& target) {
    if (!j.contains(key)) return;
    const auto v = j.at(key).get<std::vector<double>>();
    if (v.size() != 3) throw ConfigError(std::string("config: ") + key + " needs 3 values");
    target = {v[0], v[1], v[2]};
}

json position_json(const Position& p) { return json::array({p.x, p.y, p.z}); }

} // namespace

ExperimentConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config: " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in " + file.string() + ": " + e.what());
    }

    try {
        std::string preset = "paper";
        maybe_get(j, "preset", preset);
        ExperimentConfig cfg = preset_config(preset);

        if (j.contains("study")) cfg.study = study_from_string(j.at("study").get<std::string>());

        if (j.contains("room")) {
            const auto& r = j.at("room");
            maybe_get(r, "dimensions", cfg.room.dimensions);
            maybe_get(r, "reflection_coeffs", cfg.room.reflection);
            maybe_get(r, "sound_speed", cfg.room.sound_speed);
            maybe_get(r, "sample_rate", cfg.room.sample_rate);
        }
        if (j.contains("signal")) {
            const auto& s = j.at("signal");
            maybe_get(s, "fundamental_hz", cfg.signal.fundamental_hz);
            maybe_get(s, "sine_coeffs", cfg.signal.sine_coeffs);
            maybe_get(s, "cosine_coeffs", cfg.signal.cosine_coeffs);
            maybe_get(s, "noise_variance", cfg.signal.noise_variance);
            maybe_get(s, "sample_rate", cfg.signal.sample_rate);
            maybe_get(s, "duration_s", cfg.signal.duration_s);
            maybe_get(s, "seed", cfg.signal.seed);
        }
        if (j.contains("fxlms")) {
            const auto& f = j.at("fxlms");
            maybe_get(f, "filter_length", cfg.fxlms.filter_length);
            maybe_get(f, "step_size", cfg.fxlms.step_size);
        }
        maybe_get(j, "rir_taps", cfg.rir_taps);
        if (j.contains("scenario")) {
            const auto& s = j.at("scenario");
            get_position(s, "noise_source", cfg.noise_source);
            get_position(s, "microphone", cfg.microphone);
        }
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            maybe_get(g, "spacing", cfg.grid_spacing);
            maybe_get(g, "z", cfg.grid_z);
            maybe_get(g, "margin", cfg.grid_margin);
            maybe_get(g, "exclusion_radius", cfg.exclusion_radius);
        }
        if (j.contains("montecarlo")) {
            const auto& m = j.at("montecarlo");
            maybe_get(m, "runs", cfg.mc_runs);
            maybe_get(m, "x_interval", cfg.mc_x_interval);
            maybe_get(m, "y_interval", cfg.mc_y_interval);
            maybe_get(m, "placement_z", cfg.mc_placement_z);
            maybe_get(m, "base_seed", cfg.mc_base_seed);
        }
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError("config field error in " + file.string() + ": " + e.what());
    }
}

std::string config_json(const ExperimentConfig& cfg) {
    json j;
    j["preset"] = cfg.preset;
    j["study"] = to_string(cfg.study);
    j["room"] = {{"dimensions", cfg.room.dimensions},
                 {"reflection_coeffs", cfg.room.reflection},
                 {"sound_speed", cfg.room.sound_speed},
                 {"sample_rate", cfg.room.sample_rate}};
    j["signal"] = {{"fundamental_hz", cfg.signal.fundamental_hz},
                   {"sine_coeffs", cfg.signal.sine_coeffs},
                   {"cosine_coeffs", cfg.signal.cosine_coeffs},
                   {"noise_variance", cfg.signal.noise_variance},
                   {"sample_rate", cfg.signal.sample_rate},
                   {"duration_s", cfg.signal.duration_s},
                   {"seed", cfg.signal.seed}};
    j["fxlms"] = {{"filter_length", cfg.fxlms.filter_length},
                  {"step_size", cfg.fxlms.step_size}};
    j["rir_taps"] = cfg.rir_taps;
    j["scenario"] = {{"noise_source", position_json(cfg.noise_source)},
                     {"microphone", position_json(cfg.microphone)}};
    j["grid"] = {{"spacing", cfg.grid_spacing},
                 {"z", cfg.grid_z},
                 {"margin", cfg.grid_margin},
                 {"exclusion_radius", cfg.exclusion_radius}};
    j["montecarlo"] = {{"runs", cfg.mc_runs},
                       {"x_interval", cfg.mc_x_interval},
                       {"y_interval", cfg.mc_y_interval},
                       {"placement_z", cfg.mc_placement_z},
                       {"base_seed", cfg.mc_base_seed}};
    return j.dump(2) + "\n";
}

void save_config(const std::filesystem::path& file, const ExperimentConfig& config) {
    std::ofstream out(file);
    if (!out) throw ConfigError("cannot write config: " + file.string());
    out << config_json(config);
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    // FNV-1a over the canonical JSON text.
    const std::string text = config_json(config);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace ancsim
