// Acceptance suite: every release-gating check in one binary. Each criterion
// prints a single PASS/FAIL line; the exit status is the number of failures.
//
//   acceptance_tests            run everything
//   acceptance_tests 1 4 6      run a subset by number
//
// Criteria 7 and 9 share one sweep; running them in the same invocation
// computes it once.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ancsim/config.hpp"
#include "ancsim/errors.hpp"
#include "ancsim/fxlms.hpp"
#include "ancsim/metrics.hpp"
#include "ancsim/rir.hpp"
#include "ancsim/rng.hpp"
#include "ancsim/signals.hpp"
#include "ancsim/sweep.hpp"
#include "oracles.hpp"

using namespace ancsim;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
    void note(const std::string& what) {
        detail << (detail.str().empty() ? "" : "; ") << what;
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

ImpulseResponse unit_impulse() { return {{1.0}, 2000.0}; }

double rir_energy(const ImpulseResponse& ir) {
    double e = 0.0;
    for (double t : ir.taps) e += t * t;
    return e;
}

// ---- criterion bodies ------------------------------------------------

// Free-field arrival against the analytic Green's function.
void c1_rir_free_field(Check& c) {
    RoomModel room;
    room.reflection.fill(0.0);
    const auto ir = generate_rir(room, {3, 2, 1.5}, {1, 3, 1.5}, 60);

    std::size_t argmax = 0;
    for (std::size_t i = 0; i < ir.taps.size(); ++i)
        if (std::abs(ir.taps[i]) > std::abs(ir.taps[argmax])) argmax = i;
    c.expect(argmax == 13, "arrival not centered at sample 13");

    const double expected = std::pow(1.0 / (4.0 * std::numbers::pi * std::sqrt(5.0)), 2);
    const double ratio = rir_energy(ir) / expected;
    c.note("energy ratio " + fmt(ratio));
    c.expect(std::abs(ratio - 1.0) <= 0.02, "energy off by more than 2%");
}

// Implementation vs the independent image enumeration at order <= 3.
void c2_rir_brute_force(Check& c) {
    const RoomModel room;
    const Position src{3, 2, 1.5};
    const Position rcv{1, 3, 1.5};
    const auto ir = generate_rir(room, src, rcv, 50, 3);
    const auto ref = oracles::ism_brute_force(room, src, rcv, 50, 3);

    double max_diff = 0.0;
    for (std::size_t i = 0; i < ir.taps.size(); ++i)
        max_diff = std::max(max_diff, std::abs(ir.taps[i] - ref[i]));
    c.note("max tap difference " + fmt(max_diff));
    c.expect(max_diff <= 1e-9, "exceeds 1e-9");
}

// Decay-curve shape and the reverberation-time sanity band.
void c3_edc_t60(Check& c) {
    const RoomModel room;
    const auto primary = generate_rir(room, {3, 2, 1.5}, {1, 3, 1.5}, 1000);
    const auto edc = energy_decay_curve(primary);
    c.expect(edc.front() == 0.0, "EDC does not start at 0 dB");
    for (std::size_t i = 1; i < edc.size(); ++i) {
        if (!(edc[i] <= edc[i - 1])) {
            c.expect(false, "EDC increases at sample " + std::to_string(i));
            break;
        }
    }
    const double t60 = estimate_t60(edc, room.sample_rate);
    c.note("t60 " + fmt(t60) + " s");
    c.expect(t60 >= 0.2 && t60 <= 0.6, "t60 outside [0.2, 0.6] s");
}

// The frozen hand trace plus the independent LMS loop.
void c4_fxlms_oracles(Check& c) {
    const std::vector<double> x5{1.0, 0.5, -0.3, 0.2, 0.1};
    FxLmsConfig config;
    config.filter_length = 2;
    config.step_size = 0.1;
    const auto hand = run_fxlms(x5, unit_impulse(), unit_impulse(), unit_impulse(), config);
    const std::vector<double> expected_e{1.0, 0.45, -0.28575, 0.18299925, 0.081482247};
    const std::vector<double> expected_w{-0.13554730747, -0.02685216744};
    for (std::size_t n = 0; n < x5.size(); ++n)
        c.expect(std::abs(hand.error[n] - expected_e[n]) <= 1e-12,
                 "hand trace e[" + std::to_string(n) + "]");
    for (std::size_t k = 0; k < 2; ++k)
        c.expect(std::abs(hand.final_weights[k] - expected_w[k]) <= 1e-12,
                 "hand trace w[" + std::to_string(k) + "]");

    Rng rng(41);
    std::vector<double> x(1000);
    for (auto& v : x) v = rng.gaussian();
    config.filter_length = 16;
    config.step_size = 1e-3;
    const auto run = run_fxlms(x, unit_impulse(), unit_impulse(), unit_impulse(), config);
    const auto ref = oracles::lms_reference(x, 16, 1e-3);
    double max_diff = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n)
        max_diff = std::max(max_diff, std::abs(run.error[n] - ref.error[n]));
    for (std::size_t k = 0; k < 16; ++k)
        max_diff = std::max(max_diff, std::abs(run.final_weights[k] - ref.weights[k]));
    c.note("max LMS difference " + fmt(max_diff));
    c.expect(max_diff <= 1e-12, "identity-path run deviates from minimal LMS");
}

// Steady-state cancellation of a pure tone through identity paths.
void c5_tone_cancellation(Check& c) {
    std::vector<double> x(20000);
    for (std::size_t n = 0; n < x.size(); ++n)
        x[n] = std::sin(2.0 * std::numbers::pi * 30.0 * static_cast<double>(n) / 2000.0);
    FxLmsConfig config;
    config.filter_length = 32;
    config.step_size = 1e-3;
    const auto run = run_fxlms(x, unit_impulse(), unit_impulse(), unit_impulse(), config);
    c.expect(!run.diverged, "diverged");
    const double a_db = estimated_attenuation(run.desired, run.error).db;
    c.note("attenuation " + fmt(a_db) + " dB");
    c.expect(a_db >= 20.0, "below 20 dB");
}

// Metric identities and threshold shift-equivariance.
void c6_metric_identities(Check& c) {
    Rng rng(61);
    std::vector<double> d(600);
    for (auto& v : d) v = rng.gaussian();
    c.expect(estimated_attenuation(d, d).db == 0.0, "A(d, d) != 0");

    std::vector<double> tenth(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) tenth[i] = d[i] / 10.0;
    c.expect(std::abs(estimated_attenuation(d, tenth).db - 20.0) <= 1e-9,
             "A(d, d/10) != 20 dB");

    std::vector<double> values(500);
    for (auto& v : values) v = rng.gaussian() * 3.0 + 5.0;
    const double base = threshold_top(values);
    for (double shift : {-7.0, 11.0}) {
        std::vector<double> shifted(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) shifted[i] = values[i] + shift;
        const double cs = threshold_top(shifted);
        c.expect(std::abs(cs - (base + shift)) <= 1e-9, "threshold does not shift");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if ((values[i] >= base) != (shifted[i] >= cs)) {
                c.expect(false, "mask changed under shift");
                break;
            }
        }
    }
}

// Shared by criteria 7 and 9: the reduced-scale study-room sweep.
struct SweepOutcome {
    SweepConfig config;
    AttenuationMap map;
    Position best;
};

const SweepOutcome& study_sweep() {
    static const SweepOutcome outcome = [] {
        SweepConfig cfg = preset_config("desk").sweep_config();
        cfg.grid_spacing = 0.25;
        cfg.signal.duration_s = 20.0;
        SweepOutcome out{cfg, run_sweep(cfg), {}};
        out.best = {out.map.grid_x[out.map.argmax_ix], out.map.grid_y[out.map.argmax_iy],
                    cfg.grid_z};
        return out;
    }();
    return outcome;
}

// The best anti-noise position lands next to the error microphone.
void c7_near_microphone_optimum(Check& c) {
    const SweepOutcome& sweep = study_sweep();
    const double dist_to_mic = distance(sweep.best, sweep.config.microphone);
    c.note("best cell (" + fmt(sweep.best.x) + ", " + fmt(sweep.best.y) + "), " +
           fmt(dist_to_mic) + " m from mic, " + fmt(sweep.map.max_db) + " dB");
    c.expect(sweep.map.present_count > 0, "no cells present");
    c.expect(dist_to_mic <= 0.5, "argmax further than 0.5 m from the microphone");
}

// Reduced-scale Monte-Carlo statistics.
void c8_monte_carlo(Check& c) {
    MonteCarloConfig mc = preset_config("desk").monte_carlo_config();
    const MonteCarloResult result = run_monte_carlo(mc);
    c.note("runs " + std::to_string(result.records.size()) + ", mean " +
           fmt(result.mean_db) + " dB, max " + fmt(result.max_db) + " dB, improvement " +
           fmt(result.improvement_db) + " dB");
    c.expect(result.records.size() == mc.runs, "not every run completed");
    c.expect(result.mean_db >= 2.0 && result.mean_db <= 9.0,
             "mean attenuation outside [2, 9] dB");
    c.expect(result.improvement_db >= 3.0, "improvement below 3 dB");
}

// Narrowband lines of e sit well below those of d at the best position.
void c9_psd_line_attenuation(Check& c) {
    const SweepOutcome& sweep = study_sweep();
    const SweepConfig& cfg = sweep.config;

    const auto x = synthesize(cfg.signal);
    const auto primary =
        generate_rir(cfg.room, cfg.noise_source, cfg.microphone, cfg.rir_taps);
    const auto secondary =
        generate_rir(cfg.room, sweep.best, cfg.microphone, cfg.rir_taps);
    const auto run = run_fxlms(x, primary, secondary, secondary, cfg.fxlms);
    c.expect(!run.diverged, "best-cell run diverged");

    const std::size_t skip = run.error.size() / 3;
    const Psd psd_d = psd(std::span<const double>(run.desired).subspan(skip), 2000.0);
    const Psd psd_e = psd(std::span<const double>(run.error).subspan(skip), 2000.0);
    for (double line_hz : {30.0, 60.0, 90.0}) {
        const double before = psd_peak_near(psd_d, line_hz, 1.0);
        const double after = psd_peak_near(psd_e, line_hz, 1.0);
        c.note(fmt(line_hz) + " Hz: " + fmt(before - after) + " dB down");
        c.expect(after <= before - 10.0,
                 fmt(line_hz) + " Hz line attenuated by less than 10 dB");
    }
}

// Byte-stable sweep across reruns and worker counts.
void c10_determinism(Check& c) {
    SweepConfig cfg = preset_config("desk").sweep_config();
    cfg.signal.duration_s = 5.0;

    const AttenuationMap first = run_sweep(cfg, 1);
    const AttenuationMap again = run_sweep(cfg, 1);
    const AttenuationMap wide = run_sweep(cfg, 4);

    bool identical = first.values.size() == again.values.size() &&
                     first.values.size() == wide.values.size();
    for (std::size_t i = 0; identical && i < first.values.size(); ++i) {
        identical = first.present[i] == again.present[i] &&
                    first.present[i] == wide.present[i];
        if (identical && first.present[i]) {
            // bit-for-bit, hence the exact comparisons
            identical = first.values[i] == again.values[i] &&
                        first.values[i] == wide.values[i];
        }
    }
    c.expect(identical, "maps differ across reruns or worker counts");
    c.expect(first.threshold_db == wide.threshold_db, "thresholds differ");
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Check&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "rir-free-field", c1_rir_free_field},
        {2, "rir-brute-force-equivalence", c2_rir_brute_force},
        {3, "edc-monotonicity-t60", c3_edc_t60},
        {4, "fxlms-oracle-equivalence", c4_fxlms_oracles},
        {5, "tone-cancellation", c5_tone_cancellation},
        {6, "metric-identities", c6_metric_identities},
        {7, "near-microphone-optimum", c7_near_microphone_optimum},
        {8, "monte-carlo-statistics", c8_monte_carlo},
        {9, "psd-line-attenuation", c9_psd_line_attenuation},
        {10, "determinism-parallel-equivalence", c10_determinism},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& criterion : criteria()) {
        if (!wanted.empty() && !wanted.count(criterion.id)) continue;
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        std::printf("%s %2d %-34s (%.2f s)%s%s\n", check.ok ? "PASS" : "FAIL",
                    criterion.id, criterion.name, elapsed,
                    check.detail.str().empty() ? "" : " -- ",
                    check.detail.str().c_str());
        std::fflush(stdout);
        if (!check.ok) ++failures;
    }
    return failures;
}
