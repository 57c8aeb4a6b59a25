#include "ancsim/rir.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "ancsim/errors.hpp"

namespace ancsim {

void RoomModel::validate() const {
    for (double dim : dimensions)
        if (!(dim > 0.0)) throw ConfigError("room: dimensions must be positive");
    for (double beta : reflection)
        if (!(beta >= 0.0 && beta <= 1.0))
            throw ConfigError("room: reflection coefficients must lie in [0, 1]");
    if (!(sound_speed > 0.0)) throw ConfigError("room: sound_speed must be positive");
    if (!(sample_rate > 0.0)) throw ConfigError("room: sample_rate must be positive");
}

namespace {

constexpr double kMinSeparation = 0.01;   // meters

std::atomic<std::uint64_t> g_rir_calls{0};

struct AxisImage {
    double displacement;   // image-to-receiver offset along the axis, meters
    double reflectance;    // product of wall coefficients picked up on the way
    int order;             // number of wall bounces along the axis
};

double ipow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// Mirror images along one axis. For image index m and parity q in {0,1} the
// source image sits at (1-2q)*s + 2*m*L, having bounced |m-q| times off the
// lower wall and |m| times off the upper one.
std::vector<AxisImage> axis_images(double source, double receiver, double room_len,
                                   double beta_lo, double beta_hi, double max_reach) {
    std::vector<AxisImage> images;
    const int m_max = static_cast<int>(std::ceil(max_reach / (2.0 * room_len))) + 1;
    for (int m = -m_max; m <= m_max; ++m) {
        for (int q = 0; q <= 1; ++q) {
            const double disp = (1 - 2 * q) * source - receiver + 2.0 * m * room_len;
            if (std::abs(disp) > max_reach) continue;
            const int lo = std::abs(m - q);
            const int hi = std::abs(m);
            images.push_back({disp, ipow(beta_lo, lo) * ipow(beta_hi, hi), lo + hi});
        }
    }
    return images;
}

// Hann-windowed sinc deposit centered at a fractional delay (in samples).
void deposit(std::vector<double>& taps, double delay, double gain) {
    constexpr int hw = kFracDelayHalfWidth;
    const int n_lo = std::max(0, static_cast<int>(std::ceil(delay - hw)));
    const int n_hi = std::min(static_cast<int>(taps.size()) - 1,
                              static_cast<int>(std::floor(delay + hw)));
    if (n_lo > n_hi) return;

    // sin(pi*(n - delay)) = -cos(pi*n) * sin(pi*delay); one trig call covers
    // the whole window. Evaluated on [0, 0.5] via sin(pi f) = sin(pi (1-f))
    // so a delay just below an integer keeps full precision.
    const double frac = delay - std::floor(delay);
    const double sin_pi_frac =
        std::sin(std::numbers::pi * (frac <= 0.5 ? frac : 1.0 - frac));
    const int base = static_cast<int>(std::floor(delay));

    for (int n = n_lo; n <= n_hi; ++n) {
        const double t = n - delay;
        const double window = 0.5 * (1.0 + std::cos(std::numbers::pi * t / hw));
        double sinc;
        if (t == 0.0) {
            sinc = 1.0;
        } else {
            // sin(pi*(k - frac)) = (-1)^(k+1) * sin(pi*frac) for integer k
            const double sign = ((n - base) % 2 == 0) ? -1.0 : 1.0;
            sinc = sign * sin_pi_frac / (std::numbers::pi * t);
        }
        taps[static_cast<std::size_t>(n)] += gain * window * sinc;
    }
}

} // namespace

ImpulseResponse generate_rir(const RoomModel& room,
                             const Position& source,
                             const Position& receiver,
                             std::size_t num_taps,
                             int max_order) {
    room.validate();
    if (num_taps == 0) throw ConfigError("generate_rir: num_taps must be positive");
    if (!room.contains(source)) throw GeometryError("generate_rir: source outside room");
    if (!room.contains(receiver)) throw GeometryError("generate_rir: receiver outside room");
    if (distance(source, receiver) <= kMinSeparation)
        throw GeometryError("generate_rir: source and receiver closer than 1 cm");

    g_rir_calls.fetch_add(1, std::memory_order_relaxed);

    const double meters_per_sample = room.sound_speed / room.sample_rate;
    // Everything whose interpolation window can touch the requested taps.
    const double max_path =
        (static_cast<double>(num_taps) + kFracDelayHalfWidth) * meters_per_sample;

    const auto xs = axis_images(source.x, receiver.x, room.dimensions[0],
                                room.reflection[0], room.reflection[1], max_path);
    const auto ys = axis_images(source.y, receiver.y, room.dimensions[1],
                                room.reflection[2], room.reflection[3], max_path);
    const auto zs = axis_images(source.z, receiver.z, room.dimensions[2],
                                room.reflection[4], room.reflection[5], max_path);

    ImpulseResponse ir;
    ir.sample_rate = room.sample_rate;
    ir.taps.assign(num_taps, 0.0);

    const double max_path_sq = max_path * max_path;
    for (const auto& xi : xs) {
        const double dx2 = xi.displacement * xi.displacement;
        for (const auto& yi : ys) {
            const double dxy2 = dx2 + yi.displacement * yi.displacement;
            if (dxy2 > max_path_sq) continue;
            const double refl_xy = xi.reflectance * yi.reflectance;
            const int order_xy = xi.order + yi.order;
            for (const auto& zi : zs) {
                if (max_order >= 0 && order_xy + zi.order > max_order) continue;
                const double d2 = dxy2 + zi.displacement * zi.displacement;
                if (d2 > max_path_sq) continue;
                const double dist = std::sqrt(d2);
                const double gain =
                    refl_xy * zi.reflectance / (4.0 * std::numbers::pi * dist);
                deposit(ir.taps, dist / meters_per_sample, gain);
            }
        }
    }
    return ir;
}

std::vector<double> energy_decay_curve(const ImpulseResponse& ir) {
    if (ir.taps.empty()) throw DataError("energy_decay_curve: empty impulse response");

    std::vector<double> tail_energy(ir.taps.size());
    double acc = 0.0;
    for (std::size_t i = ir.taps.size(); i-- > 0;) {
        acc += ir.taps[i] * ir.taps[i];
        tail_energy[i] = acc;
    }
    const double total = tail_energy[0];
    if (total == 0.0) throw DataError("energy_decay_curve: all-zero impulse response");

    std::vector<double> edc(ir.taps.size());
    for (std::size_t i = 0; i < edc.size(); ++i)
        edc[i] = 10.0 * std::log10(tail_energy[i] / total);
    return edc;
}

double estimate_t60(std::span<const double> edc_db, double sample_rate) {
    if (sample_rate <= 0.0) throw ConfigError("estimate_t60: sample_rate must be positive");
    if (edc_db.empty()) throw DataError("estimate_t60: empty decay curve");

    std::size_t n5 = edc_db.size();
    std::size_t n25 = edc_db.size();
    for (std::size_t i = 0; i < edc_db.size(); ++i) {
        if (n5 == edc_db.size() && edc_db[i] <= -5.0) n5 = i;
        if (edc_db[i] <= -25.0) { n25 = i; break; }
    }
    if (n25 == edc_db.size())
        throw DataError("estimate_t60: decay curve never reaches -25 dB");

    // Least squares over the finite samples of the fit window.
    double sn = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = n5; i <= n25; ++i) {
        if (!std::isfinite(edc_db[i])) continue;
        const double t = static_cast<double>(i) / sample_rate;
        sn += 1.0;
        sx += t;
        sy += edc_db[i];
        sxx += t * t;
        sxy += t * edc_db[i];
    }
    const double det = sn * sxx - sx * sx;
    if (sn < 2.0 || det <= 0.0)
        throw DataError("estimate_t60: decay range too short for a slope fit");
    const double slope = (sn * sxy - sx * sy) / det;   // dB per second
    if (slope >= 0.0)
        throw DataError("estimate_t60: non-decaying fit window");
    return -60.0 / slope;
}

std::uint64_t rir_generation_count() {
    return g_rir_calls.load(std::memory_order_relaxed);
}

} // namespace ancsim
