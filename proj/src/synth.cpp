#include "actisleep/synth.hpp"

#include <cmath>

namespace actisleep {

namespace {

// splitmix64: tiny, seedable, stable across platforms. Good enough for
// bounded uniform jitter; statistical quality is not a concern here.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // Uniform in [-1, 1).
    double symmetric() { return 2.0 * ((next() >> 11) * 0x1.0p-53) - 1.0; }
};

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void SynthSpec::validate() const {
    if (!std::isfinite(rate_hz) || rate_hz <= 0.0) throw BadSpec("sample rate must be positive");
    if (!std::isfinite(duration_s) || duration_s <= 0.0)
        throw BadSpec("recording duration must be positive");
    if (!std::isfinite(start_time)) throw BadSpec("start time must be finite");
    if (!finite_nonneg(sleep_level)) throw BadSpec("sleep activity level must be >= 0");
    if (!std::isfinite(wake_level) || wake_level <= sleep_level)
        throw BadSpec("wake activity level must exceed the sleep level");
    if (!finite_nonneg(sleep_noise) || !finite_nonneg(wake_noise))
        throw BadSpec("noise half-widths must be >= 0");
    if (sleep_level - sleep_noise < 0.0 || wake_level - wake_noise < 0.0)
        throw BadSpec("noise half-width exceeds its level; magnitudes would go negative");
    if (!(night_start < night_end)) throw BadSpec("night start must precede night end");
    if (night_start < start_time || night_end > start_time + duration_s)
        throw BadSpec("night interval must lie inside the recording");
    for (const Awakening& a : awakenings) {
        if (!std::isfinite(a.start) || !std::isfinite(a.duration_s) || a.duration_s <= 0.0)
            throw BadSpec("awakening duration must be positive");
        if (a.start < night_start || a.start + a.duration_s > night_end)
            throw BadSpec("awakening must lie inside the night interval");
    }
}

SynthOutput generate(const SynthSpec& spec) {
    spec.validate();

    SplitMix64 rng(spec.seed);
    const std::size_t n =
        static_cast<std::size_t>(std::llround(spec.duration_s * spec.rate_hz));

    SynthOutput out;
    out.recording.id = spec.id;
    out.recording.nominal_rate_hz = spec.rate_hz;
    out.recording.samples.reserve(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double t = spec.start_time + static_cast<double>(i) / spec.rate_hz;

        bool asleep = t >= spec.night_start && t < spec.night_end;
        if (asleep) {
            for (const Awakening& a : spec.awakenings) {
                if (t >= a.start && t < a.start + a.duration_s) {
                    asleep = false;
                    break;
                }
            }
        }

        const double level = asleep ? spec.sleep_level : spec.wake_level;
        const double noise = asleep ? spec.sleep_noise : spec.wake_noise;
        AccelSample s;
        s.timestamp = t;
        s.x = level + noise * rng.symmetric();
        out.recording.samples.push_back(s);
    }

    double awake_s = 0.0;
    for (const Awakening& a : spec.awakenings) awake_s += a.duration_s;
    const double night_s = spec.night_end - spec.night_start;

    Annotation& ann = out.annotation;
    ann.id = spec.id;
    ann.onset = TimeMark::instant(spec.night_start);
    ann.offset = TimeMark::instant(spec.night_end);
    ann.tst_minutes = (night_s - awake_s) / 60.0;
    ann.waso_minutes = awake_s / 60.0;
    ann.efficiency_pct = night_s > 0.0 ? (*ann.tst_minutes / (night_s / 60.0)) * 100.0 : 0.0;
    return out;
}

}  // namespace actisleep
