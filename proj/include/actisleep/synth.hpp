#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "actisleep/model.hpp"

namespace actisleep {

/// A planted in-night awakening. Times are absolute seconds on the same axis
/// as the recording timestamps.
struct Awakening {
    double start = 0.0;
    double duration_s = 0.0;
};

/// Specification for a deterministic synthetic recording with known ground
/// truth. Activity magnitude is planted on the x axis; noise is uniform in
/// [-noise, +noise] so VM bounds stay exact.
struct SynthSpec {
    std::uint64_t seed = 0;
    std::string id = "synth";
    double rate_hz = 1.0;
    double start_time = 0.0;          // recording start, epoch seconds
    double duration_s = 8.0 * 3600.0; // total recording span
    double night_start = 0.0;         // planted onset (absolute seconds)
    double night_end = 0.0;           // planted offset (absolute seconds)
    double wake_level = 10.0;
    double wake_noise = 0.0;
    double sleep_level = 0.0;
    double sleep_noise = 0.0;
    std::vector<Awakening> awakenings;

    /// Throws BadSpec: positive rate/duration, levels ordered (sleep < wake),
    /// noise half-widths that keep magnitudes non-negative, night inside the
    /// recording, awakenings inside the night.
    void validate() const;
};

struct SynthOutput {
    Recording recording;
    Annotation annotation;
};

/// Deterministic generation: same spec, same output. The annotation carries
/// the planted onset/offset and the derived TST/WASO/efficiency.
SynthOutput generate(const SynthSpec& spec);

}  // namespace actisleep
