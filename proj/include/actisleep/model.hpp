#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace actisleep {

// ---------------------------------------------------------------------------
// Error taxonomy. Every library failure mode throws one of these; the CLI
// maps them to nonzero exit codes.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error { using Error::Error; };
struct NonFiniteInput : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct BadWeights : Error { using Error::Error; };
struct NoValidEpochs : Error { using Error::Error; };
struct MissingColumn : Error { using Error::Error; };
struct EmptyRecording : Error { using Error::Error; };
struct NonMonotonicTime : Error { using Error::Error; };
struct BadTimeFormat : Error { using Error::Error; };
struct OutOfOrderSample : Error { using Error::Error; };
struct NoCompletedEpochs : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct IdMismatch : Error { using Error::Error; };
struct EmptyCorpus : Error { using Error::Error; };
struct BadGrid : Error { using Error::Error; };
struct BadSpec : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Time. All internal timestamps are real-valued seconds since the Unix epoch
// on a single naive axis (no timezone handling anywhere). Calendar parsing
// happens in ingest only.
// ---------------------------------------------------------------------------

/// A point in time that is either a full (dated) instant or a bare
/// time-of-day. Annotations come in both flavors; predictions are always
/// dated. Timing comparisons between the two reduce to minutes-of-day.
struct TimeMark {
    enum class Kind { Instant, TimeOfDay };
    Kind kind = Kind::Instant;
    double seconds = 0.0;  // epoch seconds (Instant) or seconds since midnight (TimeOfDay)

    static TimeMark instant(double epoch_seconds) { return {Kind::Instant, epoch_seconds}; }
    static TimeMark time_of_day(double day_seconds) { return {Kind::TimeOfDay, day_seconds}; }
    bool dated() const { return kind == Kind::Instant; }
};

// ---------------------------------------------------------------------------
// Core domain types
// ---------------------------------------------------------------------------

/// One timestamped tri-axial accelerometer reading, in device units.
struct AccelSample {
    double timestamp = 0.0;  // seconds since Unix epoch, >= 0
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// An ordered accelerometer recording. Timestamps are non-decreasing.
/// nominal_rate_hz is informational; when absent it is inferred from the
/// median inter-sample interval where a rate is needed.
struct Recording {
    std::string id;
    std::vector<AccelSample> samples;
    std::optional<double> nominal_rate_hz;
};

/// Per-epoch activity: the sum of sample vector magnitudes over one epoch.
struct EpochActivity {
    std::size_t index = 0;       // epoch ordinal within the recording
    double start_time = 0.0;     // origin + index * epoch_seconds
    double activity = 0.0;       // sum of vector magnitudes, >= 0
    std::size_t sample_count = 0;
    bool valid = false;          // false when sample_count is below the validity floor
};

enum class SleepLabel : std::uint8_t { Wake = 0, Sleep = 1 };

/// Aligned per-epoch score sequences produced by the batch or streaming
/// pipeline. All four sequences have identical length.
struct ScoreSeries {
    std::vector<double> activity;    // raw epoch activity A
    std::vector<double> smoothed;    // 5-epoch moving average
    std::vector<double> contextual;  // weighted contextual score S
    std::vector<double> normalized;  // (S - q_lower) / (q_upper - q_lower)
    std::vector<bool> valid;         // per-epoch validity mask
    double q_lower = 0.0;            // lower quantile of S over valid epochs
    double q_upper = 0.0;            // upper quantile of S over valid epochs
    bool degenerate_spread = false;  // q_upper - q_lower below spread floor
};

/// Per-epoch sleep/wake labels on the same grid as the ScoreSeries.
struct SleepWakeSeries {
    std::vector<SleepLabel> labels;
    std::vector<double> start_times;  // epoch start timestamps
    double epoch_seconds = 30.0;
};

/// One detected sleep period. Both boundary epochs are Sleep-labeled.
struct SleepPeriod {
    std::size_t onset_index = 0;
    std::size_t offset_index = 0;
    double onset_time = 0.0;   // start time of the first sleep epoch
    double offset_time = 0.0;  // start time of the last sleep epoch
};

/// Sleep metrics for one period. Durations are minutes; efficiency is a
/// fraction in [0, 1] (evaluation converts to percentage points only when
/// comparing against annotations). tst + waso == time_in_bed exactly, all
/// three derived from epoch counts.
struct SleepMetrics {
    double onset_time = 0.0;
    double offset_time = 0.0;
    double tst_minutes = 0.0;
    double waso_minutes = 0.0;
    double time_in_bed_minutes = 0.0;
    double efficiency = 0.0;
};

/// Ground-truth annotation for one recording, at minute resolution.
/// Efficiency, when present, is a percentage (annotation sources report
/// percent; the internal metric is a fraction).
struct Annotation {
    std::string id;
    TimeMark onset;
    TimeMark offset;
    std::optional<double> tst_minutes;
    std::optional<double> waso_minutes;
    std::optional<double> efficiency_pct;
};

// ---------------------------------------------------------------------------
// Pipeline configuration
// ---------------------------------------------------------------------------

/// Published pipeline constants. The default-constructed value carries the
/// calibrated threshold (-0.05), 30 s epochs, the 7-tap contextual weight
/// vector, and the 5/10-minute onset/offset run rules.
struct PipelineConfig {
    double epoch_seconds = 30.0;
    double threshold = -0.05;
    static constexpr int smoothing_halfwidth = 2;  // fixed 5-tap centered mean
    std::array<double, 7> context_weights{0.04, 0.12, 0.20, 0.28, 0.20, 0.12, 0.04};
    double onset_run_minutes = 5.0;
    double offset_run_minutes = 10.0;
    double validity_fraction = 0.5;  // min fraction of expected samples for a valid epoch
    double lower_quantile = 0.50;
    double upper_quantile = 0.90;

    /// Throws ConfigError unless every field invariant holds.
    void validate() const;
};

/// The published constants as a ready-to-use config.
PipelineConfig default_config();

// Shared numeric guards.
inline constexpr double kWeightSumTolerance = 1e-12;
inline constexpr double kSpreadFloor = 1e-12;

}  // namespace actisleep
