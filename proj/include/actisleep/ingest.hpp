#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "actisleep/model.hpp"

namespace actisleep {

/// How recording CSV timestamps are laid out.
enum class TimestampMode {
    UnixSeconds,  // one numeric column of epoch seconds
    Iso8601,      // one column of "YYYY-MM-DD HH:MM[:SS]" (T or space separator)
    DayTime,      // (day ordinal, time-of-day) pair; day 1 maps to base_date
};

/// Column layout for a recording CSV. Columns are addressed by header name.
struct CsvSchema {
    TimestampMode mode = TimestampMode::UnixSeconds;
    std::string time_column = "timestamp";  // timestamp column (Unix/ISO) or time-of-day column (DayTime)
    std::string day_column = "day";         // DayTime mode only
    double base_date = 0.0;                 // epoch seconds of day 1 at 00:00:00 (DayTime mode)
    std::string x_column = "x";
    std::string y_column = "y";
    std::string z_column = "z";
    char delimiter = ',';
    double jitter_tolerance = 0.0;  // max allowed backward step; larger decreases throw

    void validate() const;  // throws ConfigError
};

/// Recording plus the number of data rows skipped for unparseable fields.
struct ParsedRecording {
    Recording recording;
    std::size_t skipped_rows = 0;
};

/// Parse a recording CSV. Rows with unparseable numeric fields are skipped
/// and counted; timestamps that step backwards within jitter_tolerance are
/// clamped to the previous timestamp. Throws MissingColumn, EmptyRecording,
/// or NonMonotonicTime.
ParsedRecording parse_recording(std::istream& source, const CsvSchema& schema, const std::string& id);

/// Parse an annotation CSV with header id,onset,offset[,tst_min,waso_min,efficiency_pct].
/// Times are HH:MM, HH:MM:SS, or ISO-8601. Throws MissingColumn or BadTimeFormat.
std::vector<Annotation> parse_annotations(std::istream& source);

/// Parse one time field: ISO-8601 when it carries a date, else time-of-day.
TimeMark parse_time_mark(const std::string& text);

/// Epoch seconds for a calendar date/time on the naive internal axis.
double civil_to_epoch(int year, int month, int day, int hour = 0, int minute = 0, double second = 0.0);

/// Sampling rate to use for the validity floor: the declared rate when
/// present, else the reciprocal of the median inter-sample interval.
double effective_rate_hz(const Recording& recording);

/// Samples a full epoch is expected to contain at the given rate.
std::size_t expected_samples_per_epoch(double rate_hz, double epoch_seconds);

/// Cut a recording into fixed-length epochs anchored at the first sample.
/// Epoch k covers [origin + k*T_e, origin + (k+1)*T_e). Activity is the sum
/// of vector magnitudes. Interior gap epochs are emitted with zero samples
/// and valid=false; a trailing underfilled epoch is dropped when invalid.
/// Throws EmptyRecording.
std::vector<EpochActivity> segment_epochs(const Recording& recording, const PipelineConfig& config);

}  // namespace actisleep
