#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "actisleep/model.hpp"

namespace actisleep {

/// Absolute per-night errors against an annotation. Error fields are absent
/// when the annotation lacks the corresponding ground truth. Efficiency is
/// compared in percentage points.
struct NightErrors {
    std::string id;
    std::optional<double> tst_abs_err_min;
    std::optional<double> waso_abs_err_min;
    std::optional<double> efficiency_abs_err_pct;
    double onset_err_min = 0.0;
    double offset_err_min = 0.0;
};

/// Mean / median / sample standard deviation over the nights that carry the
/// metric. n == 0 leaves all three at zero.
struct MetricStats {
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
    std::size_t n = 0;
};

struct EvalReport {
    std::vector<NightErrors> nights;
    MetricStats tst;
    MetricStats waso;
    MetricStats efficiency;
    MetricStats onset;
    MetricStats offset;
    std::size_t night_count = 0;
};

/// Minutes between two time marks. Both dated: plain |difference|. Otherwise
/// both reduce to minutes-of-day and the error wraps around midnight, so the
/// result is at most 720.
double timing_error_minutes(const TimeMark& predicted, const TimeMark& truth);

/// Per-night absolute errors. Throws IdMismatch when the annotation belongs
/// to a different recording.
NightErrors night_errors(const std::string& recording_id, const SleepMetrics& metrics,
                         const Annotation& annotation);

/// Midpoint-convention median of an unsorted sample.
double median_of(std::span<const double> values);

/// Sample (n-1) standard deviation; 0 for n <= 1.
double sample_stddev(std::span<const double> values);

/// Aggregate statistics over per-night errors. Throws EmptyInput.
EvalReport aggregate(std::span<const NightErrors> nights);

}  // namespace actisleep
