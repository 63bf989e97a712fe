#pragma once

#include <optional>
#include <span>
#include <vector>

#include "actisleep/model.hpp"

namespace actisleep {

/// Epoch counts for the onset/offset run rules at the given epoch length
/// (minutes converted with ceiling: "at least N minutes").
std::size_t onset_run_epochs(const PipelineConfig& config);
std::size_t offset_run_epochs(const PipelineConfig& config);

/// Rule-based period detection. A period opens at the first epoch of a
/// Sleep run at least onset_run_epochs long; it closes at the last Sleep
/// epoch before a Wake run at least offset_run_epochs long (or the last
/// Sleep epoch of the series). Scanning resumes after the closing run, so
/// multiple disjoint periods may be returned. An empty result is valid.
std::vector<SleepPeriod> detect_periods(const SleepWakeSeries& labels,
                                        const PipelineConfig& config);

/// The primary interval: maximum span (offset_index - onset_index), ties
/// broken by earliest onset. Absent when no periods were detected.
std::optional<SleepPeriod> select_primary(std::span<const SleepPeriod> periods);

/// Metrics over [onset_index, offset_index]: TST counts Sleep epochs, WASO
/// counts Wake epochs, time in bed is their sum (identical to the inclusive
/// span). Throws IndexOutOfRange.
SleepMetrics compute_metrics(const SleepWakeSeries& labels, const SleepPeriod& period);

}  // namespace actisleep
