#include "actisleep/periods.hpp"

#include <cmath>

namespace actisleep {

namespace {

std::size_t run_epochs(double minutes, double epoch_seconds) {
    return static_cast<std::size_t>(std::ceil(minutes * 60.0 / epoch_seconds));
}

}  // namespace

std::size_t onset_run_epochs(const PipelineConfig& config) {
    return run_epochs(config.onset_run_minutes, config.epoch_seconds);
}

std::size_t offset_run_epochs(const PipelineConfig& config) {
    return run_epochs(config.offset_run_minutes, config.epoch_seconds);
}

std::vector<SleepPeriod> detect_periods(const SleepWakeSeries& labels,
                                        const PipelineConfig& config) {
    config.validate();
    const std::size_t onset_need = onset_run_epochs(config);
    const std::size_t offset_need = offset_run_epochs(config);
    const std::vector<SleepLabel>& l = labels.labels;
    const std::size_t n = l.size();

    std::vector<SleepPeriod> periods;
    std::size_t i = 0;
    while (i < n) {
        if (l[i] != SleepLabel::Sleep) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && l[j] == SleepLabel::Sleep) ++j;
        if (j - i < onset_need) {
            i = j;  // run too short to open a period
            continue;
        }

        const std::size_t onset = i;
        std::size_t last_sleep = j - 1;
        std::size_t k = j;
        std::size_t resume = n;
        while (k < n) {
            if (l[k] == SleepLabel::Sleep) {
                last_sleep = k;
                ++k;
                continue;
            }
            std::size_t m = k;
            while (m < n && l[m] == SleepLabel::Wake) ++m;
            if (m - k >= offset_need) {
                resume = m;  // closing wake run; period ends before it
                break;
            }
            k = m;  // brief awakening, stays inside the period
        }

        SleepPeriod p;
        p.onset_index = onset;
        p.offset_index = last_sleep;
        if (onset < labels.start_times.size()) p.onset_time = labels.start_times[onset];
        if (last_sleep < labels.start_times.size()) p.offset_time = labels.start_times[last_sleep];
        periods.push_back(p);
        i = resume;
    }
    return periods;
}

std::optional<SleepPeriod> select_primary(std::span<const SleepPeriod> periods) {
    if (periods.empty()) return std::nullopt;
    const SleepPeriod* best = &periods[0];
    std::size_t best_span = best->offset_index - best->onset_index;
    for (const SleepPeriod& p : periods.subspan(1)) {
        const std::size_t span = p.offset_index - p.onset_index;
        // Strict > keeps the earliest-onset period on ties.
        if (span > best_span) {
            best = &p;
            best_span = span;
        }
    }
    return *best;
}

SleepMetrics compute_metrics(const SleepWakeSeries& labels, const SleepPeriod& period) {
    const std::size_t n = labels.labels.size();
    if (period.onset_index > period.offset_index || period.offset_index >= n) {
        throw IndexOutOfRange("sleep period [" + std::to_string(period.onset_index) + ", " +
                              std::to_string(period.offset_index) +
                              "] out of range for " + std::to_string(n) + " epochs");
    }

    std::size_t sleep_epochs = 0;
    std::size_t wake_epochs = 0;
    for (std::size_t t = period.onset_index; t <= period.offset_index; ++t) {
        if (labels.labels[t] == SleepLabel::Sleep)
            ++sleep_epochs;
        else
            ++wake_epochs;
    }

    const double minutes_per_epoch = labels.epoch_seconds / 60.0;
    SleepMetrics m;
    m.onset_time = period.onset_time;
    m.offset_time = period.offset_time;
    m.tst_minutes = static_cast<double>(sleep_epochs) * minutes_per_epoch;
    m.waso_minutes = static_cast<double>(wake_epochs) * minutes_per_epoch;
    m.time_in_bed_minutes = m.tst_minutes + m.waso_minutes;
    m.efficiency = m.time_in_bed_minutes > 0.0 ? m.tst_minutes / m.time_in_bed_minutes : 0.0;
    return m;
}

}  // namespace actisleep
