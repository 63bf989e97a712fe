#include "actisleep/eval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace actisleep {

namespace {

constexpr double kDaySeconds = 86400.0;

double minutes_of_day(const TimeMark& mark) {
    double s = mark.seconds;
    if (mark.dated()) {
        s = std::fmod(s, kDaySeconds);
        if (s < 0.0) s += kDaySeconds;
    }
    return s / 60.0;
}

}  // namespace

double timing_error_minutes(const TimeMark& predicted, const TimeMark& truth) {
    if (predicted.dated() && truth.dated()) {
        return std::abs(predicted.seconds - truth.seconds) / 60.0;
    }
    const double a = minutes_of_day(predicted);
    const double b = minutes_of_day(truth);
    const double d = std::abs(a - b);
    return std::min(d, 1440.0 - d);
}

NightErrors night_errors(const std::string& recording_id, const SleepMetrics& metrics,
                         const Annotation& annotation) {
    if (annotation.id != recording_id) {
        throw IdMismatch("annotation id \"" + annotation.id + "\" does not match recording \"" +
                         recording_id + "\"");
    }

    NightErrors e;
    e.id = recording_id;
    if (annotation.tst_minutes)
        e.tst_abs_err_min = std::abs(metrics.tst_minutes - *annotation.tst_minutes);
    if (annotation.waso_minutes)
        e.waso_abs_err_min = std::abs(metrics.waso_minutes - *annotation.waso_minutes);
    if (annotation.efficiency_pct)
        e.efficiency_abs_err_pct = std::abs(metrics.efficiency * 100.0 - *annotation.efficiency_pct);
    e.onset_err_min = timing_error_minutes(TimeMark::instant(metrics.onset_time), annotation.onset);
    e.offset_err_min =
        timing_error_minutes(TimeMark::instant(metrics.offset_time), annotation.offset);
    return e;
}

double median_of(std::span<const double> values) {
    if (values.empty()) throw EmptyInput("median of empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double sample_stddev(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n <= 1) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

namespace {

MetricStats stats_of(const std::vector<double>& values) {
    MetricStats s;
    s.n = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    s.median = median_of(values);
    s.stddev = sample_stddev(values);
    return s;
}

}  // namespace

EvalReport aggregate(std::span<const NightErrors> nights) {
    if (nights.empty()) throw EmptyInput("no nights to aggregate");

    std::vector<double> tst, waso, eff, onset, offset;
    for (const NightErrors& e : nights) {
        if (e.tst_abs_err_min) tst.push_back(*e.tst_abs_err_min);
        if (e.waso_abs_err_min) waso.push_back(*e.waso_abs_err_min);
        if (e.efficiency_abs_err_pct) eff.push_back(*e.efficiency_abs_err_pct);
        onset.push_back(e.onset_err_min);
        offset.push_back(e.offset_err_min);
    }

    EvalReport report;
    report.nights.assign(nights.begin(), nights.end());
    report.tst = stats_of(tst);
    report.waso = stats_of(waso);
    report.efficiency = stats_of(eff);
    report.onset = stats_of(onset);
    report.offset = stats_of(offset);
    report.night_count = nights.size();
    return report;
}

}  // namespace actisleep
