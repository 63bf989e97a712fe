#include "actisleep/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "actisleep/ingest.hpp"

namespace actisleep {

double vector_magnitude(const AccelSample& sample) {
    if (!std::isfinite(sample.x) || !std::isfinite(sample.y) || !std::isfinite(sample.z))
        throw NonFiniteInput("accelerometer sample has non-finite component");
    return std::sqrt(sample.x * sample.x + sample.y * sample.y + sample.z * sample.z);
}

// Both filters extend the series by clamping indices to [0, n-1]. The
// boundary rule is part of the contract: the streaming path reproduces it
// term by term so that batch and stream agree bitwise.
std::vector<double> smooth(std::span<const double> activity) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(activity.size());
    if (n == 0) throw EmptyInput("smooth: empty activity series");
    const int h = PipelineConfig::smoothing_halfwidth;
    std::vector<double> out(activity.size());
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        double sum = 0.0;
        for (std::ptrdiff_t k = t - h; k <= t + h; ++k) {
            std::ptrdiff_t j = std::clamp<std::ptrdiff_t>(k, 0, n - 1);
            sum += activity[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(t)] = sum / (2.0 * h + 1.0);
    }
    return out;
}

std::vector<double> contextual_score(std::span<const double> smoothed,
                                     std::span<const double> weights) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(smoothed.size());
    if (n == 0) throw EmptyInput("contextual_score: empty series");
    if (weights.size() != 7) throw BadWeights("contextual weights must have 7 entries");
    double sum = 0.0;
    for (double w : weights) sum += w;
    if (std::abs(sum - 1.0) > kWeightSumTolerance)
        throw BadWeights("contextual weights must sum to 1");

    std::vector<double> out(smoothed.size());
    for (std::ptrdiff_t t = 0; t < n; ++t) {
        double s = 0.0;
        for (std::ptrdiff_t k = -3; k <= 3; ++k) {
            std::ptrdiff_t j = std::clamp<std::ptrdiff_t>(t + k, 0, n - 1);
            s += weights[static_cast<std::size_t>(k + 3)] * smoothed[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(t)] = s;
    }
    return out;
}

double quantile(std::span<const double> values, double q) {
    if (values.empty()) throw EmptyInput("quantile of empty set");
    q = std::clamp(q, 0.0, 1.0);
    std::vector<double> v(values.begin(), values.end());
    const double h = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
    const double vlo = v[lo];
    // nth_element leaves [lo+1, end) all >= v[lo]; the next order statistic
    // is the minimum of that tail.
    double vhi = vlo;
    if (hi != lo) vhi = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
    return vlo + (h - static_cast<double>(lo)) * (vhi - vlo);
}

NormalizeResult normalize(std::span<const double> scores, const std::vector<bool>& valid,
                          double q_lo, double q_hi) {
    if (!(q_lo < q_hi) || q_lo < 0.0 || q_hi > 1.0)
        throw ConfigError("quantile bounds must satisfy 0 <= lo < hi <= 1");
    if (!valid.empty() && valid.size() != scores.size())
        throw ConfigError("valid mask length does not match score length");

    std::vector<double> pool;
    pool.reserve(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        if (valid.empty() || valid[i]) pool.push_back(scores[i]);
    if (pool.empty()) throw NoValidEpochs("no valid epochs to estimate quantiles");

    NormalizeResult r;
    r.q_lower = quantile(pool, q_lo);
    r.q_upper = quantile(pool, q_hi);
    const double spread = r.q_upper - r.q_lower;
    r.normalized.resize(scores.size());
    if (spread <= kSpreadFloor) {
        r.degenerate = true;
        std::fill(r.normalized.begin(), r.normalized.end(), 0.0);
    } else {
        for (std::size_t i = 0; i < scores.size(); ++i)
            r.normalized[i] = (scores[i] - r.q_lower) / spread;
    }
    return r;
}

std::vector<SleepLabel> classify(std::span<const double> normalized,
                                 const std::vector<bool>& valid, double threshold) {
    if (!valid.empty() && valid.size() != normalized.size())
        throw ConfigError("valid mask length does not match score length");
    std::vector<SleepLabel> labels(normalized.size(), SleepLabel::Wake);
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        bool ok = valid.empty() || valid[i];
        if (ok && normalized[i] < threshold) labels[i] = SleepLabel::Sleep;
    }
    return labels;
}

PipelineOutput run_pipeline_on_epochs(const std::vector<EpochActivity>& epochs,
                                      const PipelineConfig& config) {
    config.validate();
    if (epochs.empty()) throw EmptyInput("pipeline requires at least one epoch");

    PipelineOutput out;
    ScoreSeries& s = out.scores;
    s.activity.reserve(epochs.size());
    s.valid.reserve(epochs.size());
    out.labels.start_times.reserve(epochs.size());
    for (const EpochActivity& e : epochs) {
        s.activity.push_back(e.activity);
        s.valid.push_back(e.valid);
        out.labels.start_times.push_back(e.start_time);
    }

    s.smoothed = smooth(s.activity);
    s.contextual = contextual_score(s.smoothed, config.context_weights);
    NormalizeResult norm =
        normalize(s.contextual, s.valid, config.lower_quantile, config.upper_quantile);
    s.normalized = std::move(norm.normalized);
    s.q_lower = norm.q_lower;
    s.q_upper = norm.q_upper;
    s.degenerate_spread = norm.degenerate;

    out.labels.epoch_seconds = config.epoch_seconds;
    if (norm.degenerate) {
        // Flat spread: no sleep evidence, all Wake regardless of threshold.
        out.labels.labels.assign(epochs.size(), SleepLabel::Wake);
    } else {
        out.labels.labels = classify(s.normalized, s.valid, config.threshold);
    }
    return out;
}

PipelineOutput run_pipeline(const Recording& recording, const PipelineConfig& config) {
    return run_pipeline_on_epochs(segment_epochs(recording, config), config);
}

}  // namespace actisleep
