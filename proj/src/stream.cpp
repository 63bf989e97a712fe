#include "actisleep/stream.hpp"

#include <algorithm>
#include <cmath>

#include "actisleep/ingest.hpp"

namespace actisleep {

StreamState::StreamState(const PipelineConfig& config, double nominal_rate_hz)
    : config_(config), rate_hz_(nominal_rate_hz) {
    config_.validate();
    if (!std::isfinite(rate_hz_) || rate_hz_ <= 0.0)
        throw ConfigError("streaming requires a positive declared sample rate");
    const std::size_t expected = expected_samples_per_epoch(rate_hz_, config_.epoch_seconds);
    const double floor_raw = std::ceil(config_.validity_fraction * static_cast<double>(expected));
    // Zero-sample gap epochs must stay invalid even at validity_fraction 0.
    floor_count_ = std::max<std::size_t>(static_cast<std::size_t>(floor_raw), 1);
}

std::size_t StreamState::push_sample(const AccelSample& sample) {
    if (finalized_) throw Error("stream already finalized");
    if (!std::isfinite(sample.timestamp)) throw NonFiniteInput("sample timestamp is not finite");
    if (has_origin_ && sample.timestamp < last_time_) {
        throw OutOfOrderSample("sample timestamp decreased from " + std::to_string(last_time_) +
                               " to " + std::to_string(sample.timestamp));
    }
    if (!has_origin_) {
        has_origin_ = true;
        origin_ = sample.timestamp;
    }
    last_time_ = sample.timestamp;

    const auto k = static_cast<std::size_t>((sample.timestamp - origin_) / config_.epoch_seconds);
    const std::size_t before = emitted_.size();
    while (cur_index_ < k) close_current_epoch();

    cur_sum_ += vector_magnitude(sample);
    ++cur_count_;
    ++vm_evals_;
    return emitted_.size() - before;
}

void StreamState::close_current_epoch() {
    const bool valid = cur_count_ >= floor_count_;
    activity_log_.push_back(cur_sum_);
    valid_log_.push_back(valid);
    ring_[cur_index_ % kRing] = cur_sum_;
    ++closed_;
    peak_ring_ = std::max(peak_ring_, std::min(closed_, kRing));
    cur_sum_ = 0.0;
    cur_count_ = 0;
    ++cur_index_;

    // 5-epoch emission latency: 2 from the centered smoother, 3 from the
    // contextual window. The 11-slot ring covers exactly the composite
    // support [center-5, center+5].
    if (closed_ >= 6) emitted_.push_back(score_from_ring(closed_ - 6, closed_ - 1));
}

// Contextual score at `center` with the series horizon clamped to [0, hi],
// reading epoch activities from the ring. Term order matches the batch
// smooth/contextual_score loops exactly so results are bitwise equal.
double StreamState::score_from_ring(std::size_t center, std::size_t hi) {
    const int h = PipelineConfig::smoothing_halfwidth;
    const auto c = static_cast<std::ptrdiff_t>(center);
    const auto top = static_cast<std::ptrdiff_t>(hi);
    double s = 0.0;
    for (std::ptrdiff_t k = -3; k <= 3; ++k) {
        const std::ptrdiff_t j = std::clamp<std::ptrdiff_t>(c + k, 0, top);
        double sum = 0.0;
        for (std::ptrdiff_t m = j - h; m <= j + h; ++m) {
            const std::ptrdiff_t idx = std::clamp<std::ptrdiff_t>(m, 0, top);
            sum += ring_[static_cast<std::size_t>(idx) % kRing];
            ++filter_ops_;
        }
        const double smoothed = sum / (2.0 * h + 1.0);
        ++filter_ops_;
        s += config_.context_weights[static_cast<std::size_t>(k + 3)] * smoothed;
        filter_ops_ += 2;
    }
    return s;
}

PipelineOutput StreamState::finalize() {
    if (finalized_) throw Error("stream already finalized");

    // The pending partial epoch holds the last sample (if any). Keep it when
    // it meets the validity floor; otherwise drop it, matching the batch
    // trailing-epoch rule. No emitted score depends on a dropped epoch
    // because emission lags five closed epochs behind.
    if (cur_count_ >= floor_count_) close_current_epoch();
    if (activity_log_.empty()) throw NoCompletedEpochs("no completed epochs to finalize");
    finalized_ = true;

    const std::size_t n = activity_log_.size();

    PipelineOutput out;
    ScoreSeries& s = out.scores;
    s.activity = activity_log_;
    s.valid = valid_log_;
    s.smoothed = smooth(s.activity);  // not kept incrementally; reporting only

    // Emitted scores cover [0, e); the last few epochs lacked right context
    // until now. Resolve them against the final horizon with the same
    // term-by-term arithmetic.
    s.contextual = emitted_;
    const int h = PipelineConfig::smoothing_halfwidth;
    const auto top = static_cast<std::ptrdiff_t>(n - 1);
    for (std::size_t c = s.contextual.size(); c < n; ++c) {
        double score = 0.0;
        for (std::ptrdiff_t k = -3; k <= 3; ++k) {
            const std::ptrdiff_t j =
                std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(c) + k, 0, top);
            double sum = 0.0;
            for (std::ptrdiff_t m = j - h; m <= j + h; ++m) {
                const std::ptrdiff_t idx = std::clamp<std::ptrdiff_t>(m, 0, top);
                sum += activity_log_[static_cast<std::size_t>(idx)];
                ++filter_ops_;
            }
            const double smoothed = sum / (2.0 * h + 1.0);
            ++filter_ops_;
            score += config_.context_weights[static_cast<std::size_t>(k + 3)] * smoothed;
            filter_ops_ += 2;
        }
        s.contextual.push_back(score);
    }

    NormalizeResult norm =
        normalize(s.contextual, s.valid, config_.lower_quantile, config_.upper_quantile);
    s.normalized = std::move(norm.normalized);
    s.q_lower = norm.q_lower;
    s.q_upper = norm.q_upper;
    s.degenerate_spread = norm.degenerate;

    out.labels.epoch_seconds = config_.epoch_seconds;
    out.labels.start_times.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.labels.start_times.push_back(origin_ + static_cast<double>(i) * config_.epoch_seconds);
    if (norm.degenerate) {
        out.labels.labels.assign(n, SleepLabel::Wake);
    } else {
        out.labels.labels = classify(s.normalized, s.valid, config_.threshold);
    }
    return out;
}

ResourceReport StreamState::resource_report() const {
    ResourceReport r;
    if (closed_ == 0) return r;
    r.peak_ring_epochs = peak_ring_;
    r.filter_ops_per_epoch = (filter_ops_ + closed_ - 1) / closed_;
    r.vm_evals_per_epoch = (vm_evals_ + closed_ - 1) / closed_;
    return r;
}

}  // namespace actisleep
