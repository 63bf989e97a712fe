#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "actisleep/model.hpp"
#include "actisleep/pipeline.hpp"

namespace actisleep {

/// Counted (not estimated) resource usage of a streaming run. Ops are
/// averages per closed epoch, rounded up. vm_evals counts per-sample vector
/// magnitude evaluations; filter_ops counts the arithmetic in the
/// smoothing/scoring path only, which is the figure bounded by the
/// operations-per-epoch budget.
struct ResourceReport {
    std::size_t peak_ring_epochs = 0;
    std::size_t filter_ops_per_epoch = 0;
    std::size_t vm_evals_per_epoch = 0;
};

/// Bounded-memory incremental pipeline. Samples stream in one at a time;
/// each completed epoch updates an 11-entry activity ring (5-tap smoother
/// composed with the 7-tap scorer) and, once context is full, emits the
/// contextual score of the epoch five positions back. finalize() resolves
/// the edge epochs, runs the recording-wide normalization, and produces
/// output identical to the batch pipeline.
///
/// The per-epoch score/validity logs kept for the end-of-run quantile pass
/// are append-only (one value per epoch) and are not part of the filter
/// working set; the transient state is the ring plus the partial epoch,
/// at most 12 epochs.
///
/// Single-writer: push_sample/finalize must not be called concurrently on
/// one instance. Distinct instances are independent.
class StreamState {
  public:
    /// The sample rate must be declared up front: the validity floor needs
    /// the expected samples-per-epoch count, and inferring the rate from
    /// inter-sample intervals would require buffering the recording.
    StreamState(const PipelineConfig& config, double nominal_rate_hz);

    /// Feed one sample. Returns the number of contextual scores emitted by
    /// this call (usually 0 or 1; a timestamp jump can close several epochs
    /// at once). Throws OutOfOrderSample on a timestamp decrease and
    /// NonFiniteInput on non-finite values.
    std::size_t push_sample(const AccelSample& sample);

    /// Close the trailing epoch (dropped if invalid, like batch ingestion),
    /// resolve edge scores, normalize over the whole run, classify.
    /// Throws NoCompletedEpochs when no epoch survives.
    PipelineOutput finalize();

    ResourceReport resource_report() const;

    std::size_t closed_epochs() const { return closed_; }
    std::size_t emitted_scores() const { return emitted_.size(); }
    const std::vector<double>& emitted() const { return emitted_; }

  private:
    static constexpr std::size_t kRing = 11;

    void close_current_epoch();
    double score_from_ring(std::size_t center, std::size_t hi);

    PipelineConfig config_;
    double rate_hz_;
    std::size_t floor_count_;

    bool has_origin_ = false;
    double origin_ = 0.0;
    double last_time_ = 0.0;

    std::size_t cur_index_ = 0;
    double cur_sum_ = 0.0;
    std::size_t cur_count_ = 0;

    std::array<double, kRing> ring_{};
    std::size_t closed_ = 0;
    std::size_t peak_ring_ = 0;

    std::vector<double> emitted_;     // contextual scores, epoch order
    std::vector<double> activity_log_;
    std::vector<bool> valid_log_;

    std::size_t filter_ops_ = 0;
    std::size_t vm_evals_ = 0;
    bool finalized_ = false;
};

}  // namespace actisleep
