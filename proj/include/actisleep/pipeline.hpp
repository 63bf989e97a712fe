#pragma once

#include <span>
#include <vector>

#include "actisleep/model.hpp"

namespace actisleep {

/// Euclidean norm of one tri-axial sample. Throws NonFiniteInput.
double vector_magnitude(const AccelSample& sample);

/// Centered five-epoch moving average with clamp-to-edge index extension.
/// Output length equals input length. Throws EmptyInput.
std::vector<double> smooth(std::span<const double> activity);

/// Weighted contextual score over a +/-3-epoch neighborhood, clamp-to-edge.
/// Weights must have 7 entries summing to 1 within 1e-12 (BadWeights).
std::vector<double> contextual_score(std::span<const double> smoothed,
                                     std::span<const double> weights);

struct NormalizeResult {
    std::vector<double> normalized;
    double q_lower = 0.0;
    double q_upper = 0.0;
    bool degenerate = false;  // q_upper - q_lower at or below the spread floor
};

/// Robust normalization: quantiles are taken over valid epochs only (linear
/// interpolation between order statistics); every epoch gets a normalized
/// value. A degenerate spread yields all-zero output with the flag set.
/// Throws NoValidEpochs.
NormalizeResult normalize(std::span<const double> scores, const std::vector<bool>& valid,
                          double q_lo, double q_hi);

/// Threshold rule: Sleep iff normalized < threshold; invalid epochs are
/// forced to Wake. An empty valid mask means all epochs are valid.
std::vector<SleepLabel> classify(std::span<const double> normalized,
                                 const std::vector<bool>& valid, double threshold);

/// q-quantile of the values by linear interpolation between adjacent order
/// statistics. Values need not be sorted. Throws EmptyInput.
double quantile(std::span<const double> values, double q);

struct PipelineOutput {
    ScoreSeries scores;
    SleepWakeSeries labels;
};

/// Batch pipeline: segment -> smooth -> contextual -> normalize -> classify.
/// A degenerate score spread forces every label to Wake regardless of the
/// threshold (a flat recording carries no sleep evidence).
PipelineOutput run_pipeline(const Recording& recording, const PipelineConfig& config);

/// Same score path, starting from already-segmented epochs. This is the
/// shared tail of the batch pipeline; calibration reuses it to avoid
/// re-segmenting per candidate threshold.
PipelineOutput run_pipeline_on_epochs(const std::vector<EpochActivity>& epochs,
                                      const PipelineConfig& config);

}  // namespace actisleep
