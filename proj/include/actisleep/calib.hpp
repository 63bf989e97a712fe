#pragma once

#include <span>
#include <string>
#include <vector>

#include "actisleep/model.hpp"

namespace actisleep {

struct CorpusNight {
    Recording recording;
    Annotation annotation;
};

/// One row of the threshold sensitivity table.
struct GridPoint {
    double theta = 0.0;
    double tst_mae = 0.0;
    double waso_mae = 0.0;
    std::size_t undetected_nights = 0;
};

struct CalibrationResult {
    std::vector<GridPoint> grid;  // strictly increasing theta
    double selected_threshold = 0.0;
    std::vector<std::string> tie_trace;  // ties encountered during selection
};

/// Evaluate every threshold in {grid_min, grid_min+step, ...} <= grid_max
/// over the corpus: classify with that threshold, detect the primary period,
/// and accumulate mean absolute TST/WASO error against the annotations.
/// A night with no detected period contributes its full annotated TST as
/// the TST penalty (otherwise thresholds that detect nothing win vacuously).
/// Scores are threshold-independent, so each night's normalized series is
/// computed once and reused across the grid.
///
/// Selection: argmin TST MAE, ties broken by lower WASO MAE, then lower
/// theta. Exact-equality ties are recorded in tie_trace.
/// Throws EmptyCorpus and BadGrid.
CalibrationResult grid_search(std::span<const CorpusNight> corpus, double grid_min,
                              double grid_max, double grid_step, const PipelineConfig& config);

/// The full per-threshold table from the same evaluation path, without
/// selection. Suitable for plotting threshold sensitivity.
std::vector<GridPoint> sensitivity_sweep(std::span<const CorpusNight> corpus, double grid_min,
                                         double grid_max, double grid_step,
                                         const PipelineConfig& config);

}  // namespace actisleep
