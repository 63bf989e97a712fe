#include "actisleep/calib.hpp"

#include <cmath>
#include <sstream>

#include "actisleep/ingest.hpp"
#include "actisleep/periods.hpp"
#include "actisleep/pipeline.hpp"

namespace actisleep {

namespace {

// Threshold-independent view of one corpus night.
struct NightScores {
    std::vector<double> normalized;
    std::vector<bool> valid;
    std::vector<double> start_times;
    bool degenerate = false;
    const Annotation* annotation = nullptr;
};

// Full annotated TST, used both as the comparison truth and as the
// undetected-night penalty. Falls back to the onset-to-offset span when the
// annotation lacks an explicit TST.
double truth_tst_minutes(const Annotation& a) {
    if (a.tst_minutes) return *a.tst_minutes;
    if (a.onset.dated() && a.offset.dated()) return (a.offset.seconds - a.onset.seconds) / 60.0;
    // Time-of-day marks: forward span across midnight.
    double span = std::fmod(a.offset.seconds - a.onset.seconds, 86400.0);
    if (span < 0.0) span += 86400.0;
    return span / 60.0;
}

std::vector<double> make_grid(double grid_min, double grid_max, double grid_step) {
    if (!std::isfinite(grid_min) || !std::isfinite(grid_max) || !std::isfinite(grid_step))
        throw BadGrid("grid bounds and step must be finite");
    if (!(grid_min < grid_max)) throw BadGrid("grid minimum must be below grid maximum");
    if (!(grid_step > 0.0)) throw BadGrid("grid step must be positive");

    // Recompute each candidate from the origin (no accumulated drift) and
    // give the upper bound a hair of slack so the endpoint stays on the grid.
    const double slack = grid_step * 1e-9;
    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        const double theta = grid_min + static_cast<double>(i) * grid_step;
        if (theta > grid_max + slack) break;
        grid.push_back(theta);
    }
    return grid;
}

std::vector<GridPoint> evaluate_grid(std::span<const CorpusNight> corpus, double grid_min,
                                     double grid_max, double grid_step,
                                     const PipelineConfig& config) {
    if (corpus.empty()) throw EmptyCorpus("calibration corpus is empty");
    config.validate();
    const std::vector<double> grid = make_grid(grid_min, grid_max, grid_step);

    std::vector<NightScores> nights;
    nights.reserve(corpus.size());
    for (const CorpusNight& night : corpus) {
        PipelineOutput out = run_pipeline(night.recording, config);
        NightScores ns;
        ns.normalized = std::move(out.scores.normalized);
        ns.valid = std::move(out.scores.valid);
        ns.start_times = std::move(out.labels.start_times);
        ns.degenerate = out.scores.degenerate_spread;
        ns.annotation = &night.annotation;
        nights.push_back(std::move(ns));
    }

    std::vector<GridPoint> table;
    table.reserve(grid.size());
    for (double theta : grid) {
        PipelineConfig cfg = config;
        cfg.threshold = theta;

        GridPoint point;
        point.theta = theta;
        double tst_err_sum = 0.0;
        double waso_err_sum = 0.0;
        std::size_t waso_n = 0;

        for (const NightScores& ns : nights) {
            SleepWakeSeries series;
            series.epoch_seconds = cfg.epoch_seconds;
            series.start_times = ns.start_times;
            if (ns.degenerate) {
                series.labels.assign(ns.normalized.size(), SleepLabel::Wake);
            } else {
                series.labels = classify(ns.normalized, ns.valid, theta);
            }

            const auto primary = select_primary(detect_periods(series, cfg));
            const double truth_tst = truth_tst_minutes(*ns.annotation);
            if (!primary) {
                ++point.undetected_nights;
                tst_err_sum += truth_tst;  // predicted TST treated as 0
                if (ns.annotation->waso_minutes) {
                    waso_err_sum += *ns.annotation->waso_minutes;
                    ++waso_n;
                }
                continue;
            }
            const SleepMetrics m = compute_metrics(series, *primary);
            tst_err_sum += std::abs(m.tst_minutes - truth_tst);
            if (ns.annotation->waso_minutes) {
                waso_err_sum += std::abs(m.waso_minutes - *ns.annotation->waso_minutes);
                ++waso_n;
            }
        }

        point.tst_mae = tst_err_sum / static_cast<double>(nights.size());
        point.waso_mae = waso_n > 0 ? waso_err_sum / static_cast<double>(waso_n) : 0.0;
        table.push_back(point);
    }
    return table;
}

}  // namespace

std::vector<GridPoint> sensitivity_sweep(std::span<const CorpusNight> corpus, double grid_min,
                                         double grid_max, double grid_step,
                                         const PipelineConfig& config) {
    return evaluate_grid(corpus, grid_min, grid_max, grid_step, config);
}

CalibrationResult grid_search(std::span<const CorpusNight> corpus, double grid_min,
                              double grid_max, double grid_step, const PipelineConfig& config) {
    CalibrationResult result;
    result.grid = evaluate_grid(corpus, grid_min, grid_max, grid_step, config);

    std::size_t best = 0;
    for (std::size_t i = 1; i < result.grid.size(); ++i) {
        const GridPoint& cand = result.grid[i];
        const GridPoint& cur = result.grid[best];
        if (cand.tst_mae == cur.tst_mae) {
            const bool take = cand.waso_mae < cur.waso_mae;
            const char* reason =
                cand.waso_mae == cur.waso_mae ? "lower theta" : "lower waso_mae";
            std::ostringstream trace;
            trace << "theta " << cand.theta << " ties theta " << cur.theta << " on tst_mae "
                  << cur.tst_mae << "; kept " << (take ? cand.theta : cur.theta) << " (" << reason
                  << ")";
            result.tie_trace.push_back(trace.str());
            if (take) best = i;
        } else if (cand.tst_mae < cur.tst_mae) {
            best = i;
        }
    }
    result.selected_threshold = result.grid[best].theta;
    return result;
}

}  // namespace actisleep
