#include "doctest.h"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "actisleep/calib.hpp"
#include "actisleep/synth.hpp"
#include "oracles.hpp"

using namespace actisleep;

namespace {

// Zero-noise night with equal wake and sleep time. The activity histogram
// then straddles the median, which puts the default threshold inside the
// zero-error plateau of the threshold grid.
CorpusNight balanced_night(std::uint64_t seed, int day) {
    SynthSpec spec;
    spec.seed = seed;
    spec.id = "night_" + std::to_string(day);
    spec.start_time = day * 86400.0;
    spec.duration_s = 8.0 * 3600.0;
    spec.night_start = spec.start_time + 120.0 * 60.0;
    spec.night_end = spec.start_time + spec.duration_s - 120.0 * 60.0;
    const auto out = generate(spec);
    return {out.recording, out.annotation};
}

// Mostly-sleep night: the median activity collapses to zero and only
// positive thresholds recover the planted interval.
CorpusNight long_night(std::uint64_t seed, int day) {
    SynthSpec spec;
    spec.seed = seed;
    spec.id = "long_" + std::to_string(day);
    spec.start_time = day * 86400.0;
    spec.duration_s = 8.0 * 3600.0;
    spec.night_start = spec.start_time + 90.0 * 60.0;
    spec.night_end = spec.start_time + spec.duration_s - 90.0 * 60.0;
    const auto out = generate(spec);
    return {out.recording, out.annotation};
}

CorpusNight flat_night(double tst_truth_min) {
    CorpusNight night;
    night.recording.id = "flat";
    night.recording.nominal_rate_hz = 1.0;
    for (int i = 0; i < 7200; ++i)
        night.recording.samples.push_back({static_cast<double>(i), 0, 0, 1.0});
    night.annotation.id = "flat";
    night.annotation.onset = TimeMark::instant(1000.0);
    night.annotation.offset = TimeMark::instant(1000.0 + tst_truth_min * 60.0);
    night.annotation.tst_minutes = tst_truth_min;
    return night;
}

const GridPoint* point_near(const std::vector<GridPoint>& grid, double theta) {
    for (const auto& p : grid)
        if (std::abs(p.theta - theta) < 1e-9) return &p;
    return nullptr;
}

}  // namespace

TEST_CASE("grid construction rejects bad bounds") {
    const std::vector<CorpusNight> corpus{balanced_night(1, 0)};
    const PipelineConfig cfg;
    CHECK_THROWS_AS(grid_search(corpus, -0.4, 1.0, 0.0, cfg), BadGrid);
    CHECK_THROWS_AS(grid_search(corpus, -0.4, 1.0, -0.05, cfg), BadGrid);
    CHECK_THROWS_AS(grid_search(corpus, 1.0, -0.4, 0.05, cfg), BadGrid);
    CHECK_THROWS_AS(grid_search(corpus, -0.4, std::nan(""), 0.05, cfg), BadGrid);
    CHECK_THROWS_AS(grid_search(std::vector<CorpusNight>{}, -0.4, 1.0, 0.05, cfg), EmptyCorpus);
}

TEST_CASE("the default grid has 29 increasing candidates including the default threshold") {
    const std::vector<CorpusNight> corpus{balanced_night(1, 0)};
    const auto result = grid_search(corpus, -0.4, 1.0, 0.05, PipelineConfig{});
    REQUIRE(result.grid.size() == 29);
    for (std::size_t i = 1; i < result.grid.size(); ++i)
        CHECK(result.grid[i].theta > result.grid[i - 1].theta);
    CHECK(std::abs(result.grid.front().theta - -0.4) < 1e-9);
    CHECK(std::abs(result.grid.back().theta - 1.0) < 1e-9);
    CHECK(point_near(result.grid, -0.05) != nullptr);
}

TEST_CASE("balanced nights have a zero-error plateau and ties resolve to the lowest theta") {
    std::vector<CorpusNight> corpus;
    for (int day = 0; day < 3; ++day)
        corpus.push_back(balanced_night(static_cast<std::uint64_t>(day + 1), day));

    const auto result = grid_search(corpus, -0.4, 1.0, 0.05, PipelineConfig{});

    for (double theta : {-0.15, -0.10, -0.05, 0.0, 0.05, 0.10, 0.15}) {
        const auto* p = point_near(result.grid, theta);
        REQUIRE(p != nullptr);
        CHECK(p->tst_mae == 0.0);
        CHECK(p->waso_mae == 0.0);
        CHECK(p->undetected_nights == 0);
    }
    // one epoch short (or long) on both edges of the plateau
    CHECK(point_near(result.grid, -0.20)->tst_mae == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(point_near(result.grid, 0.20)->tst_mae == doctest::Approx(1.0).epsilon(1e-9));

    CHECK(std::abs(result.selected_threshold - -0.15) < 1e-9);
    // 4 ties below the plateau (same one-epoch-short sleep set from -0.35 to
    // -0.20) plus 6 inside it
    CHECK(result.tie_trace.size() == 10);
    for (const auto& line : result.tie_trace) CHECK(line.find("tst_mae") != std::string::npos);

    for (const auto& p : result.grid) CHECK(p.undetected_nights == 0);
}

TEST_CASE("mostly-sleep nights move the plateau to positive thresholds") {
    std::vector<CorpusNight> corpus;
    for (int day = 0; day < 2; ++day)
        corpus.push_back(long_night(static_cast<std::uint64_t>(day + 7), day));

    const auto result = grid_search(corpus, -0.4, 1.0, 0.05, PipelineConfig{});
    for (double theta : {0.45, 0.50, 0.55}) {
        const auto* p = point_near(result.grid, theta);
        REQUIRE(p != nullptr);
        CHECK(p->tst_mae == 0.0);
    }
    CHECK(point_near(result.grid, 0.40)->tst_mae > 0.0);
    CHECK(point_near(result.grid, 0.60)->tst_mae > 0.0);
    CHECK(std::abs(result.selected_threshold - 0.45) < 1e-9);
    // ties accumulate down the staircase: 8 at the all-undetected penalty,
    // 1 + 1 + 3 while the transition epochs join one by one, 2 on the plateau
    CHECK(result.tie_trace.size() == 15);
}

TEST_CASE("undetected nights are charged their full annotated sleep time") {
    const std::vector<CorpusNight> corpus{flat_night(100.0)};
    const auto result = grid_search(corpus, -0.1, 0.1, 0.05, PipelineConfig{});
    REQUIRE(result.grid.size() == 5);
    for (const auto& p : result.grid) {
        CHECK(p.tst_mae == 100.0);
        CHECK(p.waso_mae == 0.0);  // no waso truth anywhere in this corpus
        CHECK(p.undetected_nights == 1);
    }
    // a flat field of ties resolves to the lowest candidate
    CHECK(std::abs(result.selected_threshold - -0.1) < 1e-9);
    CHECK(result.tie_trace.size() == 4);
}

TEST_CASE("the undetected penalty falls back to the annotated span") {
    auto night = flat_night(100.0);
    night.annotation.tst_minutes.reset();  // dated span: 100 minutes
    const auto dated = grid_search(std::vector<CorpusNight>{night}, 0.0, 0.1, 0.1,
                                   PipelineConfig{});
    REQUIRE(dated.grid.size() == 2);
    CHECK(dated.grid[0].tst_mae == 100.0);  // flat night is undetected everywhere
    CHECK(dated.grid[1].tst_mae == 100.0);

    night.annotation.onset = TimeMark::time_of_day(23.0 * 3600.0);
    night.annotation.offset = TimeMark::time_of_day(1.0 * 3600.0);
    const auto wrapped = grid_search(std::vector<CorpusNight>{night}, 0.0, 0.1, 0.1,
                                     PipelineConfig{});
    CHECK(wrapped.grid[0].tst_mae == 120.0);  // forward across midnight
}

TEST_CASE("the sensitivity sweep is the grid search table without selection") {
    std::vector<CorpusNight> corpus{balanced_night(3, 0), balanced_night(4, 1)};
    const auto searched = grid_search(corpus, -0.2, 0.2, 0.1, PipelineConfig{});
    const auto swept = sensitivity_sweep(corpus, -0.2, 0.2, 0.1, PipelineConfig{});
    REQUIRE(swept.size() == searched.grid.size());
    for (std::size_t i = 0; i < swept.size(); ++i) {
        CHECK(swept[i].theta == searched.grid[i].theta);
        CHECK(swept[i].tst_mae == searched.grid[i].tst_mae);
        CHECK(swept[i].waso_mae == searched.grid[i].waso_mae);
        CHECK(swept[i].undetected_nights == searched.grid[i].undetected_nights);
    }
}

TEST_CASE("selection is the lexicographic argmin of the table") {
    const std::vector<CorpusNight> corpus{balanced_night(5, 0), long_night(6, 1)};
    const auto result = grid_search(corpus, -0.4, 1.0, 0.05, PipelineConfig{});
    const GridPoint* sel = point_near(result.grid, result.selected_threshold);
    REQUIRE(sel != nullptr);
    for (const auto& p : result.grid) {
        CHECK(p.tst_mae >= sel->tst_mae);
        if (p.tst_mae == sel->tst_mae) {
            CHECK(p.waso_mae >= sel->waso_mae);
            if (p.waso_mae == sel->waso_mae) CHECK(p.theta >= sel->theta);
        }
    }
}

TEST_CASE("calibration is deterministic") {
    std::vector<CorpusNight> corpus{balanced_night(9, 0)};
    const auto a = grid_search(corpus, -0.4, 1.0, 0.05, PipelineConfig{});
    const auto b = grid_search(corpus, -0.4, 1.0, 0.05, PipelineConfig{});
    CHECK(a.selected_threshold == b.selected_threshold);
    REQUIRE(a.grid.size() == b.grid.size());
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        CHECK(a.grid[i].theta == b.grid[i].theta);
        CHECK(a.grid[i].tst_mae == b.grid[i].tst_mae);
    }
    CHECK(a.tie_trace == b.tie_trace);
}
