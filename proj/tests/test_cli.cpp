#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "actisleep/cli.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using actisleep::run_cli;

namespace {

// Every test case works under its own wiped subdirectory of the build tree.
fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path("cli_scratch") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// The CLI talks to stdout/stderr; keep that out of the test log and make it
// assertable.
struct CaptureStreams {
    std::ostringstream out, err;
    std::streambuf* saved_out;
    std::streambuf* saved_err;
    CaptureStreams()
        : saved_out(std::cout.rdbuf(out.rdbuf())), saved_err(std::cerr.rdbuf(err.rdbuf())) {}
    ~CaptureStreams() {
        std::cout.rdbuf(saved_out);
        std::cerr.rdbuf(saved_err);
    }
};

int run(const std::vector<std::string>& args, std::string* err_text = nullptr,
        std::string* out_text = nullptr) {
    CaptureStreams capture;
    const int rc = run_cli(args);
    if (err_text) *err_text = capture.err.str();
    if (out_text) *out_text = capture.out.str();
    return rc;
}

// Zero-noise corpus with a 50% wake fraction; the default threshold then
// recovers the planted night exactly (see the synth tests).
void make_balanced_corpus(const fs::path& dir, int nights, unsigned seed = 7) {
    std::string out;
    const int rc = run({"synth", "--nights", std::to_string(nights), "--seed",
                        std::to_string(seed), "--out-dir", dir.string(), "--pad-min", "120"},
                       nullptr, &out);
    REQUIRE(rc == 0);
    REQUIRE(out.find("wrote " + std::to_string(nights) + " night(s)") != std::string::npos);
}

}  // namespace

TEST_CASE("synth writes a deterministic corpus") {
    const auto dir_a = fresh_dir("synth_a");
    const auto dir_b = fresh_dir("synth_b");
    make_balanced_corpus(dir_a, 2);
    make_balanced_corpus(dir_b, 2);

    CHECK(fs::exists(dir_a / "night_01.csv"));
    CHECK(fs::exists(dir_a / "night_02.csv"));
    CHECK(fs::exists(dir_a / "annotations.csv"));
    CHECK(read_file(dir_a / "night_01.csv") == read_file(dir_b / "night_01.csv"));
    CHECK(read_file(dir_a / "annotations.csv") == read_file(dir_b / "annotations.csv"));

    const std::string header = read_file(dir_a / "annotations.csv");
    CHECK(header.rfind("id,onset,offset,tst_min,waso_min,efficiency_pct\n", 0) == 0);
    CHECK(header.find("night_01,") != std::string::npos);
}

TEST_CASE("analyze reports the planted night from a synthetic recording") {
    const auto dir = fresh_dir("analyze");
    make_balanced_corpus(dir, 1);
    const auto report_path = dir / "report.json";

    const int rc = run({"analyze", "--input", (dir / "night_01.csv").string(), "--out",
                        report_path.string()});
    REQUIRE(rc == 0);

    const auto j = ordered_json::parse(read_file(report_path));
    CHECK(j["id"] == "night_01");
    // recording starts 2024-01-01 00:00 UTC; the night is pad..duration-pad
    const double start = 1704067200.0;
    CHECK(j["onset"].get<double>() == start + 120.0 * 60.0);
    CHECK(j["offset"].get<double>() == start + 8.0 * 3600.0 - 120.0 * 60.0 - 30.0);
    CHECK(j["tst_min"].get<double>() == 240.0);
    CHECK(j["waso_min"].get<double>() == 0.0);
    CHECK(j["tib_min"].get<double>() == 240.0);
    CHECK(j["efficiency"].get<double>() == 1.0);
    CHECK(j["degenerate_spread"].get<bool>() == false);
    CHECK(j["undetected"].get<bool>() == false);
    CHECK(j["config"]["threshold"].get<double>() == -0.05);
    CHECK(j["config"]["stream"].get<bool>() == false);

    // reports round-trip: parse + re-dump reproduces the exact bytes
    const std::string text = read_file(report_path);
    CHECK(ordered_json::parse(text).dump(2) + "\n" == text);
}

TEST_CASE("streamed analysis matches batch output byte for byte") {
    const auto dir = fresh_dir("stream_cli");
    make_balanced_corpus(dir, 1);

    const auto run_mode = [&](bool stream) {
        const std::string tag = stream ? "stream" : "batch";
        std::vector<std::string> args{"analyze", "--input", (dir / "night_01.csv").string(),
                                      "--out", (dir / (tag + ".json")).string(), "--scores",
                                      (dir / (tag + "_scores.csv")).string()};
        if (stream) args.push_back("--stream");
        REQUIRE(run(args) == 0);
    };
    run_mode(false);
    run_mode(true);

    CHECK(read_file(dir / "batch_scores.csv") == read_file(dir / "stream_scores.csv"));

    auto batch = ordered_json::parse(read_file(dir / "batch.json"));
    auto stream = ordered_json::parse(read_file(dir / "stream.json"));
    CHECK(batch["config"]["stream"] == false);
    CHECK(stream["config"]["stream"] == true);
    stream["config"]["stream"] = false;
    CHECK(batch == stream);
}

TEST_CASE("the score csv labels the planted night") {
    const auto dir = fresh_dir("scores");
    make_balanced_corpus(dir, 1);
    REQUIRE(run({"analyze", "--input", (dir / "night_01.csv").string(), "--out",
                 (dir / "r.json").string(), "--scores", (dir / "scores.csv").string()}) == 0);

    const std::string csv = read_file(dir / "scores.csv");
    CHECK(csv.rfind("epoch,start_time,activity,smoothed,contextual,normalized,label,valid\n", 0) ==
          0);
    std::size_t lines = 0, sleep_rows = 0;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        ++lines;
        REQUIRE(line.size() > 4);
        CHECK(line[line.size() - 1] == '1');  // all epochs valid in this corpus
        if (line[line.size() - 3] == '1') ++sleep_rows;
    }
    CHECK(lines == 960);       // 8 h of 30 s epochs
    CHECK(sleep_rows == 480);  // exactly the planted 4 h night
}

TEST_CASE("evaluate scores a corpus night by night") {
    const auto dir = fresh_dir("evaluate");
    make_balanced_corpus(dir, 3);
    const auto out_path = dir / "eval.json";
    REQUIRE(run({"evaluate", "--corpus", dir.string(), "--annotations",
                 (dir / "annotations.csv").string(), "--out", out_path.string()}) == 0);

    const auto j = ordered_json::parse(read_file(out_path));
    CHECK(j["night_count"].get<int>() == 3);
    CHECK(j["undetected"].empty());
    REQUIRE(j["nights"].size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& row = j["nights"][i];
        CHECK(row["id"] == "night_0" + std::to_string(i + 1));
        CHECK(row["tst_abs_err_min"].get<double>() == 0.0);
        CHECK(row["waso_abs_err_min"].get<double>() == 0.0);
        CHECK(row["efficiency_abs_err_pct"].get<double>() == 0.0);
        CHECK(row["onset_err_min"].get<double>() == 0.0);
        // detected offset is the last sleep epoch start, 30 s before truth
        CHECK(row["offset_err_min"].get<double>() == 0.5);
    }
    CHECK(j["aggregates"]["tst"]["mean"].get<double>() == 0.0);
    CHECK(j["aggregates"]["tst"]["n"].get<int>() == 3);
    CHECK(j["aggregates"]["offset"]["mean"].get<double>() == 0.5);
    CHECK(j["aggregates"]["offset"]["median"].get<double>() == 0.5);
    CHECK(j["aggregates"]["offset"]["std"].get<double>() == 0.0);

    const std::string text = read_file(out_path);
    CHECK(ordered_json::parse(text).dump(2) + "\n" == text);
}

TEST_CASE("evaluate fails on a missing annotation unless told to skip") {
    const auto dir = fresh_dir("missing_ann");
    make_balanced_corpus(dir, 3);

    // keep the header and the first two night rows
    const std::string full = read_file(dir / "annotations.csv");
    std::istringstream in(full);
    std::string line, trimmed;
    for (int i = 0; i < 3 && std::getline(in, line); ++i) trimmed += line + "\n";
    {
        std::ofstream out(dir / "annotations.csv", std::ios::binary);
        out << trimmed;
    }

    std::string err;
    CHECK(run({"evaluate", "--corpus", dir.string(), "--annotations",
               (dir / "annotations.csv").string(), "--out", (dir / "e.json").string()},
              &err) == 1);
    CHECK(err.find("night_03") != std::string::npos);

    REQUIRE(run({"evaluate", "--corpus", dir.string(), "--annotations",
                 (dir / "annotations.csv").string(), "--allow-missing", "--out",
                 (dir / "e.json").string()}) == 0);
    const auto j = ordered_json::parse(read_file(dir / "e.json"));
    CHECK(j["night_count"].get<int>() == 2);
}

TEST_CASE("calibrate selects the low edge of the zero-error plateau") {
    const auto dir = fresh_dir("calibrate");
    make_balanced_corpus(dir, 2);
    const auto out_path = dir / "calib.json";
    REQUIRE(run({"calibrate", "--corpus", dir.string(), "--annotations",
                 (dir / "annotations.csv").string(), "--out", out_path.string()}) == 0);

    const auto j = ordered_json::parse(read_file(out_path));
    REQUIRE(j["grid"].size() == 29);
    CHECK(j["selected_theta"].get<double>() == -0.15);
    bool saw_default = false;
    for (const auto& row : j["grid"]) {
        if (row["theta"].get<double>() == -0.05) {
            saw_default = true;
            CHECK(row["tst_mae"].get<double>() == 0.0);
            CHECK(row["waso_mae"].get<double>() == 0.0);
        }
    }
    CHECK(saw_default);
    CHECK(j["tie_trace"].size() == 10);

    const std::string text = read_file(out_path);
    CHECK(ordered_json::parse(text).dump(2) + "\n" == text);
}

TEST_CASE("bad inputs produce a nonzero exit and a stderr diagnostic") {
    const auto dir = fresh_dir("errors");

    std::string err;
    CHECK(run({"analyze", "--input", (dir / "nope.csv").string()}, &err) == 1);
    CHECK(err.find("nope.csv") != std::string::npos);

    make_balanced_corpus(dir, 1);
    err.clear();
    CHECK(run({"calibrate", "--corpus", dir.string(), "--annotations",
               (dir / "annotations.csv").string(), "--grid-step", "0"},
              &err) == 1);
    CHECK(err.find("grid step") != std::string::npos);

    // a corpus directory with no recordings
    const auto empty = fresh_dir("errors_empty");
    {
        std::ofstream out(empty / "annotations.csv", std::ios::binary);
        out << "id,onset,offset\n";
    }
    err.clear();
    CHECK(run({"evaluate", "--corpus", empty.string(), "--annotations",
               (empty / "annotations.csv").string()},
              &err) == 1);
    CHECK(err.find("no recording CSVs") != std::string::npos);
}

TEST_CASE("the daytime schema resolves day ordinals against a base date") {
    const auto dir = fresh_dir("daytime");
    {
        std::ofstream out(dir / "rec.csv", std::ios::binary);
        out << "day,time,x,y,z\n";
        for (int i = 0; i < 90; ++i) {
            const int sec = 86370 + i;  // crosses midnight into day 2
            const int day = sec / 86400 + 1;
            const int tod = sec % 86400;
            out << day << ',' << tod / 3600 << ':' << (tod % 3600) / 60 << ':' << tod % 60
                << ",0,0," << (i % 2 == 0 ? "1.0" : "2.0") << "\n";
        }
    }
    const auto report_path = dir / "r.json";
    REQUIRE(run({"analyze", "--input", (dir / "rec.csv").string(), "--schema", "daytime",
                 "--base-date", "2024-03-01", "--rate-hz", "1", "--out",
                 report_path.string()}) == 0);
    const auto j = ordered_json::parse(read_file(report_path));
    CHECK(j["id"] == "rec");
    CHECK(j["undetected"].get<bool>() == true);  // 90 s cannot contain a night
}
