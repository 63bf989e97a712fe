#include "actisleep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "actisleep/calib.hpp"
#include "actisleep/eval.hpp"
#include "actisleep/ingest.hpp"
#include "actisleep/periods.hpp"
#include "actisleep/pipeline.hpp"
#include "actisleep/stream.hpp"
#include "actisleep/synth.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace actisleep {

namespace {

// Reports quantize metric values to 6 significant digits before
// serialization, so parse + re-dump reproduces the same bytes.
double quant6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::strtod(buf, nullptr);
}

// Timestamps keep millisecond precision; 6 significant digits would round
// epoch seconds to ~1000 s.
double quant_time(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return std::strtod(buf, nullptr);
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

void emit_report(const ordered_json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

// YYYY-MM-DD -> epoch seconds at midnight.
double parse_date_only(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &tail) != 3 || m < 1 || m > 12 ||
        d < 1 || d > 31)
        throw BadTimeFormat("bad date '" + text + "', expected YYYY-MM-DD");
    return civil_to_epoch(y, m, d);
}

// Inverse of civil_to_epoch for whole-second instants.
std::string format_instant(double epoch_seconds) {
    long long total = static_cast<long long>(std::floor(epoch_seconds));
    long long days = total / 86400;
    long long rem = total % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    // civil_from_days, proleptic Gregorian calendar.
    long long z = days + 719468;
    long long era = (z >= 0 ? z : z - 146096) / 146097;
    unsigned doe = static_cast<unsigned>(z - era * 146097);
    unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    long long y = static_cast<long long>(yoe) + era * 400;
    unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    unsigned mp = (5 * doy + 2) / 153;
    unsigned d = doy - (153 * mp + 2) / 5 + 1;
    unsigned m = mp < 10 ? mp + 3 : mp - 9;
    if (m <= 2) ++y;

    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02u %02lld:%02lld:%02lld", y, m, d,
                  rem / 3600, (rem % 3600) / 60, rem % 60);
    return buf;
}

struct SchemaFlags {
    std::string mode = "unix";
    std::string time_col;  // empty: "timestamp", or "time" under the daytime schema
    std::string day_col = "day";
    std::string base_date;
    std::string x_col = "x";
    std::string y_col = "y";
    std::string z_col = "z";
    std::string delimiter = ",";
    double jitter_tolerance = 0.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--schema", mode, "Timestamp layout of the recording CSV")
            ->check(CLI::IsMember({"unix", "iso", "daytime"}))
            ->capture_default_str();
        cmd->add_option("--time-col", time_col,
                        "Timestamp (or time-of-day) column name (default timestamp, or time "
                        "under the daytime schema)");
        cmd->add_option("--day-col", day_col, "Day ordinal column (daytime schema)")
            ->capture_default_str();
        cmd->add_option("--base-date", base_date, "Date of day 1, YYYY-MM-DD (daytime schema)");
        cmd->add_option("--x-col", x_col, "X axis column")->capture_default_str();
        cmd->add_option("--y-col", y_col, "Y axis column")->capture_default_str();
        cmd->add_option("--z-col", z_col, "Z axis column")->capture_default_str();
        cmd->add_option("--delimiter", delimiter, "Field delimiter")->capture_default_str();
        cmd->add_option("--jitter-tolerance", jitter_tolerance,
                        "Max backward timestamp step absorbed by clamping, seconds")
            ->capture_default_str();
    }

    CsvSchema build() const {
        CsvSchema s;
        if (mode == "unix")
            s.mode = TimestampMode::UnixSeconds;
        else if (mode == "iso")
            s.mode = TimestampMode::Iso8601;
        else
            s.mode = TimestampMode::DayTime;
        s.time_column = time_col.empty()
                            ? (s.mode == TimestampMode::DayTime ? "time" : "timestamp")
                            : time_col;
        s.day_column = day_col;
        if (!base_date.empty()) s.base_date = parse_date_only(base_date);
        else if (s.mode == TimestampMode::DayTime)
            throw ConfigError("daytime schema requires --base-date");
        s.x_column = x_col;
        s.y_column = y_col;
        s.z_column = z_col;
        if (delimiter.size() != 1) throw ConfigError("--delimiter must be a single character");
        s.delimiter = delimiter[0];
        s.jitter_tolerance = jitter_tolerance;
        return s;
    }
};

Recording load_recording(const std::string& path, const CsvSchema& schema, const std::string& id,
                         std::optional<double> rate_hz) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open input file '" + path + "'");
    ParsedRecording parsed = parse_recording(in, schema, id);
    if (rate_hz) parsed.recording.nominal_rate_hz = rate_hz;
    return std::move(parsed.recording);
}

std::map<std::string, Annotation> load_annotation_map(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open annotations file '" + path + "'");
    std::map<std::string, Annotation> by_id;
    for (Annotation& a : parse_annotations(in)) {
        if (!by_id.emplace(a.id, a).second)
            throw Error("duplicate annotation id '" + a.id + "' in '" + path + "'");
    }
    return by_id;
}

// Recording CSVs in a corpus directory, sorted by path; the annotations
// file is excluded when it lives in the same directory.
std::vector<fs::path> corpus_files(const std::string& dir, const std::string& annotations_path) {
    if (!fs::is_directory(dir)) throw Error("corpus directory '" + dir + "' does not exist");
    const fs::path skip = fs::weakly_canonical(annotations_path);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
        if (fs::weakly_canonical(entry.path()) == skip) continue;
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw EmptyCorpus("no recording CSVs in '" + dir + "'");
    return files;
}

std::vector<CorpusNight> load_corpus(const std::string& dir, const std::string& annotations_path,
                                     const CsvSchema& schema, std::optional<double> rate_hz,
                                     bool allow_missing) {
    const auto annotations = load_annotation_map(annotations_path);
    std::vector<CorpusNight> corpus;
    for (const fs::path& path : corpus_files(dir, annotations_path)) {
        const std::string id = path.stem().string();
        auto it = annotations.find(id);
        if (it == annotations.end()) {
            if (allow_missing) continue;
            throw Error("no annotation for recording '" + id + "' (use --allow-missing to skip)");
        }
        CorpusNight night;
        night.recording = load_recording(path.string(), schema, id, rate_hz);
        night.annotation = it->second;
        corpus.push_back(std::move(night));
    }
    if (corpus.empty()) throw EmptyCorpus("no annotated recordings in '" + dir + "'");
    return corpus;
}

ordered_json config_echo(const PipelineConfig& config, bool stream) {
    ordered_json j;
    j["epoch_seconds"] = quant6(config.epoch_seconds);
    j["threshold"] = quant6(config.threshold);
    j["onset_run_minutes"] = quant6(config.onset_run_minutes);
    j["offset_run_minutes"] = quant6(config.offset_run_minutes);
    j["validity_fraction"] = quant6(config.validity_fraction);
    j["lower_quantile"] = quant6(config.lower_quantile);
    j["upper_quantile"] = quant6(config.upper_quantile);
    ordered_json weights = ordered_json::array();
    for (double w : config.context_weights) weights.push_back(quant6(w));
    j["context_weights"] = std::move(weights);
    j["stream"] = stream;
    return j;
}

std::string scores_csv(const PipelineOutput& out) {
    const ScoreSeries& s = out.scores;
    std::string text = "epoch,start_time,activity,smoothed,contextual,normalized,label,valid\n";
    text.reserve(text.size() + s.activity.size() * 64);
    for (std::size_t i = 0; i < s.activity.size(); ++i) {
        text += std::to_string(i);
        text += ',';
        text += fmt("%.3f", out.labels.start_times[i]);
        text += ',';
        text += fmt("%.9g", s.activity[i]);
        text += ',';
        text += fmt("%.9g", s.smoothed[i]);
        text += ',';
        text += fmt("%.9g", s.contextual[i]);
        text += ',';
        text += fmt("%.9g", s.normalized[i]);
        text += ',';
        text += out.labels.labels[i] == SleepLabel::Sleep ? '1' : '0';
        text += ',';
        text += s.valid[i] ? '1' : '0';
        text += '\n';
    }
    return text;
}

int cmd_analyze(const std::string& input, std::string id, const SchemaFlags& schema_flags,
                std::optional<double> rate_hz, const PipelineConfig& config, bool stream,
                const std::string& out_path, const std::string& scores_path) {
    if (id.empty()) id = fs::path(input).stem().string();
    const Recording recording = load_recording(input, schema_flags.build(), id, rate_hz);

    PipelineOutput out;
    if (stream) {
        StreamState state(config, effective_rate_hz(recording));
        for (const AccelSample& s : recording.samples) state.push_sample(s);
        out = state.finalize();
    } else {
        out = run_pipeline(recording, config);
    }

    const auto primary = select_primary(detect_periods(out.labels, config));

    ordered_json j;
    j["id"] = id;
    if (primary) {
        const SleepMetrics m = compute_metrics(out.labels, *primary);
        j["onset"] = quant_time(m.onset_time);
        j["offset"] = quant_time(m.offset_time);
        j["tst_min"] = quant6(m.tst_minutes);
        j["waso_min"] = quant6(m.waso_minutes);
        j["tib_min"] = quant6(m.time_in_bed_minutes);
        j["efficiency"] = quant6(m.efficiency);
    } else {
        j["onset"] = nullptr;
        j["offset"] = nullptr;
        j["tst_min"] = nullptr;
        j["waso_min"] = nullptr;
        j["tib_min"] = nullptr;
        j["efficiency"] = nullptr;
    }
    j["degenerate_spread"] = out.scores.degenerate_spread;
    j["undetected"] = !primary;
    j["config"] = config_echo(config, stream);
    emit_report(j, out_path);

    if (!scores_path.empty()) write_text_file(scores_path, scores_csv(out));
    return 0;
}

ordered_json stats_json(const MetricStats& s) {
    ordered_json j;
    j["mean"] = quant6(s.mean);
    j["median"] = quant6(s.median);
    j["std"] = quant6(s.stddev);
    j["n"] = s.n;
    return j;
}

ordered_json optional_metric(const std::optional<double>& v) {
    if (!v) return nullptr;
    return quant6(*v);
}

int cmd_evaluate(const std::string& corpus_dir, const std::string& annotations_path,
                 const SchemaFlags& schema_flags, std::optional<double> rate_hz,
                 const PipelineConfig& config, bool allow_missing, const std::string& out_path) {
    const std::vector<CorpusNight> corpus =
        load_corpus(corpus_dir, annotations_path, schema_flags.build(), rate_hz, allow_missing);

    std::vector<NightErrors> rows;
    std::vector<std::string> undetected;
    for (const CorpusNight& night : corpus) {
        const PipelineOutput out = run_pipeline(night.recording, config);
        const auto primary = select_primary(detect_periods(out.labels, config));
        if (!primary) {
            undetected.push_back(night.recording.id);
            continue;
        }
        const SleepMetrics m = compute_metrics(out.labels, *primary);
        rows.push_back(night_errors(night.recording.id, m, night.annotation));
    }

    EvalReport report;
    if (!rows.empty()) report = aggregate(rows);

    ordered_json j;
    ordered_json nights = ordered_json::array();
    for (const NightErrors& e : report.nights) {
        ordered_json row;
        row["id"] = e.id;
        row["tst_abs_err_min"] = optional_metric(e.tst_abs_err_min);
        row["waso_abs_err_min"] = optional_metric(e.waso_abs_err_min);
        row["efficiency_abs_err_pct"] = optional_metric(e.efficiency_abs_err_pct);
        row["onset_err_min"] = quant6(e.onset_err_min);
        row["offset_err_min"] = quant6(e.offset_err_min);
        nights.push_back(std::move(row));
    }
    j["nights"] = std::move(nights);
    ordered_json agg;
    agg["tst"] = stats_json(report.tst);
    agg["waso"] = stats_json(report.waso);
    agg["efficiency"] = stats_json(report.efficiency);
    agg["onset"] = stats_json(report.onset);
    agg["offset"] = stats_json(report.offset);
    j["aggregates"] = std::move(agg);
    j["undetected"] = undetected;
    j["night_count"] = report.night_count;
    emit_report(j, out_path);
    return 0;
}

int cmd_calibrate(const std::string& corpus_dir, const std::string& annotations_path,
                  const SchemaFlags& schema_flags, std::optional<double> rate_hz,
                  const PipelineConfig& config, bool allow_missing, double grid_min,
                  double grid_max, double grid_step, const std::string& out_path) {
    const std::vector<CorpusNight> corpus =
        load_corpus(corpus_dir, annotations_path, schema_flags.build(), rate_hz, allow_missing);
    const CalibrationResult result =
        grid_search(corpus, grid_min, grid_max, grid_step, config);

    ordered_json j;
    ordered_json grid = ordered_json::array();
    for (const GridPoint& p : result.grid) {
        ordered_json row;
        row["theta"] = quant6(p.theta);
        row["tst_mae"] = quant6(p.tst_mae);
        row["waso_mae"] = quant6(p.waso_mae);
        grid.push_back(std::move(row));
    }
    j["grid"] = std::move(grid);
    j["selected_theta"] = quant6(result.selected_threshold);
    j["tie_trace"] = result.tie_trace;
    emit_report(j, out_path);
    return 0;
}

int cmd_synth(int nights, std::uint64_t seed, double rate_hz, const std::string& out_dir,
              double duration_h, double pad_min, double wake_level, double wake_noise,
              double sleep_level, double sleep_noise, int awakenings, double awakening_min) {
    fs::create_directories(out_dir);

    std::string annotations = "id,onset,offset,tst_min,waso_min,efficiency_pct\n";
    for (int night = 0; night < nights; ++night) {
        char name[32];
        std::snprintf(name, sizeof(name), "night_%02d", night + 1);

        SynthSpec spec;
        spec.seed = seed + static_cast<std::uint64_t>(night);
        spec.id = name;
        spec.rate_hz = rate_hz;
        spec.start_time = civil_to_epoch(2024, 1, 1) + static_cast<double>(night) * 86400.0;
        spec.duration_s = duration_h * 3600.0;
        spec.night_start = spec.start_time + pad_min * 60.0;
        spec.night_end = spec.start_time + spec.duration_s - pad_min * 60.0;
        spec.wake_level = wake_level;
        spec.wake_noise = wake_noise;
        spec.sleep_level = sleep_level;
        spec.sleep_noise = sleep_noise;
        const double night_span = spec.night_end - spec.night_start;
        for (int a = 0; a < awakenings; ++a) {
            Awakening awk;
            const double center =
                night_span * static_cast<double>(a + 1) / static_cast<double>(awakenings + 1);
            // Whole-minute start keeps awakenings aligned to epoch edges.
            awk.start = spec.night_start +
                        std::floor((center - awakening_min * 30.0) / 60.0) * 60.0;
            awk.duration_s = awakening_min * 60.0;
            spec.awakenings.push_back(awk);
        }

        const SynthOutput out = generate(spec);

        std::string csv = "timestamp,x,y,z\n";
        csv.reserve(csv.size() + out.recording.samples.size() * 32);
        for (const AccelSample& s : out.recording.samples) {
            csv += fmt("%.3f", s.timestamp);
            csv += ',';
            csv += fmt("%.9g", s.x);
            csv += ",0,0\n";
        }
        write_text_file((fs::path(out_dir) / (std::string(name) + ".csv")).string(), csv);

        const Annotation& ann = out.annotation;
        annotations += name;
        annotations += ',';
        annotations += format_instant(ann.onset.seconds);
        annotations += ',';
        annotations += format_instant(ann.offset.seconds);
        annotations += ',';
        annotations += fmt("%.6g", *ann.tst_minutes);
        annotations += ',';
        annotations += fmt("%.6g", *ann.waso_minutes);
        annotations += ',';
        annotations += fmt("%.6g", *ann.efficiency_pct);
        annotations += '\n';
    }
    write_text_file((fs::path(out_dir) / "annotations.csv").string(), annotations);
    std::cout << "wrote " << nights << " night(s) to " << out_dir << "\n";
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Actigraphy sleep analysis"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Analyze one recording CSV");
    std::string an_input, an_id, an_out, an_scores;
    SchemaFlags an_schema;
    double an_epoch = 30.0, an_threshold = -0.05, an_rate = 0.0;
    bool an_stream = false;
    analyze->add_option("--input", an_input, "Recording CSV")->required();
    analyze->add_option("--id", an_id, "Recording id (default: input file stem)");
    an_schema.add_to(analyze);
    analyze->add_option("--rate-hz", an_rate, "Declared sample rate (default: inferred)");
    analyze->add_option("--epoch-seconds", an_epoch, "Epoch length")->capture_default_str();
    analyze->add_option("--threshold", an_threshold, "Sleep threshold on the normalized score")
        ->capture_default_str();
    analyze->add_flag("--stream", an_stream, "Use the incremental pipeline");
    analyze->add_option("--out", an_out, "Report JSON path (default: stdout)");
    analyze->add_option("--scores", an_scores, "Per-epoch score CSV path");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a corpus against annotations");
    std::string ev_corpus, ev_annotations, ev_out;
    SchemaFlags ev_schema;
    double ev_epoch = 30.0, ev_threshold = -0.05, ev_rate = 0.0;
    bool ev_allow_missing = false;
    evaluate->add_option("--corpus", ev_corpus, "Directory of recording CSVs")->required();
    evaluate->add_option("--annotations", ev_annotations, "Annotation CSV")->required();
    ev_schema.add_to(evaluate);
    evaluate->add_option("--rate-hz", ev_rate, "Declared sample rate (default: inferred)");
    evaluate->add_option("--epoch-seconds", ev_epoch, "Epoch length")->capture_default_str();
    evaluate->add_option("--threshold", ev_threshold, "Sleep threshold")->capture_default_str();
    evaluate->add_flag("--allow-missing", ev_allow_missing,
                       "Skip recordings without an annotation instead of failing");
    evaluate->add_option("--out", ev_out, "Report JSON path (default: stdout)");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "Grid-search the sleep threshold");
    std::string ca_corpus, ca_annotations, ca_out;
    SchemaFlags ca_schema;
    double ca_epoch = 30.0, ca_rate = 0.0;
    double ca_grid_min = -0.4, ca_grid_max = 1.0, ca_grid_step = 0.05;
    bool ca_allow_missing = false;
    calibrate->add_option("--corpus", ca_corpus, "Directory of recording CSVs")->required();
    calibrate->add_option("--annotations", ca_annotations, "Annotation CSV")->required();
    ca_schema.add_to(calibrate);
    calibrate->add_option("--rate-hz", ca_rate, "Declared sample rate (default: inferred)");
    calibrate->add_option("--epoch-seconds", ca_epoch, "Epoch length")->capture_default_str();
    calibrate->add_option("--grid-min", ca_grid_min, "Lowest candidate threshold")
        ->capture_default_str();
    calibrate->add_option("--grid-max", ca_grid_max, "Highest candidate threshold")
        ->capture_default_str();
    calibrate->add_option("--grid-step", ca_grid_step, "Grid spacing")->capture_default_str();
    calibrate->add_flag("--allow-missing", ca_allow_missing,
                        "Skip recordings without an annotation instead of failing");
    calibrate->add_option("--out", ca_out, "Report JSON path (default: stdout)");

    // synth
    auto* synth = app.add_subcommand("synth", "Generate synthetic recordings with ground truth");
    int sy_nights = 1, sy_awakenings = 0;
    std::uint64_t sy_seed = 1;
    double sy_rate = 1.0, sy_duration_h = 8.0, sy_pad_min = 60.0;
    double sy_wake_level = 10.0, sy_wake_noise = 0.0, sy_sleep_level = 0.0, sy_sleep_noise = 0.0;
    double sy_awakening_min = 0.0;
    std::string sy_out_dir;
    synth->add_option("--nights", sy_nights, "Number of nights")->required();
    synth->add_option("--seed", sy_seed, "Base random seed")->capture_default_str();
    synth->add_option("--rate-hz", sy_rate, "Sample rate")->capture_default_str();
    synth->add_option("--out-dir", sy_out_dir, "Output directory")->required();
    synth->add_option("--duration-h", sy_duration_h, "Recording length, hours")
        ->capture_default_str();
    synth->add_option("--pad-min", sy_pad_min, "Awake minutes before and after the night")
        ->capture_default_str();
    synth->add_option("--wake-level", sy_wake_level, "Wake VM level")->capture_default_str();
    synth->add_option("--wake-noise", sy_wake_noise, "Wake noise half-width")
        ->capture_default_str();
    synth->add_option("--sleep-level", sy_sleep_level, "Sleep VM level")->capture_default_str();
    synth->add_option("--sleep-noise", sy_sleep_noise, "Sleep noise half-width")
        ->capture_default_str();
    synth->add_option("--awakenings", sy_awakenings, "Planted awakenings per night")
        ->capture_default_str();
    synth->add_option("--awakening-min", sy_awakening_min, "Length of each awakening, minutes")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*analyze) {
            PipelineConfig config;
            config.epoch_seconds = an_epoch;
            config.threshold = an_threshold;
            return cmd_analyze(an_input, an_id, an_schema,
                               an_rate > 0.0 ? std::optional<double>(an_rate) : std::nullopt,
                               config, an_stream, an_out, an_scores);
        }
        if (*evaluate) {
            PipelineConfig config;
            config.epoch_seconds = ev_epoch;
            config.threshold = ev_threshold;
            return cmd_evaluate(ev_corpus, ev_annotations, ev_schema,
                                ev_rate > 0.0 ? std::optional<double>(ev_rate) : std::nullopt,
                                config, ev_allow_missing, ev_out);
        }
        if (*calibrate) {
            PipelineConfig config;
            config.epoch_seconds = ca_epoch;
            return cmd_calibrate(ca_corpus, ca_annotations, ca_schema,
                                 ca_rate > 0.0 ? std::optional<double>(ca_rate) : std::nullopt,
                                 config, ca_allow_missing, ca_grid_min, ca_grid_max, ca_grid_step,
                                 ca_out);
        }
        if (*synth) {
            if (sy_nights < 1) throw BadSpec("--nights must be at least 1");
            return cmd_synth(sy_nights, sy_seed, sy_rate, sy_out_dir, sy_duration_h, sy_pad_min,
                             sy_wake_level, sy_wake_noise, sy_sleep_level, sy_sleep_noise,
                             sy_awakenings, sy_awakening_min);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.push_back("actisleep");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const std::string& s : full) argv.push_back(s.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace actisleep
