#include "actisleep/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

#include "actisleep/pipeline.hpp"

namespace actisleep {

namespace {

// Split one CSV line. Double quotes wrap fields that contain the delimiter;
// "" inside a quoted field is an escaped quote.
std::vector<std::string> split_csv_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& text, double& out) {
    std::string t = strip(text);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && std::isfinite(out);
}

bool parse_long(const std::string& text, long& out) {
    std::string t = strip(text);
    if (t.empty()) return false;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name,
                        const char* what) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (strip(header[i]) == name) return i;
    throw MissingColumn(std::string(what) + " column '" + name + "' not found in header");
}

bool read_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

// "HH:MM" or "HH:MM:SS" -> seconds since midnight, or nullopt on bad shape.
std::optional<double> try_parse_time_of_day(const std::string& text) {
    long h = 0, m = 0;
    double s = 0.0;
    std::size_t c1 = text.find(':');
    if (c1 == std::string::npos) return std::nullopt;
    std::size_t c2 = text.find(':', c1 + 1);
    if (!parse_long(text.substr(0, c1), h)) return std::nullopt;
    if (c2 == std::string::npos) {
        if (!parse_long(text.substr(c1 + 1), m)) return std::nullopt;
    } else {
        if (!parse_long(text.substr(c1 + 1, c2 - c1 - 1), m)) return std::nullopt;
        if (!parse_double(text.substr(c2 + 1), s)) return std::nullopt;
    }
    if (h < 0 || h > 23 || m < 0 || m > 59 || s < 0.0 || s >= 60.0) return std::nullopt;
    return h * 3600.0 + m * 60.0 + s;
}

}  // namespace

void CsvSchema::validate() const {
    if (x_column == y_column || x_column == z_column || y_column == z_column)
        throw ConfigError("x/y/z columns must be distinct");
    if (jitter_tolerance < 0.0) throw ConfigError("jitter_tolerance must be >= 0");
}

double civil_to_epoch(int year, int month, int day, int hour, int minute, double second) {
    // days_from_civil, proleptic Gregorian calendar.
    int y = year - (month <= 2 ? 1 : 0);
    long long era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2u) / 5u +
                   static_cast<unsigned>(day) - 1u;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    long long days = era * 146097 + static_cast<long long>(doe) - 719468;
    return static_cast<double>(days) * 86400.0 + hour * 3600.0 + minute * 60.0 + second;
}

TimeMark parse_time_mark(const std::string& raw) {
    std::string text = strip(raw);
    if (text.empty()) throw BadTimeFormat("empty time field");
    if (!text.empty() && text.back() == 'Z') text.pop_back();

    // Dated form: YYYY-MM-DD[ T]HH:MM[:SS]
    std::size_t dash = text.find('-');
    if (dash != std::string::npos && dash > 0) {
        long year = 0, month = 0, day = 0;
        std::size_t dash2 = text.find('-', dash + 1);
        std::size_t sep = text.find_first_of("T ", dash + 1);
        if (dash2 == std::string::npos || sep == std::string::npos || dash2 > sep)
            throw BadTimeFormat("bad ISO-8601 timestamp: '" + raw + "'");
        if (!parse_long(text.substr(0, dash), year) ||
            !parse_long(text.substr(dash + 1, dash2 - dash - 1), month) ||
            !parse_long(text.substr(dash2 + 1, sep - dash2 - 1), day))
            throw BadTimeFormat("bad ISO-8601 date: '" + raw + "'");
        if (month < 1 || month > 12 || day < 1 || day > 31)
            throw BadTimeFormat("date out of range: '" + raw + "'");
        auto tod = try_parse_time_of_day(text.substr(sep + 1));
        if (!tod) throw BadTimeFormat("bad time-of-day in timestamp: '" + raw + "'");
        return TimeMark::instant(
            civil_to_epoch(static_cast<int>(year), static_cast<int>(month), static_cast<int>(day)) +
            *tod);
    }

    auto tod = try_parse_time_of_day(text);
    if (!tod) throw BadTimeFormat("bad time field: '" + raw + "'");
    return TimeMark::time_of_day(*tod);
}

ParsedRecording parse_recording(std::istream& source, const CsvSchema& schema,
                                const std::string& id) {
    schema.validate();
    std::string line;
    if (!read_line(source, line)) throw EmptyRecording("no header row in '" + id + "'");
    const auto header = split_csv_line(line, schema.delimiter);

    const std::size_t xi = find_column(header, schema.x_column, "x");
    const std::size_t yi = find_column(header, schema.y_column, "y");
    const std::size_t zi = find_column(header, schema.z_column, "z");
    std::size_t ti = 0, di = 0;
    if (schema.mode == TimestampMode::DayTime) {
        ti = find_column(header, schema.time_column, "time");
        di = find_column(header, schema.day_column, "day");
    } else {
        ti = find_column(header, schema.time_column, "timestamp");
    }

    ParsedRecording out;
    out.recording.id = id;
    std::size_t row = 1;
    double prev_time = -std::numeric_limits<double>::infinity();
    while (read_line(source, line)) {
        ++row;
        if (strip(line).empty()) continue;
        const auto fields = split_csv_line(line, schema.delimiter);
        std::size_t need = std::max({xi, yi, zi, ti, schema.mode == TimestampMode::DayTime ? di : ti});
        if (fields.size() <= need) {
            ++out.skipped_rows;
            continue;
        }

        AccelSample s;
        if (!parse_double(fields[xi], s.x) || !parse_double(fields[yi], s.y) ||
            !parse_double(fields[zi], s.z)) {
            ++out.skipped_rows;
            continue;
        }

        bool time_ok = true;
        switch (schema.mode) {
            case TimestampMode::UnixSeconds:
                time_ok = parse_double(fields[ti], s.timestamp);
                break;
            case TimestampMode::Iso8601: {
                try {
                    TimeMark mark = parse_time_mark(fields[ti]);
                    time_ok = mark.dated();
                    s.timestamp = mark.seconds;
                } catch (const BadTimeFormat&) {
                    time_ok = false;
                }
                break;
            }
            case TimestampMode::DayTime: {
                long day = 0;
                double tod = 0.0;
                auto parsed = try_parse_time_of_day(strip(fields[ti]));
                if (parsed && parse_long(fields[di], day) && day >= 1) {
                    tod = *parsed;
                    s.timestamp = schema.base_date + static_cast<double>(day - 1) * 86400.0 + tod;
                } else {
                    time_ok = false;
                }
                break;
            }
        }
        if (!time_ok) {
            ++out.skipped_rows;
            continue;
        }

        if (s.timestamp < prev_time) {
            if (prev_time - s.timestamp > schema.jitter_tolerance)
                throw NonMonotonicTime("timestamp decreases at row " + std::to_string(row) +
                                       " of '" + id + "'");
            s.timestamp = prev_time;  // absorb jitter within tolerance
        }
        prev_time = s.timestamp;
        out.recording.samples.push_back(s);
    }

    if (out.recording.samples.empty())
        throw EmptyRecording("no valid data rows in '" + id + "'");
    return out;
}

std::vector<Annotation> parse_annotations(std::istream& source) {
    std::string line;
    if (!read_line(source, line)) throw MissingColumn("annotation file has no header");
    const auto header = split_csv_line(line, ',');
    const std::size_t idi = find_column(header, "id", "id");
    const std::size_t oni = find_column(header, "onset", "onset");
    const std::size_t offi = find_column(header, "offset", "offset");
    auto optional_column = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (strip(header[i]) == name) return i;
        return std::nullopt;
    };
    const auto tsti = optional_column("tst_min");
    const auto wasoi = optional_column("waso_min");
    const auto effi = optional_column("efficiency_pct");

    std::vector<Annotation> out;
    std::size_t row = 1;
    while (read_line(source, line)) {
        ++row;
        if (strip(line).empty()) continue;
        const auto fields = split_csv_line(line, ',');
        if (fields.size() <= std::max(oni, offi) || fields.size() <= idi)
            throw BadTimeFormat("annotation row " + std::to_string(row) + " is short");
        Annotation a;
        a.id = strip(fields[idi]);
        try {
            a.onset = parse_time_mark(fields[oni]);
            a.offset = parse_time_mark(fields[offi]);
        } catch (const BadTimeFormat& e) {
            throw BadTimeFormat(std::string(e.what()) + " (annotation row " + std::to_string(row) +
                                ")");
        }
        auto opt_value = [&](const std::optional<std::size_t>& col) -> std::optional<double> {
            if (!col || *col >= fields.size()) return std::nullopt;
            double v;
            if (!parse_double(fields[*col], v)) return std::nullopt;
            return v;
        };
        a.tst_minutes = opt_value(tsti);
        a.waso_minutes = opt_value(wasoi);
        a.efficiency_pct = opt_value(effi);
        out.push_back(std::move(a));
    }
    return out;
}

double effective_rate_hz(const Recording& recording) {
    if (recording.nominal_rate_hz && *recording.nominal_rate_hz > 0.0)
        return *recording.nominal_rate_hz;
    const auto& s = recording.samples;
    if (s.size() < 2) return 1.0;
    std::vector<double> gaps;
    gaps.reserve(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) gaps.push_back(s[i].timestamp - s[i - 1].timestamp);
    std::sort(gaps.begin(), gaps.end());
    double median = gaps.size() % 2 == 1
                        ? gaps[gaps.size() / 2]
                        : 0.5 * (gaps[gaps.size() / 2 - 1] + gaps[gaps.size() / 2]);
    if (!(median > 0.0)) return 1.0;
    return 1.0 / median;
}

std::size_t expected_samples_per_epoch(double rate_hz, double epoch_seconds) {
    double expected = std::round(rate_hz * epoch_seconds);
    return expected < 1.0 ? 1 : static_cast<std::size_t>(expected);
}

std::vector<EpochActivity> segment_epochs(const Recording& recording,
                                          const PipelineConfig& config) {
    config.validate();
    if (recording.samples.empty())
        throw EmptyRecording("recording '" + recording.id + "' has no samples");

    const double te = config.epoch_seconds;
    const double origin = recording.samples.front().timestamp;
    const std::size_t expected = expected_samples_per_epoch(effective_rate_hz(recording), te);
    const std::size_t floor_count =
        static_cast<std::size_t>(std::ceil(config.validity_fraction * static_cast<double>(expected)));

    std::vector<EpochActivity> epochs;
    for (const AccelSample& s : recording.samples) {
        double rel = (s.timestamp - origin) / te;
        if (rel < 0.0) throw NonMonotonicTime("sample precedes recording origin");
        std::size_t k = static_cast<std::size_t>(rel);
        while (epochs.size() <= k) {
            EpochActivity e;
            e.index = epochs.size();
            e.start_time = origin + static_cast<double>(e.index) * te;
            epochs.push_back(e);
        }
        epochs[k].activity += vector_magnitude(s);
        epochs[k].sample_count += 1;
    }
    // Gap epochs (zero samples) are always invalid, whatever the fraction.
    const std::size_t floor_eff = std::max<std::size_t>(floor_count, 1);
    for (EpochActivity& e : epochs) e.valid = e.sample_count >= floor_eff;

    if (!epochs.empty() && !epochs.back().valid) epochs.pop_back();
    if (epochs.empty())
        throw EmptyRecording("recording '" + recording.id + "' has no usable epochs");
    return epochs;
}

}  // namespace actisleep
