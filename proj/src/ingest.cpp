#include "collarml/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "collarml/csv.hpp"
#include "collarml/errors.hpp"

namespace collarml {

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const long long yoe = y - era * 400;
    const long long doy = (153LL * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const long long doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

double parse_number(const std::string& s, bool& ok) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    ok = end != s.c_str() && *end == '\0';
    return v;
}

}  // namespace

double parse_timestamp(const std::string& text) {
    // Epoch seconds parse fully as one number; ISO-8601 strings do not.
    {
        bool ok = false;
        const double v = parse_number(text, ok);
        if (ok && text.find('T') == std::string::npos) return v;
    }
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    char tail[8] = {0};
    const int n = std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%lf%7s", &y, &mo, &d, &h, &mi, &sec, tail);
    if (n < 6 || (tail[0] != '\0' && std::string(tail) != "Z")) {
        throw DataError("unparseable timestamp: " + text);
    }
    return static_cast<double>(days_from_civil(y, mo, d)) * 86400.0 + h * 3600.0 + mi * 60.0 + sec;
}

TriAxialSeries parse_accel_csv(const std::string& path, double sample_rate_hz,
                               const std::string& animal_id) {
    if (sample_rate_hz <= 0.0) throw ContractError("sample_rate_hz must be positive");
    const auto rows = csv::read_file(path);
    if (rows.size() < 2) throw DataError(path + ": no data rows");
    const auto& header = rows.front().fields;
    if (header.size() < 4 || header[0] != "timestamp" || header[1] != "x" || header[2] != "y" ||
        header[3] != "z") {
        throw DataError(path + ": expected header timestamp,x,y,z");
    }

    TriAxialSeries series;
    series.animal_id = animal_id.empty() ? path : animal_id;
    series.sample_rate_hz = sample_rate_hz;
    const double period = 1.0 / sample_rate_hz;

    double prev_t = 0.0;
    bool first = true;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 4) {
            throw DataError(path + ":" + std::to_string(row.line_number) + ": expected 4 fields");
        }
        double t;
        try {
            t = parse_timestamp(row.fields[0]);
        } catch (const DataError&) {
            throw DataError(path + ":" + std::to_string(row.line_number) + ": bad timestamp '" +
                            row.fields[0] + "'");
        }
        bool okx = false, oky = false, okz = false;
        Vec3 v{parse_number(row.fields[1], okx), parse_number(row.fields[2], oky),
               parse_number(row.fields[3], okz)};
        if (!okx || !oky || !okz) {
            throw DataError(path + ":" + std::to_string(row.line_number) + ": malformed sample row");
        }
        if (first) {
            series.start_time_s = t;
            series.samples.push_back(v);
            prev_t = t;
            first = false;
            continue;
        }
        const double dt = t - prev_t;
        if (dt <= 0.0) {
            throw DataError(path + ":" + std::to_string(row.line_number) +
                            ": non-monotone timestamp");
        }
        if (dt > 2.0 * period + 1e-9) {
            throw DataError(path + ":" + std::to_string(row.line_number) + ": gap of " +
                            std::to_string(dt) + " s exceeds 2 sample periods");
        }
        // one dropped sample: fill by linear interpolation
        if (dt > 1.5 * period) {
            const Vec3& p = series.samples.back();
            series.samples.push_back(
                Vec3{0.5 * (p.x + v.x), 0.5 * (p.y + v.y), 0.5 * (p.z + v.z)});
        }
        series.samples.push_back(v);
        prev_t = t;
    }
    if (series.samples.empty()) throw DataError(path + ": empty series");
    return series;
}

void write_accel_csv(const std::string& path, const TriAxialSeries& series) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(series.size() + 1);
    rows.push_back({"timestamp", "x", "y", "z"});
    for (std::size_t i = 0; i < series.size(); ++i) {
        rows.push_back({csv::format_double(series.time_at(i)), csv::format_double(series.samples[i].x),
                        csv::format_double(series.samples[i].y),
                        csv::format_double(series.samples[i].z)});
    }
    csv::write_file(path, rows);
}

AnnotationTrack normalize_annotations(AnnotationTrack track) {
    for (const auto& iv : track.intervals) {
        if (iv.stop_s <= iv.start_s) {
            throw DataError("annotation interval with stop <= start (start=" +
                            std::to_string(iv.start_s) + ")");
        }
    }
    std::stable_sort(track.intervals.begin(), track.intervals.end(),
                     [](const AnnotationInterval& a, const AnnotationInterval& b) {
                         return a.start_s < b.start_s;
                     });
    // later-start interval wins: truncate the earlier one at its start
    std::vector<AnnotationInterval> out;
    for (const auto& iv : track.intervals) {
        while (!out.empty() && out.back().start_s >= iv.start_s) out.pop_back();
        if (!out.empty() && out.back().stop_s > iv.start_s) out.back().stop_s = iv.start_s;
        out.push_back(iv);
    }
    track.intervals = std::move(out);
    return track;
}

AnnotationTrack parse_annotations(const std::string& path, const std::string& animal_id) {
    const auto rows = csv::read_file(path);
    if (rows.empty()) throw DataError(path + ": empty annotation file");
    AnnotationTrack track;
    track.animal_id = animal_id.empty() ? path : animal_id;

    std::size_t start_row = 0;
    if (rows[0].fields.size() >= 3 && rows[0].fields[0] == "behaviour") start_row = 1;
    for (std::size_t r = start_row; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 3) {
            throw DataError(path + ":" + std::to_string(row.line_number) + ": expected 3 fields");
        }
        bool known = false;
        AnnotationInterval iv;
        iv.behaviour = behaviour_from_string(row.fields[0], &known);
        if (!known) ++track.unknown_behaviour_count;
        try {
            iv.start_s = parse_timestamp(row.fields[1]);
            iv.stop_s = parse_timestamp(row.fields[2]);
        } catch (const DataError&) {
            throw DataError(path + ":" + std::to_string(row.line_number) + ": bad interval time");
        }
        if (iv.stop_s <= iv.start_s) {
            throw DataError(path + ":" + std::to_string(row.line_number) + ": stop <= start");
        }
        track.intervals.push_back(iv);
    }
    const std::size_t unknown = track.unknown_behaviour_count;
    track = normalize_annotations(std::move(track));
    track.unknown_behaviour_count = unknown;
    return track;
}

void write_annotations(const std::string& path, const AnnotationTrack& track) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"behaviour", "start", "stop"});
    for (const auto& iv : track.intervals) {
        rows.push_back({std::string(to_string(iv.behaviour)), csv::format_double(iv.start_s),
                        csv::format_double(iv.stop_s)});
    }
    csv::write_file(path, rows);
}

TriAxialSeries align(const TriAxialSeries& series, const AnnotationTrack& track, double offset_s) {
    TriAxialSeries out = series;
    out.labels.assign(series.size(), kUnlabeled);

    std::size_t labeled = 0;
    std::size_t iv_idx = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = series.time_at(i);
        while (iv_idx < track.intervals.size() &&
               track.intervals[iv_idx].stop_s + offset_s <= t) {
            ++iv_idx;
        }
        if (iv_idx < track.intervals.size() && track.intervals[iv_idx].start_s + offset_s <= t &&
            t < track.intervals[iv_idx].stop_s + offset_s) {
            out.labels[i] = to_code(track.intervals[iv_idx].behaviour);
            ++labeled;
        }
    }
    if (labeled == 0) {
        throw DataError("align: annotations do not overlap the series time span");
    }
    return out;
}

}  // namespace collarml
