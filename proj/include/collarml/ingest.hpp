#pragma once

#include <string>

#include "collarml/series.hpp"

namespace collarml {

// Parses `timestamp,x,y,z` (g units). Timestamps are ISO-8601 UTC or
// epoch seconds, auto-detected. Single dropped samples (gap of up to 2
// sample periods) are filled by linear interpolation; longer gaps raise
// DataError naming the offending line. Non-monotone timestamps raise
// DataError.
TriAxialSeries parse_accel_csv(const std::string& path, double sample_rate_hz,
                               const std::string& animal_id = "");

// Canonical writer: epoch-second timestamps, %.9g values. write(parse(f))
// is byte-identical for files produced by this writer.
void write_accel_csv(const std::string& path, const TriAxialSeries& series);

// Parses `behaviour,start,stop` and returns a normalized track: sorted,
// non-overlapping (a later-starting interval truncates any earlier one at
// its start), behaviours outside the 6-class ethogram mapped to `other`.
AnnotationTrack parse_annotations(const std::string& path, const std::string& animal_id = "");

void write_annotations(const std::string& path, const AnnotationTrack& track);

// Normalization used by parse_annotations, exposed for direct use on
// in-memory tracks. Throws DataError when any interval has stop <= start.
AnnotationTrack normalize_annotations(AnnotationTrack track);

// Attaches a per-sample label channel. `offset_s` shifts the annotation
// clock onto the accelerometer clock. A sample at time t gets the label of
// the interval with t in [start+offset, stop+offset); all other samples
// are kUnlabeled. Throws DataError when no sample falls in any interval.
TriAxialSeries align(const TriAxialSeries& series, const AnnotationTrack& track,
                     double offset_s = 0.0);

// Epoch seconds from an ISO-8601 UTC string or a decimal epoch literal.
double parse_timestamp(const std::string& text);

}  // namespace collarml
