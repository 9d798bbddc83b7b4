#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "collarml/behaviour.hpp"

namespace collarml {

// Per-sample label code: a Behaviour ordinal, or kUnlabeled.
using LabelCode = std::int8_t;
inline constexpr LabelCode kUnlabeled = -1;

inline LabelCode to_code(Behaviour b) { return static_cast<LabelCode>(b); }

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Raw tri-axial acceleration stream for one animal, in g, uniformly
// sampled. `start_time_s` is epoch seconds (UTC).
struct TriAxialSeries {
    std::string animal_id;
    double start_time_s = 0.0;
    double sample_rate_hz = 25.0;
    std::vector<Vec3> samples;
    // Optional per-sample labels, attached by align(); empty until then.
    std::vector<LabelCode> labels;

    std::size_t size() const { return samples.size(); }
    double time_at(std::size_t i) const {
        return start_time_s + static_cast<double>(i) / sample_rate_hz;
    }
    double duration_s() const {
        return samples.empty() ? 0.0 : static_cast<double>(samples.size()) / sample_rate_hz;
    }
};

struct AnnotationInterval {
    Behaviour behaviour = Behaviour::other;
    double start_s = 0.0;
    double stop_s = 0.0;
};

struct AnnotationTrack {
    std::string animal_id;
    std::vector<AnnotationInterval> intervals;  // normalized: sorted, non-overlapping
    // Count of input rows whose behaviour string was outside the 6-class
    // ethogram and got mapped to `other`.
    std::size_t unknown_behaviour_count = 0;
};

enum class Channel : std::uint8_t {
    x = 0,
    y,
    z,
    magnitude,
    odba,
    vedba,
    pitch,
    roll,
};

inline constexpr std::size_t kNumChannels = 8;

inline constexpr std::array<Channel, kNumChannels> all_channels{
    Channel::x,    Channel::y,     Channel::z,     Channel::magnitude,
    Channel::odba, Channel::vedba, Channel::pitch, Channel::roll,
};

std::string_view channel_name(Channel c);

// The 8 derived time-series sharing one time base, labels carried through.
struct ChannelSet {
    std::string animal_id;
    double start_time_s = 0.0;
    double sample_rate_hz = 25.0;
    std::array<std::vector<double>, kNumChannels> channels;
    std::vector<LabelCode> labels;

    std::vector<double>& operator[](Channel c) { return channels[static_cast<std::size_t>(c)]; }
    const std::vector<double>& operator[](Channel c) const {
        return channels[static_cast<std::size_t>(c)];
    }
    std::size_t length() const { return channels[0].size(); }
};

// One fixed-length multi-channel segment with a single behaviour label.
struct LabeledWindow {
    std::string animal_id;
    std::size_t window_index = 0;
    double start_time_s = 0.0;
    double sample_rate_hz = 25.0;
    std::array<std::vector<double>, kNumChannels> channels;
    Behaviour label = Behaviour::other;

    const std::vector<double>& channel(Channel c) const {
        return channels[static_cast<std::size_t>(c)];
    }
    std::size_t length() const { return channels[0].size(); }
};

// Rows = windows, columns = named features; labels and animal ids ride
// along row-wise.
struct FeatureMatrix {
    std::vector<std::string> feature_names;
    std::vector<double> values;  // row-major, rows() x cols()
    std::vector<Behaviour> labels;
    std::vector<std::string> animal_ids;

    std::size_t cols() const { return feature_names.size(); }
    std::size_t rows() const { return feature_names.empty() ? 0 : values.size() / feature_names.size(); }
    double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
    double& at(std::size_t r, std::size_t c) { return values[r * cols() + c]; }

    // FNV-1a over the ordered feature names; stored in persisted matrices
    // and models so train/predict schema mismatches fail fast.
    std::uint64_t schema_hash() const;
};

}  // namespace collarml
