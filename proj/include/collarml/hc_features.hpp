#pragma once

#include <string>
#include <vector>

#include "collarml/series.hpp"

namespace collarml {

struct FeatureVector {
    std::vector<std::string> names;  // "<channel>__<feature>"
    std::vector<double> values;
};

struct WelchConfig {
    std::size_t segment_length = 64;  // full window when shorter
};

// H = -sum P(f) log2 P(f) over the normalized Welch PSD; 0 for
// zero-variance input.
double spectral_entropy(const std::vector<double>& channel, double sample_rate_hz,
                        const WelchConfig& cfg = {});

inline constexpr std::size_t kNumHcFeatures = 11;

// The 11 per-channel feature names in output order.
const std::vector<std::string>& hc_feature_names();

// 11 features on one channel: mean, median, min, max, std (population),
// q1, q3, spectral_entropy, motion_variation, skewness, kurtosis.
// Degenerate (zero-variance) inputs yield 0 for the shape and spread
// statistics, never NaN.
std::vector<double> hc_channel_features(const std::vector<double>& channel,
                                        double sample_rate_hz, const WelchConfig& cfg = {});

// All 8 channels x 11 features = 88 values.
FeatureVector hc_features(const LabeledWindow& window, const WelchConfig& cfg = {});

}  // namespace collarml
