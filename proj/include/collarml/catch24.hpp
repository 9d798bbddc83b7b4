#pragma once

#include <string>
#include <vector>

#include "collarml/hc_features.hpp"
#include "collarml/series.hpp"

namespace collarml {

struct Catch24Spec {
    bool include_mean_std = true;  // append raw-channel mean and std
    bool zscore_input = true;      // z-score before the 22 characteristics
};

inline constexpr std::size_t kNumCatch22 = 22;

// The 22 characteristic names, in canonical order.
const std::vector<std::string>& catch22_feature_names();

// The 22 characteristics (+ raw mean/std when requested) on one channel.
// A constant channel returns the documented fallback: 0 for all 22, then
// mean = c and std = 0.
std::vector<double> catch24_values(const std::vector<double>& channel, const Catch24Spec& spec = {});

FeatureVector catch24_vector(const std::vector<double>& channel, const Catch24Spec& spec = {});

// All 8 channels: 24 x 8 = 192 features per window.
FeatureVector catch24_features(const LabeledWindow& window, const Catch24Spec& spec = {});

// Shared primitive: fraction of successive differences with
// |x_{i+1} - x_i| > 0.04 * sigma(x).
double pnn40(const std::vector<double>& channel);

}  // namespace collarml
