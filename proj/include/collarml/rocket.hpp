#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "collarml/hc_features.hpp"
#include "collarml/series.hpp"

namespace collarml {

struct RocketSpec {
    std::size_t target_features = 10000;  // realized count rounds down to a multiple of 84
    bool per_channel = false;             // one transform per channel instead of channel subsets
};

// One (kernel, dilation) group sharing a convolution.
struct RocketGroup {
    std::uint32_t kernel = 0;    // index into kernel_position_sets
    std::uint32_t dilation = 1;
    bool padding = false;
    std::vector<std::uint8_t> channels;  // summed before convolving
    std::size_t first_feature = 0;
    std::size_t count = 0;  // biases for this group
};

struct RocketModel {
    std::size_t window_length = 0;
    std::size_t num_features = 0;
    std::uint64_t seed = 0;
    bool per_channel = false;
    std::vector<std::array<std::uint8_t, 3>> kernel_position_sets;  // 84 = C(9,3)
    std::vector<std::uint32_t> dilations;
    std::vector<std::uint32_t> features_per_dilation;  // per kernel, same order
    std::vector<RocketGroup> groups;
    std::vector<double> biases;  // one per feature
};

// All C(9,3) = 84 choices of the +2 positions, lexicographic.
std::vector<std::array<std::uint8_t, 3>> rocket_kernel_position_sets();

// Dilated +-weights convolution of one series; output length is
// x.size() (padded) or x.size() - 8*dilation (unpadded).
std::vector<double> rocket_convolve(const std::vector<double>& x,
                                    const std::array<std::uint8_t, 3>& positions,
                                    std::uint32_t dilation, bool padding);

RocketModel rocket_fit(const std::vector<LabeledWindow>& training_windows,
                       const RocketSpec& spec, std::uint64_t seed);

// PPV per (group, bias): fraction of convolution outputs strictly above
// the bias. Length num_features, all values in [0, 1].
std::vector<double> rocket_transform(const RocketModel& model, const LabeledWindow& window);

FeatureVector rocket_features(const RocketModel& model, const LabeledWindow& window);

std::vector<std::string> rocket_feature_names(const RocketModel& model);

void save_rocket_model(const std::string& path, const RocketModel& model);
RocketModel load_rocket_model(const std::string& path);

}  // namespace collarml
