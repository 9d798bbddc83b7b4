#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collarml/catch24.hpp"
#include "collarml/hc_features.hpp"
#include "collarml/rocket.hpp"
#include "collarml/series.hpp"

namespace collarml {

enum class FeatureSet { hc, catch24, rocket };

std::string feature_set_name(FeatureSet s);
std::optional<FeatureSet> feature_set_from_name(const std::string& name);

// Window-wise extraction (no fitting); rows follow window order.
FeatureMatrix hc_matrix(const std::vector<LabeledWindow>& windows, std::size_t threads = 1);
FeatureMatrix catch24_matrix(const std::vector<LabeledWindow>& windows, std::size_t threads = 1);
FeatureMatrix rocket_matrix(const RocketModel& model, const std::vector<LabeledWindow>& windows,
                            std::size_t threads = 1);

struct FeaturePair {
    FeatureMatrix train;
    FeatureMatrix eval;
};

// Extract for a train/eval pair; the rocket variant fits on the training
// windows only (seeded), the others are pure per-window maps.
FeaturePair extract_train_eval(FeatureSet set, const std::vector<LabeledWindow>& train,
                               const std::vector<LabeledWindow>& eval,
                               const RocketSpec& rocket_spec, std::uint64_t rocket_seed,
                               std::size_t threads = 1);

}  // namespace collarml
