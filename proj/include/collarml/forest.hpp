#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "collarml/ridge.hpp"  // ClassWeight
#include "collarml/series.hpp"

namespace collarml {

enum class MaxFeatures { all, sqrt_, log2_ };
enum class SplitCriterion { gini, entropy };

struct ForestSpec {
    std::size_t n_estimators = 100;
    std::optional<std::size_t> max_depth;  // unbounded when absent
    std::size_t min_samples_split = 2;
    MaxFeatures max_features = MaxFeatures::sqrt_;
    SplitCriterion criterion = SplitCriterion::gini;
    ClassWeight class_weight = ClassWeight::none;
    std::uint64_t seed = 0;
    bool bootstrap = true;
};

// Flat node array per tree; leaves have feature == kLeaf.
struct TreeNode {
    static constexpr std::uint32_t kLeaf = 0xFFFFFFFF;
    std::uint32_t feature = kLeaf;
    double threshold = 0.0;       // go left when x <= threshold
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::vector<double> distribution;  // per class, normalized; leaves only
};

struct ForestModel {
    std::vector<Behaviour> classes;
    std::vector<std::string> feature_names;
    std::vector<std::vector<TreeNode>> trees;
    ForestSpec spec;
};

double gini_impurity(const std::vector<double>& class_weights);
double entropy_impurity(const std::vector<double>& class_weights);

ForestModel forest_fit(const FeatureMatrix& X, const ForestSpec& spec);

// Averaged leaf distributions (rows x classes, row-major).
std::vector<double> forest_proba(const ForestModel& model, const FeatureMatrix& X);
std::vector<Behaviour> forest_predict(const ForestModel& model, const FeatureMatrix& X);

}  // namespace collarml
