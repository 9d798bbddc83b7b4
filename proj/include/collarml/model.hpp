#pragma once

#include <string>
#include <vector>

#include "collarml/forest.hpp"
#include "collarml/ridge.hpp"
#include "collarml/series.hpp"

namespace collarml {

enum class ModelKind { ridge_cv, random_forest };

// Uniform fit/predict wrapper so the tuning and experiment harness can
// treat both families interchangeably.
struct TrainedModel {
    ModelKind kind = ModelKind::ridge_cv;
    RidgeModel ridge;    // valid when kind == ridge_cv
    ForestModel forest;  // valid when kind == random_forest

    const std::vector<Behaviour>& classes() const {
        return kind == ModelKind::ridge_cv ? ridge.classes : forest.classes;
    }
    const std::vector<std::string>& feature_names() const {
        return kind == ModelKind::ridge_cv ? ridge.feature_names : forest.feature_names;
    }
};

TrainedModel train_ridge(const FeatureMatrix& X, const RidgeCVSpec& spec);
TrainedModel train_forest(const FeatureMatrix& X, const ForestSpec& spec);

// Schema-checked: X.feature_names must equal the model's, same order.
std::vector<Behaviour> predict(const TrainedModel& model, const FeatureMatrix& X);

// Ridge persists as JSON; forests as JSON header + length-prefixed binary
// tree block. Loading reproduces predictions bit-exactly.
void save_model(const std::string& path, const TrainedModel& model);
TrainedModel load_model(const std::string& path);

}  // namespace collarml
