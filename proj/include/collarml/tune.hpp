#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "collarml/features.hpp"
#include "collarml/model.hpp"
#include "collarml/series.hpp"

namespace collarml {

// One hyperparameter candidate; `kind` selects which spec applies.
struct GridPoint {
    std::string name;
    ModelKind kind = ModelKind::ridge_cv;
    RidgeCVSpec ridge;
    ForestSpec forest;
};

struct FoldScore {
    double ba = 0.0;
    bool failed = false;
    std::string error;
};

struct TunePointResult {
    std::vector<FoldScore> folds;
    double mean_ba = 0.0;
    double std_ba = 0.0;  // sample std over folds
};

struct TuneResult {
    std::size_t best_index = 0;
    std::vector<TunePointResult> points;
};

struct TuneConfig {
    std::size_t iterations = 10;
    double inner_ratio = 2.0 / 3.0;  // 14 of 21 animals
    std::size_t split_candidates = 10000;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    RocketSpec rocket;
};

TrainedModel fit_grid_point(const FeatureMatrix& X, const GridPoint& point);

// Paired protocol: the same `iterations` animal-grouped inner splits are
// scored for every grid point; best = highest mean BA, ties to the first
// point in grid order.
TuneResult tune(const std::vector<LabeledWindow>& train_windows, FeatureSet fset,
                const std::vector<GridPoint>& grid, const TuneConfig& config);

}  // namespace collarml
