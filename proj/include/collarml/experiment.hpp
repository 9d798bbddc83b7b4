#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "collarml/metrics.hpp"
#include "collarml/split.hpp"
#include "collarml/tune.hpp"

namespace collarml {

struct ExperimentConfig {
    double split_ratio = 0.7;
    std::size_t split_candidates = 10000;
    std::size_t tune_iterations = 10;
    double inner_ratio = 2.0 / 3.0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    RocketSpec rocket;
    std::vector<FeatureSet> feature_sets;
    std::vector<GridPoint> ridge_grid;
    std::vector<GridPoint> forest_grid;
    std::vector<ModelKind> models;
};

struct StageTimings {
    double extract_s = 0.0;
    double tune_s = 0.0;
    double train_s = 0.0;
    double test_s = 0.0;
};

struct ComboReport {
    FeatureSet fset = FeatureSet::hc;
    ModelKind model = ModelKind::ridge_cv;
    TuneResult tuning;
    GridPoint chosen;
    MetricsReport test_metrics;
    StageTimings timings;  // serialized separately so reports stay byte-stable
};

struct ExperimentReport {
    GroupedSplit split;
    std::vector<Behaviour> classes;
    std::vector<ComboReport> combos;
    std::uint64_t seed = 0;
};

ExperimentReport run_experiment(const std::vector<LabeledWindow>& windows,
                                const ExperimentConfig& config);

// report.json + report.txt + confusion_<set>_<model>.csv (+ timings.json,
// the only file allowed to differ between reruns).
void write_experiment_report(const std::string& dir, const ExperimentReport& report);

std::string model_kind_name(ModelKind kind);

}  // namespace collarml
