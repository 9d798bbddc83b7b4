#include "collarml/tune.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "collarml/errors.hpp"
#include "collarml/metrics.hpp"
#include "collarml/split.hpp"
#include "collarml/thread_pool.hpp"

namespace collarml {

namespace {

std::vector<Behaviour> classes_of(const std::vector<LabeledWindow>& windows) {
    std::set<Behaviour> seen;
    for (const auto& w : windows) seen.insert(w.label);
    return {seen.begin(), seen.end()};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

TrainedModel fit_grid_point(const FeatureMatrix& X, const GridPoint& point) {
    if (point.kind == ModelKind::ridge_cv) return train_ridge(X, point.ridge);
    return train_forest(X, point.forest);
}

TuneResult tune(const std::vector<LabeledWindow>& train_windows, FeatureSet fset,
                const std::vector<GridPoint>& grid, const TuneConfig& config) {
    if (grid.empty()) throw ContractError("tune: empty grid");
    if (config.iterations == 0) throw ContractError("tune: iterations must be >= 1");

    const auto classes = classes_of(train_windows);

    // the same seeded inner splits for every grid point (paired comparison)
    std::vector<GroupedSplit> splits(config.iterations);
    for (std::size_t it = 0; it < config.iterations; ++it) {
        splits[it] = grouped_stratified_split(train_windows, config.inner_ratio,
                                              config.split_candidates,
                                              derive_seed(config.seed, it));
    }

    // features per fold, shared across grid points
    std::vector<FeaturePair> folds(config.iterations);
    parallel_for(config.iterations, config.threads, [&](std::size_t it) {
        const auto inner_train = filter_windows(train_windows, splits[it].train_animals);
        const auto inner_eval = filter_windows(train_windows, splits[it].test_animals);
        folds[it] = extract_train_eval(fset, inner_train, inner_eval, config.rocket,
                                       derive_seed(config.seed, 1000 + it), 1);
    });

    TuneResult result;
    result.points.assign(grid.size(), {});
    for (auto& p : result.points) p.folds.resize(config.iterations);

    parallel_for(grid.size() * config.iterations, config.threads, [&](std::size_t slot) {
        const std::size_t gi = slot / config.iterations;
        const std::size_t it = slot % config.iterations;
        FoldScore& score = result.points[gi].folds[it];
        try {
            const TrainedModel model = fit_grid_point(folds[it].train, grid[gi]);
            const auto predicted = predict(model, folds[it].eval);
            score.ba = compute_metrics(folds[it].eval.labels, predicted, classes)
                           .balanced_accuracy;
        } catch (const std::exception& e) {
            score.failed = true;
            score.ba = 0.0;
            score.error = e.what();
        }
    });

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        auto& p = result.points[gi];
        double sum = 0.0;
        for (const auto& f : p.folds) sum += f.ba;
        p.mean_ba = sum / static_cast<double>(config.iterations);
        double ss = 0.0;
        for (const auto& f : p.folds) ss += (f.ba - p.mean_ba) * (f.ba - p.mean_ba);
        p.std_ba = config.iterations > 1
                       ? std::sqrt(ss / static_cast<double>(config.iterations - 1))
                       : 0.0;
        if (p.mean_ba > result.points[result.best_index].mean_ba) result.best_index = gi;
    }
    return result;
}

}  // namespace collarml
