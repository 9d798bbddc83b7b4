#include "collarml/features.hpp"

#include "collarml/errors.hpp"
#include "collarml/thread_pool.hpp"

namespace collarml {

namespace {

template <typename PerWindow>
FeatureMatrix assemble(const std::vector<LabeledWindow>& windows, std::size_t threads,
                       PerWindow&& extract) {
    FeatureMatrix X;
    if (windows.empty()) return X;
    X.feature_names = extract(windows[0]).names;
    const std::size_t p = X.feature_names.size();
    X.values.assign(windows.size() * p, 0.0);
    X.labels.resize(windows.size());
    X.animal_ids.resize(windows.size());
    parallel_for(windows.size(), threads, [&](std::size_t i) {
        const FeatureVector fv = extract(windows[i]);
        for (std::size_t c = 0; c < p; ++c) X.values[i * p + c] = fv.values[c];
        X.labels[i] = windows[i].label;
        X.animal_ids[i] = windows[i].animal_id;
    });
    return X;
}

}  // namespace

std::string feature_set_name(FeatureSet s) {
    switch (s) {
        case FeatureSet::hc: return "hc";
        case FeatureSet::catch24: return "catch24";
        case FeatureSet::rocket: return "rocket";
    }
    throw InternalError("feature_set_name: bad enum");
}

std::optional<FeatureSet> feature_set_from_name(const std::string& name) {
    if (name == "hc") return FeatureSet::hc;
    if (name == "catch24") return FeatureSet::catch24;
    if (name == "rocket") return FeatureSet::rocket;
    return std::nullopt;
}

FeatureMatrix hc_matrix(const std::vector<LabeledWindow>& windows, std::size_t threads) {
    return assemble(windows, threads, [](const LabeledWindow& w) { return hc_features(w); });
}

FeatureMatrix catch24_matrix(const std::vector<LabeledWindow>& windows, std::size_t threads) {
    return assemble(windows, threads, [](const LabeledWindow& w) { return catch24_features(w); });
}

FeatureMatrix rocket_matrix(const RocketModel& model, const std::vector<LabeledWindow>& windows,
                            std::size_t threads) {
    return assemble(windows, threads,
                    [&model](const LabeledWindow& w) { return rocket_features(model, w); });
}

FeaturePair extract_train_eval(FeatureSet set, const std::vector<LabeledWindow>& train,
                               const std::vector<LabeledWindow>& eval,
                               const RocketSpec& rocket_spec, std::uint64_t rocket_seed,
                               std::size_t threads) {
    FeaturePair out;
    switch (set) {
        case FeatureSet::hc:
            out.train = hc_matrix(train, threads);
            out.eval = hc_matrix(eval, threads);
            break;
        case FeatureSet::catch24:
            out.train = catch24_matrix(train, threads);
            out.eval = catch24_matrix(eval, threads);
            break;
        case FeatureSet::rocket: {
            const RocketModel model = rocket_fit(train, rocket_spec, rocket_seed);
            out.train = rocket_matrix(model, train, threads);
            out.eval = rocket_matrix(model, eval, threads);
            break;
        }
    }
    return out;
}

}  // namespace collarml
