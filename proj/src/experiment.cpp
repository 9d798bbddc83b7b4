#include "collarml/experiment.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>

#include "json.hpp"

#include "collarml/errors.hpp"

namespace collarml {

namespace {

using nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string combo_slug(const ComboReport& combo) {
    return feature_set_name(combo.fset) + "_" + model_kind_name(combo.model);
}

json metrics_to_json(const MetricsReport& m, const std::vector<Behaviour>& classes) {
    json per_class = json::object();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        per_class[to_string(classes[c])] = {
            {"sensitivity", m.per_class[c].sensitivity},
            {"specificity", m.per_class[c].specificity},
            {"precision", m.per_class[c].precision},
            {"precision_defined", m.per_class[c].precision_defined},
        };
    }
    return {
        {"balanced_accuracy", m.balanced_accuracy},
        {"per_class", per_class},
        {"confusion", m.confusion},
        {"n_test_windows", m.n_test_windows},
    };
}

}  // namespace

std::string model_kind_name(ModelKind kind) {
    return kind == ModelKind::ridge_cv ? "ridge" : "forest";
}

ExperimentReport run_experiment(const std::vector<LabeledWindow>& windows,
                                const ExperimentConfig& config) {
    if (config.feature_sets.empty()) throw ContractError("experiment: no feature sets configured");
    if (config.models.empty()) throw ContractError("experiment: no models configured");

    ExperimentReport report;
    report.seed = config.seed;
    report.split = grouped_stratified_split(windows, config.split_ratio,
                                            config.split_candidates, config.seed);
    const auto train = filter_windows(windows, report.split.train_animals);
    const auto test = filter_windows(windows, report.split.test_animals);
    {
        std::set<std::string> test_set(report.split.test_animals.begin(),
                                       report.split.test_animals.end());
        for (const auto& w : test) {
            if (!test_set.count(w.animal_id)) {
                throw InternalError("experiment: test window from a training animal");
            }
        }
        std::set<Behaviour> seen;
        for (const auto& w : windows) seen.insert(w.label);
        report.classes.assign(seen.begin(), seen.end());
    }

    std::size_t combo_index = 0;
    for (FeatureSet fset : config.feature_sets) {
        for (ModelKind model : config.models) {
            ComboReport combo;
            combo.fset = fset;
            combo.model = model;
            const auto& grid = model == ModelKind::ridge_cv ? config.ridge_grid
                                                            : config.forest_grid;
            if (grid.empty()) throw ContractError("experiment: empty grid for a configured model");

            TuneConfig tc;
            tc.iterations = config.tune_iterations;
            tc.inner_ratio = config.inner_ratio;
            tc.split_candidates = config.split_candidates;
            tc.seed = derive_seed(config.seed, 17 + combo_index);
            tc.threads = config.threads;
            tc.rocket = config.rocket;

            auto t0 = std::chrono::steady_clock::now();
            combo.tuning = tune(train, fset, grid, tc);
            combo.chosen = grid[combo.tuning.best_index];
            combo.timings.tune_s = seconds_since(t0);

            t0 = std::chrono::steady_clock::now();
            const FeaturePair features =
                extract_train_eval(fset, train, test, config.rocket,
                                   derive_seed(config.seed, 90 + combo_index), config.threads);
            combo.timings.extract_s = seconds_since(t0);

            t0 = std::chrono::steady_clock::now();
            const TrainedModel fitted = fit_grid_point(features.train, combo.chosen);
            combo.timings.train_s = seconds_since(t0);

            t0 = std::chrono::steady_clock::now();
            const auto predicted = predict(fitted, features.eval);
            combo.test_metrics = compute_metrics(features.eval.labels, predicted, report.classes);
            combo.timings.test_s = seconds_since(t0);

            report.combos.push_back(std::move(combo));
            ++combo_index;
        }
    }
    return report;
}

void write_experiment_report(const std::string& dir, const ExperimentReport& report) {
    std::filesystem::create_directories(dir);
    const std::size_t K = report.classes.size();

    json j;
    j["seed"] = report.seed;
    j["split"] = {
        {"train_animals", report.split.train_animals},
        {"test_animals", report.split.test_animals},
        {"objective", report.split.objective},
        {"exhaustive", report.split.exhaustive},
    };
    json class_names = json::array();
    for (Behaviour b : report.classes) class_names.push_back(to_string(b));
    j["classes"] = class_names;
    json combos = json::array();
    for (const auto& combo : report.combos) {
        json tuning = json::array();
        for (const auto& p : combo.tuning.points) {
            json folds = json::array();
            for (const auto& f : p.folds) {
                folds.push_back({{"ba", f.ba}, {"failed", f.failed}, {"error", f.error}});
            }
            tuning.push_back({{"mean_ba", p.mean_ba}, {"std_ba", p.std_ba}, {"folds", folds}});
        }
        combos.push_back({
            {"feature_set", feature_set_name(combo.fset)},
            {"model", model_kind_name(combo.model)},
            {"chosen_grid_point", combo.chosen.name},
            {"best_index", combo.tuning.best_index},
            {"tuning", tuning},
            {"test", metrics_to_json(combo.test_metrics, report.classes)},
        });
    }
    j["combinations"] = combos;
    {
        std::ofstream f(dir + "/report.json");
        if (!f) throw DataError("cannot write " + dir + "/report.json");
        f << j.dump(2) << "\n";
    }

    // timings live in their own file so report.json is reproducible
    {
        json t = json::array();
        for (const auto& combo : report.combos) {
            t.push_back({
                {"combination", combo_slug(combo)},
                {"feature_extraction_s", combo.timings.extract_s},
                {"tuning_s", combo.timings.tune_s},
                {"training_s", combo.timings.train_s},
                {"testing_s", combo.timings.test_s},
            });
        }
        std::ofstream f(dir + "/timings.json");
        if (!f) throw DataError("cannot write " + dir + "/timings.json");
        f << t.dump(2) << "\n";
    }

    // row-percentage confusion matrices
    for (const auto& combo : report.combos) {
        std::ofstream f(dir + "/confusion_" + combo_slug(combo) + ".csv");
        if (!f) throw DataError("cannot write confusion csv");
        f << "actual";
        for (Behaviour b : report.classes) f << "," << to_string(b);
        f << "\n";
        for (std::size_t a = 0; a < K; ++a) {
            double row_total = 0.0;
            for (std::size_t p = 0; p < K; ++p) {
                row_total += static_cast<double>(combo.test_metrics.confusion[a * K + p]);
            }
            f << to_string(report.classes[a]);
            for (std::size_t p = 0; p < K; ++p) {
                const double pct =
                    row_total > 0.0
                        ? 100.0 * static_cast<double>(combo.test_metrics.confusion[a * K + p]) /
                              row_total
                        : 0.0;
                f << "," << std::to_string(pct);
            }
            f << "\n";
        }
    }

    // human-readable summary
    std::ofstream f(dir + "/report.txt");
    if (!f) throw DataError("cannot write " + dir + "/report.txt");
    f << "experiment seed " << report.seed << "\n";
    f << "train animals (" << report.split.train_animals.size() << "):";
    for (const auto& a : report.split.train_animals) f << " " << a;
    f << "\ntest animals (" << report.split.test_animals.size() << "):";
    for (const auto& a : report.split.test_animals) f << " " << a;
    f << "\n\n";
    char buf[256];
    for (const auto& combo : report.combos) {
        std::snprintf(buf, sizeof(buf), "%-16s BA %.4f  (grid point: %s)\n",
                      combo_slug(combo).c_str(), combo.test_metrics.balanced_accuracy,
                      combo.chosen.name.c_str());
        f << buf;
        std::snprintf(buf, sizeof(buf), "  %-14s %11s %11s %9s\n", "class", "sensitivity",
                      "specificity", "precision");
        f << buf;
        for (std::size_t c = 0; c < K; ++c) {
            const auto& m = combo.test_metrics.per_class[c];
            std::snprintf(buf, sizeof(buf), "  %-14s %11.4f %11.4f %9.4f%s\n",
                          std::string(to_string(report.classes[c])).c_str(), m.sensitivity,
                          m.specificity,
                          m.precision, m.precision_defined ? "" : " (no positive predictions)");
            f << buf;
        }
        f << "\n";
    }
}

}  // namespace collarml
