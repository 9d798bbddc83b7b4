// collarml: end-to-end accelerometer-to-behaviour pipeline driver.
//
// Subcommands cover every stage: synth, derive, segment, extract, split,
// tune, train, evaluate, experiment, report. Exit codes: 0 success,
// 1 usage error, 2 data/validation error, 3 internal invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "collarml/channels.hpp"
#include "collarml/config.hpp"
#include "collarml/errors.hpp"
#include "collarml/experiment.hpp"
#include "collarml/feature_io.hpp"
#include "collarml/ingest.hpp"
#include "collarml/model.hpp"
#include "collarml/synthgen.hpp"
#include "collarml/windowing.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace collarml;

namespace {

constexpr const char* kVersion = "1.0.0";

void log_line(const std::string& msg) { std::cerr << "[collarml] " << msg << "\n"; }

FeatureSet parse_feature_set(const std::string& name) {
    const auto fset = feature_set_from_name(name);
    if (!fset) throw ContractError("unknown feature set: " + name + " (hc|catch24|rocket)");
    return *fset;
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "ridge") return ModelKind::ridge_cv;
    if (name == "forest") return ModelKind::random_forest;
    throw ContractError("unknown model: " + name + " (ridge|forest)");
}

ClassWeight parse_class_weight(const std::string& name) {
    if (name == "none") return ClassWeight::none;
    if (name == "balanced") return ClassWeight::balanced;
    throw DataError("unknown class weight: " + name + " (none|balanced)");
}

// Grid construction shared by `tune`, `train`, and `experiment`. The
// ridge grid has one point per class-weight mode (alphas are selected
// internally by leave-one-out CV); the forest grid is the cross product
// of the configured lists.
std::vector<GridPoint> build_ridge_grid(const Config& c) {
    const double lo = c.get_double("ridge.alpha_lo_exp", -3.0);
    const double hi = c.get_double("ridge.alpha_hi_exp", 3.0);
    const auto count = static_cast<std::size_t>(c.get_u64("ridge.alpha_count", 10));
    auto weights = c.get_list("ridge.class_weights");
    if (weights.empty()) weights = {"balanced"};
    std::vector<GridPoint> grid;
    for (const auto& w : weights) {
        GridPoint p;
        p.kind = ModelKind::ridge_cv;
        p.name = "ridge_cw-" + w;
        p.ridge.alphas = logspace_alphas(lo, hi, count);
        p.ridge.class_weight = parse_class_weight(w);
        grid.push_back(std::move(p));
    }
    return grid;
}

std::vector<GridPoint> build_forest_grid(const Config& c, std::uint64_t seed) {
    auto trees = c.get_list("forest.n_estimators");
    if (trees.empty()) trees = {"100"};
    auto max_features = c.get_list("forest.max_features");
    if (max_features.empty()) max_features = {"sqrt"};
    auto criteria = c.get_list("forest.criteria");
    if (criteria.empty()) criteria = {"gini"};
    auto weights = c.get_list("forest.class_weights");
    if (weights.empty()) weights = {"balanced"};

    std::vector<GridPoint> grid;
    for (const auto& t : trees) {
        for (const auto& mf : max_features) {
            for (const auto& crit : criteria) {
                for (const auto& w : weights) {
                    GridPoint p;
                    p.kind = ModelKind::random_forest;
                    p.name = "forest_n-" + t + "_mf-" + mf + "_crit-" + crit + "_cw-" + w;
                    p.forest.n_estimators = static_cast<std::size_t>(std::stoull(t));
                    if (mf == "all") p.forest.max_features = MaxFeatures::all;
                    else if (mf == "sqrt") p.forest.max_features = MaxFeatures::sqrt_;
                    else if (mf == "log2") p.forest.max_features = MaxFeatures::log2_;
                    else throw DataError("unknown max_features: " + mf + " (all|sqrt|log2)");
                    if (crit == "gini") p.forest.criterion = SplitCriterion::gini;
                    else if (crit == "entropy") p.forest.criterion = SplitCriterion::entropy;
                    else throw DataError("unknown criterion: " + crit + " (gini|entropy)");
                    p.forest.class_weight = parse_class_weight(w);
                    p.forest.seed = seed;
                    if (c.has("forest.max_depth"))
                        p.forest.max_depth = static_cast<std::size_t>(c.get_u64("forest.max_depth"));
                    grid.push_back(std::move(p));
                }
            }
        }
    }
    return grid;
}

ExperimentConfig build_experiment_config(const Config& c, std::optional<std::uint64_t> seed,
                                         std::optional<std::size_t> threads) {
    ExperimentConfig ec;
    ec.seed = seed.value_or(c.get_u64("experiment.seed", 0));
    ec.threads = threads.value_or(static_cast<std::size_t>(c.get_u64("experiment.threads", 1)));
    ec.split_ratio = c.get_double("split.ratio", 0.7);
    ec.split_candidates = static_cast<std::size_t>(c.get_u64("split.candidates", 10000));
    ec.tune_iterations = static_cast<std::size_t>(c.get_u64("tune.iterations", 10));
    ec.inner_ratio = c.get_double("tune.inner_ratio", 2.0 / 3.0);
    ec.rocket.target_features =
        static_cast<std::size_t>(c.get_u64("rocket.target_features", 10000));
    ec.rocket.per_channel = c.get_bool("rocket.per_channel", false);

    auto fsets = c.get_list("experiment.feature_sets");
    if (fsets.empty()) fsets = {"hc", "catch24", "rocket"};
    for (const auto& name : fsets) ec.feature_sets.push_back(parse_feature_set(name));
    auto models = c.get_list("experiment.models");
    if (models.empty()) models = {"ridge", "forest"};
    for (const auto& name : models) ec.models.push_back(parse_model_kind(name));

    ec.ridge_grid = build_ridge_grid(c);
    ec.forest_grid = build_forest_grid(c, ec.seed);
    return ec;
}

json metrics_json(const MetricsReport& m, const std::vector<Behaviour>& classes) {
    json per_class = json::array();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        per_class.push_back({{"behaviour", to_string(classes[c])},
                             {"sensitivity", m.per_class[c].sensitivity},
                             {"specificity", m.per_class[c].specificity},
                             {"precision", m.per_class[c].precision},
                             {"precision_defined", m.per_class[c].precision_defined}});
    }
    return {{"balanced_accuracy", m.balanced_accuracy},
            {"n_test_windows", m.n_test_windows},
            {"per_class", per_class},
            {"confusion", m.confusion}};
}

// Discovers <id>_accel.csv / <id>_labels.csv pairs in a directory.
std::vector<std::pair<std::string, std::string>> dataset_pairs(const std::string& dir) {
    if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir);
    std::vector<std::pair<std::string, std::string>> pairs;
    const std::string suffix = "_accel.csv";
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
            names.push_back(name.substr(0, name.size() - suffix.size()));
        }
    }
    std::sort(names.begin(), names.end());
    for (const auto& stem : names) {
        const std::string labels = dir + "/" + stem + "_labels.csv";
        if (!fs::exists(labels)) throw DataError("missing labels file: " + labels);
        pairs.emplace_back(stem, dir + "/" + stem);
    }
    if (pairs.empty()) throw DataError("no *_accel.csv files in " + dir);
    return pairs;
}

int run(int argc, char** argv) {
    CLI::App app{"accelerometer-to-behaviour classification pipeline"};
    app.require_subcommand(0, 1);
    bool show_version = false;
    app.add_flag("--version", show_version, "print version as JSON and exit");

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "generate a synthetic labeled dataset");
    std::string synth_out;
    std::size_t synth_animals = 12;
    std::uint64_t synth_seed = 0;
    double synth_bout_s = 60.0;
    std::size_t synth_repeats = 1;
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--animals", synth_animals, "number of animals (default 12)");
    synth->add_option("--seed", synth_seed, "random seed (default 0)");
    synth->add_option("--bout-s", synth_bout_s, "seconds per behaviour bout (default 60)");
    synth->add_option("--repeats", synth_repeats, "bout cycles per animal (default 1)");

    // ---- derive ----
    auto* derive = app.add_subcommand("derive", "derive the 8 signal channels from raw CSV");
    std::string derive_accel, derive_labels, derive_out, derive_animal;
    double derive_rate = 25.0, derive_offset = 0.0;
    derive->add_option("--accel", derive_accel, "raw accelerometer CSV")->required();
    derive->add_option("--labels", derive_labels, "annotation CSV (optional)");
    derive->add_option("--out", derive_out, "output channel CSV")->required();
    derive->add_option("--sample-rate", derive_rate, "sample rate in Hz (default 25)");
    derive->add_option("--offset", derive_offset, "annotation clock offset in seconds");
    derive->add_option("--animal", derive_animal, "animal id to stamp on the output");

    // ---- segment ----
    auto* segment_cmd = app.add_subcommand("segment", "window a dataset into labeled segments");
    std::string seg_data, seg_out;
    double seg_window_s = 3.0, seg_overlap = 0.5, seg_purity = 1.0, seg_rate = 25.0;
    segment_cmd->add_option("--data", seg_data, "directory of *_accel.csv / *_labels.csv pairs")
        ->required();
    segment_cmd->add_option("--out", seg_out, "output windows file (binary)")->required();
    segment_cmd->add_option("--window-s", seg_window_s, "window duration (default 3)");
    segment_cmd->add_option("--overlap", seg_overlap, "overlap fraction (default 0.5)");
    segment_cmd->add_option("--purity", seg_purity, "label purity threshold (default 1.0)");
    segment_cmd->add_option("--sample-rate", seg_rate, "sample rate in Hz (default 25)");

    // ---- extract ----
    auto* extract = app.add_subcommand("extract", "compute a feature matrix from windows");
    std::string ext_windows, ext_set = "hc", ext_out;
    bool ext_bin = false;
    std::uint64_t ext_seed = 0;
    std::size_t ext_threads = 1, ext_rocket_features = 10000;
    bool ext_per_channel = false;
    extract->add_option("--windows", ext_windows, "windows file from `segment`")->required();
    extract->add_option("--set", ext_set, "feature set: hc|catch24|rocket (default hc)");
    extract->add_option("--out", ext_out, "output matrix (CSV, or binary with --bin)")
        ->required();
    extract->add_flag("--bin", ext_bin, "write the compact binary format");
    extract->add_option("--seed", ext_seed, "rocket fitting seed (default 0)");
    extract->add_option("--threads", ext_threads, "worker threads (default 1)");
    extract->add_option("--rocket-features", ext_rocket_features,
                        "rocket target feature count (default 10000)");
    extract->add_flag("--per-channel", ext_per_channel, "rocket per-channel mode");

    // ---- split ----
    auto* split_cmd = app.add_subcommand("split", "animal-grouped stratified train/test split");
    std::string spl_windows, spl_out;
    double spl_ratio = 0.7;
    std::size_t spl_candidates = 10000;
    std::uint64_t spl_seed = 0;
    split_cmd->add_option("--windows", spl_windows, "windows file")->required();
    split_cmd->add_option("--out", spl_out, "output split JSON")->required();
    split_cmd->add_option("--ratio", spl_ratio, "train fraction (default 0.7)");
    split_cmd->add_option("--candidates", spl_candidates, "partitions to evaluate (default 10000)");
    split_cmd->add_option("--seed", spl_seed, "random seed (default 0)");

    // ---- tune ----
    auto* tune_cmd = app.add_subcommand("tune", "grid search with repeated inner splits");
    std::string tun_windows, tun_set = "hc", tun_model = "forest", tun_config, tun_out;
    std::uint64_t tun_seed = 0;
    std::size_t tun_iterations = 10, tun_threads = 1;
    tune_cmd->add_option("--windows", tun_windows, "training windows file")->required();
    tune_cmd->add_option("--set", tun_set, "feature set: hc|catch24|rocket");
    tune_cmd->add_option("--model", tun_model, "grid family: ridge|forest (default forest)");
    tune_cmd->add_option("--config", tun_config, "grid config file");
    tune_cmd->add_option("--out", tun_out, "output tuning JSON")->required();
    tune_cmd->add_option("--seed", tun_seed, "random seed (default 0)");
    tune_cmd->add_option("--iterations", tun_iterations, "inner split count (default 10)");
    tune_cmd->add_option("--threads", tun_threads, "worker threads (default 1)");

    // ---- train ----
    auto* train_cmd = app.add_subcommand("train", "fit one model on a feature matrix");
    std::string trn_features, trn_model = "forest", trn_config, trn_out;
    std::uint64_t trn_seed = 0;
    train_cmd->add_option("--features", trn_features, "feature matrix (csv or binary)")
        ->required();
    train_cmd->add_option("--model", trn_model, "ridge|forest (default forest)");
    train_cmd->add_option("--config", trn_config, "model config file (first grid point is used)");
    train_cmd->add_option("--out", trn_out, "output model file")->required();
    train_cmd->add_option("--seed", trn_seed, "random seed (default 0)");

    // ---- evaluate ----
    auto* eval_cmd = app.add_subcommand("evaluate", "score a trained model on a feature matrix");
    std::string evl_features, evl_model, evl_out;
    eval_cmd->add_option("--features", evl_features, "feature matrix (csv or binary)")
        ->required();
    eval_cmd->add_option("--model-file", evl_model, "trained model file")->required();
    eval_cmd->add_option("--out", evl_out, "output metrics JSON")->required();

    // ---- experiment ----
    auto* exp_cmd = app.add_subcommand("experiment", "full split/tune/train/test experiment");
    std::string exp_windows, exp_config, exp_out;
    std::optional<std::uint64_t> exp_seed;
    std::optional<std::size_t> exp_threads;
    bool exp_print_config = false;
    exp_cmd->add_option("--windows", exp_windows, "windows file from `segment`")->required();
    exp_cmd->add_option("--config", exp_config, "experiment config file");
    exp_cmd->add_option("--out", exp_out, "output report directory")->required();
    exp_cmd->add_option("--seed", exp_seed, "seed override");
    exp_cmd->add_option("--threads", exp_threads, "thread override");
    exp_cmd->add_flag("--print-config", exp_print_config,
                      "print the resolved configuration as JSON and exit");

    // ---- report ----
    auto* report_cmd = app.add_subcommand("report", "render an experiment report to stdout");
    std::string rep_dir;
    report_cmd->add_option("--dir", rep_dir, "report directory from `experiment`")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (show_version) {
        std::cout << json{{"name", "collarml"}, {"version", kVersion}}.dump() << "\n";
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 1;
    }

    if (synth->parsed()) {
        log_line("seed=" + std::to_string(synth_seed));
        std::vector<ArchetypeSpec> specs;
        const auto base = default_archetypes(synth_bout_s);
        if (synth_repeats == 0) throw ContractError("--repeats must be >= 1");
        for (std::size_t r = 0; r < synth_repeats; ++r)
            specs.insert(specs.end(), base.begin(), base.end());
        const auto animals = generate(specs, synth_animals, synth_seed);
        write_synth_dataset(synth_out, animals);
        log_line("wrote " + std::to_string(animals.size()) + " animals to " + synth_out);
        return 0;
    }

    if (derive->parsed()) {
        auto series = parse_accel_csv(derive_accel, derive_rate, derive_animal);
        if (!derive_labels.empty()) {
            const auto track = parse_annotations(derive_labels, derive_animal);
            series = align(series, track, derive_offset);
        }
        write_channel_csv(derive_out, derive_channels(series));
        log_line("wrote " + std::to_string(series.size()) + " samples x 8 channels to " +
                 derive_out);
        return 0;
    }

    if (segment_cmd->parsed()) {
        WindowingSpec spec;
        spec.duration_s = seg_window_s;
        spec.overlap_fraction = seg_overlap;
        spec.purity_threshold = seg_purity;
        std::vector<LabeledWindow> windows;
        for (const auto& [stem, prefix] : dataset_pairs(seg_data)) {
            auto series = parse_accel_csv(prefix + "_accel.csv", seg_rate, stem);
            const auto track = parse_annotations(prefix + "_labels.csv", stem);
            series = align(series, track);
            const auto ws = segment(derive_channels(series), spec);
            windows.insert(windows.end(), ws.begin(), ws.end());
            log_line(stem + ": " + std::to_string(ws.size()) + " windows");
        }
        save_windows(seg_out, windows);
        log_line("wrote " + std::to_string(windows.size()) + " windows to " + seg_out);
        return 0;
    }

    if (extract->parsed()) {
        const auto windows = load_windows(ext_windows);
        const FeatureSet fset = parse_feature_set(ext_set);
        FeatureMatrix m;
        if (fset == FeatureSet::hc) {
            m = hc_matrix(windows, ext_threads);
        } else if (fset == FeatureSet::catch24) {
            m = catch24_matrix(windows, ext_threads);
        } else {
            log_line("rocket seed=" + std::to_string(ext_seed));
            RocketSpec spec;
            spec.target_features = ext_rocket_features;
            spec.per_channel = ext_per_channel;
            const auto model = rocket_fit(windows, spec, ext_seed);
            m = rocket_matrix(model, windows, ext_threads);
        }
        if (ext_bin) write_feature_bin(ext_out, m);
        else write_feature_csv(ext_out, m);
        log_line("wrote " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                 " matrix to " + ext_out);
        return 0;
    }

    if (split_cmd->parsed()) {
        log_line("seed=" + std::to_string(spl_seed));
        const auto windows = load_windows(spl_windows);
        const auto split = grouped_stratified_split(windows, spl_ratio, spl_candidates, spl_seed);
        const json j{{"train_animals", split.train_animals},
                     {"test_animals", split.test_animals},
                     {"objective", split.objective},
                     {"exhaustive", split.exhaustive},
                     {"class_missing_from_test", split.class_missing_from_test}};
        std::ofstream f(spl_out);
        if (!f) throw DataError("cannot write " + spl_out);
        f << j.dump(2) << "\n";
        log_line("train=" + std::to_string(split.train_animals.size()) +
                 " test=" + std::to_string(split.test_animals.size()) +
                 " objective=" + std::to_string(split.objective));
        return 0;
    }

    if (tune_cmd->parsed()) {
        log_line("seed=" + std::to_string(tun_seed));
        const auto windows = load_windows(tun_windows);
        const Config c = tun_config.empty() ? Config{} : Config::parse_file(tun_config);
        const auto grid = parse_model_kind(tun_model) == ModelKind::ridge_cv
                              ? build_ridge_grid(c)
                              : build_forest_grid(c, tun_seed);
        TuneConfig tc;
        tc.iterations = tun_iterations;
        tc.seed = tun_seed;
        tc.threads = tun_threads;
        tc.rocket.target_features =
            static_cast<std::size_t>(c.get_u64("rocket.target_features", 10000));
        tc.rocket.per_channel = c.get_bool("rocket.per_channel", false);
        const auto result = tune(windows, parse_feature_set(tun_set), grid, tc);
        json points = json::array();
        for (std::size_t i = 0; i < result.points.size(); ++i) {
            json folds = json::array();
            for (const auto& fold : result.points[i].folds)
                folds.push_back({{"ba", fold.ba}, {"failed", fold.failed}, {"error", fold.error}});
            points.push_back({{"name", grid[i].name},
                              {"mean_ba", result.points[i].mean_ba},
                              {"std_ba", result.points[i].std_ba},
                              {"folds", folds}});
        }
        const json j{{"best_index", result.best_index},
                     {"best_name", grid[result.best_index].name},
                     {"points", points}};
        std::ofstream f(tun_out);
        if (!f) throw DataError("cannot write " + tun_out);
        f << j.dump(2) << "\n";
        log_line("best=" + grid[result.best_index].name);
        return 0;
    }

    if (train_cmd->parsed()) {
        log_line("seed=" + std::to_string(trn_seed));
        const auto m = read_feature_matrix(trn_features);
        const Config c = trn_config.empty() ? Config{} : Config::parse_file(trn_config);
        const auto kind = parse_model_kind(trn_model);
        const auto grid =
            kind == ModelKind::ridge_cv ? build_ridge_grid(c) : build_forest_grid(c, trn_seed);
        const auto model = fit_grid_point(m, grid.front());
        save_model(trn_out, model);
        log_line("trained " + grid.front().name + " on " + std::to_string(m.rows()) +
                 " windows, wrote " + trn_out);
        return 0;
    }

    if (eval_cmd->parsed()) {
        const auto m = read_feature_matrix(evl_features);
        const auto model = load_model(evl_model);
        const auto predicted = predict(model, m);
        const auto metrics = compute_metrics(m.labels, predicted, model.classes());
        std::vector<LabelCode> a, b;
        for (std::size_t i = 0; i < m.labels.size(); ++i) {
            a.push_back(to_code(m.labels[i]));
            b.push_back(to_code(predicted[i]));
        }
        json j = metrics_json(metrics, model.classes());
        j["cohens_kappa"] = cohens_kappa(a, b);
        std::ofstream f(evl_out);
        if (!f) throw DataError("cannot write " + evl_out);
        f << j.dump(2) << "\n";
        log_line("balanced_accuracy=" + std::to_string(metrics.balanced_accuracy));
        return 0;
    }

    if (exp_cmd->parsed()) {
        const Config c = exp_config.empty() ? Config{} : Config::parse_file(exp_config);
        const auto ec = build_experiment_config(c, exp_seed, exp_threads);
        if (exp_print_config) {
            json grid_names = json::array();
            for (const auto& p : ec.ridge_grid) grid_names.push_back(p.name);
            for (const auto& p : ec.forest_grid) grid_names.push_back(p.name);
            json fsets = json::array();
            for (const auto s : ec.feature_sets) fsets.push_back(feature_set_name(s));
            json models = json::array();
            for (const auto k : ec.models) models.push_back(model_kind_name(k));
            std::cout << json{{"seed", ec.seed},
                              {"threads", ec.threads},
                              {"split_ratio", ec.split_ratio},
                              {"split_candidates", ec.split_candidates},
                              {"tune_iterations", ec.tune_iterations},
                              {"inner_ratio", ec.inner_ratio},
                              {"rocket_target_features", ec.rocket.target_features},
                              {"rocket_per_channel", ec.rocket.per_channel},
                              {"feature_sets", fsets},
                              {"models", models},
                              {"grid", grid_names}}
                             .dump(2)
                      << "\n";
            return 0;
        }
        log_line("seed=" + std::to_string(ec.seed) +
                 " threads=" + std::to_string(ec.threads));
        const auto windows = load_windows(exp_windows);
        log_line("loaded " + std::to_string(windows.size()) + " windows");
        const auto report = run_experiment(windows, ec);
        write_experiment_report(exp_out, report);
        for (const auto& combo : report.combos) {
            log_line(feature_set_name(combo.fset) + "+" + model_kind_name(combo.model) +
                     ": BA=" + std::to_string(combo.test_metrics.balanced_accuracy));
        }
        log_line("report written to " + exp_out);
        return 0;
    }

    if (report_cmd->parsed()) {
        const std::string txt = rep_dir + "/report.txt";
        std::ifstream f(txt);
        if (!f) throw DataError("cannot open " + txt);
        std::cout << f.rdbuf();
        return 0;
    }

    std::cerr << app.help();
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
