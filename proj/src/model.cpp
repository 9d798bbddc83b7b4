#include "collarml/model.hpp"

#include <cstring>
#include <fstream>

#include "json.hpp"

#include "collarml/errors.hpp"

namespace collarml {

namespace {

using nlohmann::json;

json behaviours_to_json(const std::vector<Behaviour>& classes) {
    json out = json::array();
    for (Behaviour b : classes) out.push_back(to_string(b));
    return out;
}

std::vector<Behaviour> behaviours_from_json(const json& j) {
    std::vector<Behaviour> out;
    for (const auto& v : j) {
        const auto b = behaviour_from_canonical(v.get<std::string>());
        if (!b) throw DataError("unknown behaviour name in model file: " + v.get<std::string>());
        out.push_back(*b);
    }
    return out;
}

template <typename T>
void write_pod(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw DataError("model file truncated");
    return v;
}

constexpr std::uint32_t kForestMagic = 0x464F5231;  // "FOR1"

void write_forest_block(std::ostream& os, const ForestModel& m) {
    write_pod(os, kForestMagic);
    write_pod(os, static_cast<std::uint64_t>(m.trees.size()));
    write_pod(os, static_cast<std::uint64_t>(m.classes.size()));
    for (const auto& tree : m.trees) {
        write_pod(os, static_cast<std::uint64_t>(tree.size()));
        for (const auto& node : tree) {
            write_pod(os, node.feature);
            write_pod(os, node.threshold);
            write_pod(os, node.left);
            write_pod(os, node.right);
            write_pod(os, static_cast<std::uint32_t>(node.distribution.size()));
            for (double d : node.distribution) write_pod(os, d);
        }
    }
}

void read_forest_block(std::istream& is, ForestModel& m) {
    if (read_pod<std::uint32_t>(is) != kForestMagic) throw DataError("bad forest block magic");
    const auto ntrees = read_pod<std::uint64_t>(is);
    const auto nclasses = read_pod<std::uint64_t>(is);
    if (nclasses != m.classes.size()) throw DataError("forest block class count mismatch");
    m.trees.resize(ntrees);
    for (auto& tree : m.trees) {
        tree.resize(read_pod<std::uint64_t>(is));
        for (auto& node : tree) {
            node.feature = read_pod<std::uint32_t>(is);
            node.threshold = read_pod<double>(is);
            node.left = read_pod<std::uint32_t>(is);
            node.right = read_pod<std::uint32_t>(is);
            node.distribution.resize(read_pod<std::uint32_t>(is));
            for (double& d : node.distribution) d = read_pod<double>(is);
        }
    }
}

}  // namespace

TrainedModel train_ridge(const FeatureMatrix& X, const RidgeCVSpec& spec) {
    TrainedModel m;
    m.kind = ModelKind::ridge_cv;
    m.ridge = ridge_cv_fit(X, spec);
    return m;
}

TrainedModel train_forest(const FeatureMatrix& X, const ForestSpec& spec) {
    TrainedModel m;
    m.kind = ModelKind::random_forest;
    m.forest = forest_fit(X, spec);
    return m;
}

std::vector<Behaviour> predict(const TrainedModel& model, const FeatureMatrix& X) {
    if (X.rows() == 0) return {};
    if (model.kind == ModelKind::ridge_cv) return ridge_predict(model.ridge, X);
    return forest_predict(model.forest, X);
}

void save_model(const std::string& path, const TrainedModel& model) {
    json j;
    j["format_version"] = 1;
    if (model.kind == ModelKind::ridge_cv) {
        const auto& r = model.ridge;
        j["kind"] = "ridge_cv";
        j["classes"] = behaviours_to_json(r.classes);
        j["feature_names"] = r.feature_names;
        j["feature_mean"] = r.feature_mean;
        j["feature_scale"] = r.feature_scale;
        j["weights"] = r.weights;
        j["intercepts"] = r.intercepts;
        j["chosen_alpha"] = r.chosen_alpha;
        j["alphas"] = r.alphas;
        j["loo_errors"] = r.loo_errors;
        std::ofstream f(path);
        if (!f) throw DataError("cannot write " + path);
        f << j.dump();
        return;
    }
    const auto& fo = model.forest;
    j["kind"] = "random_forest";
    j["classes"] = behaviours_to_json(fo.classes);
    j["feature_names"] = fo.feature_names;
    j["n_estimators"] = fo.spec.n_estimators;
    j["seed"] = fo.spec.seed;
    const std::string header = j.dump();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path);
    const auto hlen = static_cast<std::uint64_t>(header.size());
    write_pod(f, hlen);
    f.write(header.data(), static_cast<std::streamsize>(header.size()));
    write_forest_block(f, fo);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw DataError("cannot open " + path);
    char first = 0;
    probe.get(first);
    probe.seekg(0);

    TrainedModel m;
    if (first == '{') {
        json j;
        try {
            probe >> j;
        } catch (const json::exception& e) {
            throw DataError(path + ": " + e.what());
        }
        if (j.value("kind", "") != "ridge_cv") throw DataError(path + ": unexpected model kind");
        m.kind = ModelKind::ridge_cv;
        auto& r = m.ridge;
        r.classes = behaviours_from_json(j.at("classes"));
        r.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        r.feature_mean = j.at("feature_mean").get<std::vector<double>>();
        r.feature_scale = j.at("feature_scale").get<std::vector<double>>();
        r.weights = j.at("weights").get<std::vector<double>>();
        r.intercepts = j.at("intercepts").get<std::vector<double>>();
        r.chosen_alpha = j.at("chosen_alpha").get<double>();
        r.alphas = j.at("alphas").get<std::vector<double>>();
        r.loo_errors = j.at("loo_errors").get<std::vector<double>>();
        return m;
    }

    const auto hlen = read_pod<std::uint64_t>(probe);
    std::string header(hlen, '\0');
    probe.read(header.data(), static_cast<std::streamsize>(hlen));
    if (!probe) throw DataError(path + ": truncated header");
    json j;
    try {
        j = json::parse(header);
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    if (j.value("kind", "") != "random_forest") throw DataError(path + ": unexpected model kind");
    m.kind = ModelKind::random_forest;
    auto& fo = m.forest;
    fo.classes = behaviours_from_json(j.at("classes"));
    fo.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    fo.spec.n_estimators = j.at("n_estimators").get<std::size_t>();
    fo.spec.seed = j.at("seed").get<std::uint64_t>();
    read_forest_block(probe, fo);
    return m;
}

}  // namespace collarml
