#include "collarml/rocket.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

#include "collarml/errors.hpp"
#include "collarml/rng.hpp"
#include "collarml/stats.hpp"

namespace collarml {

namespace {

constexpr double kGoldenRatio = 1.618033988749894848204586834365638118;
constexpr std::size_t kNumKernels = 84;
constexpr std::size_t kKernelLength = 9;
constexpr std::size_t kMaxDilationsPerKernel = 32;

double quantile_in_sequence(std::size_t feature_index) {
    const double v = static_cast<double>(feature_index + 1) * kGoldenRatio;
    return v - std::floor(v);
}

// Exponentially spaced distinct dilations covering [1, max_dilation].
std::vector<std::uint32_t> fit_dilations(std::uint32_t max_dilation, std::size_t fpk) {
    const std::size_t num = std::min({fpk, kMaxDilationsPerKernel,
                                      static_cast<std::size_t>(max_dilation)});
    std::vector<std::uint32_t> out;
    if (num <= 1) {
        out.push_back(1);
        return out;
    }
    const double hi = std::log2(static_cast<double>(max_dilation));
    for (std::size_t j = 0; j < num; ++j) {
        const double e = hi * static_cast<double>(j) / static_cast<double>(num - 1);
        const auto d = j + 1 == num ? max_dilation : static_cast<std::uint32_t>(std::pow(2.0, e));
        if (out.empty() || out.back() != d) out.push_back(d);
    }
    return out;
}

// Channel sum, mean-centered: with zero padding the partial kernels at
// the edges do not cancel a constant offset, so centering is what makes
// the transform shift-invariant.
std::vector<double> summed_channels(const LabeledWindow& w,
                                    const std::vector<std::uint8_t>& channels) {
    std::vector<double> x(w.length(), 0.0);
    for (std::uint8_t c : channels) {
        const auto& src = w.channels[c];
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += src[i];
    }
    double mu = 0.0;
    for (double v : x) mu += v;
    mu /= static_cast<double>(x.size());
    for (double& v : x) v -= mu;
    return x;
}

// One block of 84 kernels x dilations; channel picker abstracts the
// multivariate / per-channel difference.
template <typename ChannelPicker>
void append_block(RocketModel& model, const std::vector<LabeledWindow>& windows,
                  std::size_t fpk, Rng& rng, ChannelPicker pick_channels) {
    const std::size_t ndil = model.dilations.size();
    std::vector<std::uint32_t> quotas(ndil, static_cast<std::uint32_t>(fpk / ndil));
    for (std::size_t di = 0; di < fpk % ndil; ++di) ++quotas[di];
    if (model.features_per_dilation.empty()) model.features_per_dilation = quotas;

    for (std::size_t k = 0; k < kNumKernels; ++k) {
        for (std::size_t di = 0; di < ndil; ++di) {
            RocketGroup g;
            g.kernel = static_cast<std::uint32_t>(k);
            g.dilation = model.dilations[di];
            g.padding = model.groups.size() % 2 == 0;
            g.channels = pick_channels(rng);
            g.first_feature = model.biases.size();
            g.count = quotas[di];

            const std::size_t wi = rng.uniform_index(windows.size());
            const auto conv = rocket_convolve(summed_channels(windows[wi], g.channels),
                                              model.kernel_position_sets[k], g.dilation,
                                              g.padding);
            for (std::size_t j = 0; j < g.count; ++j) {
                model.biases.push_back(
                    stats::quantile(conv, quantile_in_sequence(g.first_feature + j)));
            }
            model.groups.push_back(std::move(g));
        }
    }
}

std::vector<std::uint8_t> log_uniform_channel_subset(Rng& rng) {
    const double e = rng.uniform(0.0, std::log2(9.0));
    const auto size = std::min<std::size_t>(
        kNumChannels, static_cast<std::size_t>(std::pow(2.0, e)));
    auto picked = rng.sample_without_replacement(kNumChannels, std::max<std::size_t>(1, size));
    std::vector<std::uint8_t> out;
    for (std::size_t c : picked) out.push_back(static_cast<std::uint8_t>(c));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<std::array<std::uint8_t, 3>> rocket_kernel_position_sets() {
    std::vector<std::array<std::uint8_t, 3>> out;
    for (std::uint8_t a = 0; a < kKernelLength; ++a) {
        for (std::uint8_t b = a + 1; b < kKernelLength; ++b) {
            for (std::uint8_t c = b + 1; c < kKernelLength; ++c) {
                out.push_back({a, b, c});
            }
        }
    }
    return out;
}

std::vector<double> rocket_convolve(const std::vector<double>& x,
                                    const std::array<std::uint8_t, 3>& positions,
                                    std::uint32_t dilation, bool padding) {
    const auto n = static_cast<std::ptrdiff_t>(x.size());
    const auto d = static_cast<std::ptrdiff_t>(dilation);
    std::array<double, kKernelLength> w;
    w.fill(-1.0);
    for (std::uint8_t p : positions) w[p] = 2.0;

    // kernel is centered on position 4
    const std::ptrdiff_t lo = padding ? 0 : 4 * d;
    const std::ptrdiff_t hi = padding ? n : n - 4 * d;
    if (hi <= lo) throw ContractError("rocket_convolve: series shorter than dilated kernel");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(hi - lo));
    for (std::ptrdiff_t t = lo; t < hi; ++t) {
        double s = 0.0;
        for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(kKernelLength); ++j) {
            const std::ptrdiff_t i = t + (j - 4) * d;
            if (i >= 0 && i < n) s += w[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(i)];
        }
        out.push_back(s);
    }
    return out;
}

RocketModel rocket_fit(const std::vector<LabeledWindow>& training_windows,
                       const RocketSpec& spec, std::uint64_t seed) {
    if (training_windows.empty()) throw ContractError("rocket_fit: no training windows");
    const std::size_t L = training_windows[0].length();
    if (L < kKernelLength) throw ContractError("rocket_fit: window length must be >= 9");
    for (const auto& w : training_windows) {
        if (w.length() != L) throw ContractError("rocket_fit: inconsistent window lengths");
    }

    RocketModel model;
    model.window_length = L;
    model.seed = seed;
    model.per_channel = spec.per_channel;
    model.kernel_position_sets = rocket_kernel_position_sets();

    const std::size_t per_transform_target =
        spec.per_channel ? spec.target_features / kNumChannels : spec.target_features;
    const std::size_t realized = (per_transform_target / kNumKernels) * kNumKernels;
    if (realized == 0) throw ContractError("rocket_fit: target_features too small");
    const std::size_t fpk = realized / kNumKernels;

    const auto max_dilation = static_cast<std::uint32_t>((L - 1) / 8);
    model.dilations = fit_dilations(max_dilation, fpk);

    Rng rng(seed);
    if (spec.per_channel) {
        for (std::size_t c = 0; c < kNumChannels; ++c) {
            append_block(model, training_windows, fpk, rng,
                         [c](Rng&) { return std::vector<std::uint8_t>{static_cast<std::uint8_t>(c)}; });
        }
    } else {
        append_block(model, training_windows, fpk, rng,
                     [](Rng& r) { return log_uniform_channel_subset(r); });
    }
    model.num_features = model.biases.size();
    return model;
}

std::vector<double> rocket_transform(const RocketModel& model, const LabeledWindow& window) {
    if (window.length() != model.window_length) {
        throw ContractError("rocket_transform: window length differs from fit");
    }
    std::vector<double> out(model.num_features);
    for (const auto& g : model.groups) {
        const auto conv = rocket_convolve(summed_channels(window, g.channels),
                                          model.kernel_position_sets[g.kernel], g.dilation,
                                          g.padding);
        const double denom = static_cast<double>(conv.size());
        for (std::size_t j = 0; j < g.count; ++j) {
            const double bias = model.biases[g.first_feature + j];
            std::size_t count = 0;
            for (double v : conv) count += v > bias ? 1 : 0;
            out[g.first_feature + j] = static_cast<double>(count) / denom;
        }
    }
    return out;
}

std::vector<std::string> rocket_feature_names(const RocketModel& model) {
    std::vector<std::string> names(model.num_features);
    for (const auto& g : model.groups) {
        std::string base = "rocket_";
        if (model.per_channel) {
            base += std::string(channel_name(static_cast<Channel>(g.channels[0]))) + "_";
        }
        base += "k" + std::to_string(g.kernel) + "_d" + std::to_string(g.dilation) + "_";
        for (std::size_t j = 0; j < g.count; ++j) {
            names[g.first_feature + j] = base + std::to_string(j);
        }
    }
    return names;
}

FeatureVector rocket_features(const RocketModel& model, const LabeledWindow& window) {
    FeatureVector fv;
    fv.names = rocket_feature_names(model);
    fv.values = rocket_transform(model, window);
    return fv;
}

void save_rocket_model(const std::string& path, const RocketModel& model) {
    nlohmann::json j;
    j["kind"] = "rocket";
    j["window_length"] = model.window_length;
    j["num_features"] = model.num_features;
    j["seed"] = model.seed;
    j["per_channel"] = model.per_channel;
    j["dilations"] = model.dilations;
    j["features_per_dilation"] = model.features_per_dilation;
    j["biases"] = model.biases;
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : model.groups) {
        groups.push_back({{"kernel", g.kernel},
                          {"dilation", g.dilation},
                          {"padding", g.padding},
                          {"channels", g.channels},
                          {"first_feature", g.first_feature},
                          {"count", g.count}});
    }
    j["groups"] = std::move(groups);
    std::ofstream f(path);
    if (!f) throw DataError("cannot write " + path);
    f << j.dump();
}

RocketModel load_rocket_model(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DataError("cannot open " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    if (j.value("kind", "") != "rocket") throw DataError(path + ": not a rocket model file");
    RocketModel model;
    model.window_length = j.at("window_length").get<std::size_t>();
    model.num_features = j.at("num_features").get<std::size_t>();
    model.seed = j.at("seed").get<std::uint64_t>();
    model.per_channel = j.at("per_channel").get<bool>();
    model.kernel_position_sets = rocket_kernel_position_sets();
    model.dilations = j.at("dilations").get<std::vector<std::uint32_t>>();
    model.features_per_dilation = j.at("features_per_dilation").get<std::vector<std::uint32_t>>();
    model.biases = j.at("biases").get<std::vector<double>>();
    for (const auto& gj : j.at("groups")) {
        RocketGroup g;
        g.kernel = gj.at("kernel").get<std::uint32_t>();
        g.dilation = gj.at("dilation").get<std::uint32_t>();
        g.padding = gj.at("padding").get<bool>();
        g.channels = gj.at("channels").get<std::vector<std::uint8_t>>();
        g.first_feature = gj.at("first_feature").get<std::size_t>();
        g.count = gj.at("count").get<std::size_t>();
        model.groups.push_back(std::move(g));
    }
    if (model.biases.size() != model.num_features) throw DataError(path + ": bias count mismatch");
    return model;
}

}  // namespace collarml
