#include "collarml/hc_features.hpp"

#include <algorithm>
#include <cmath>

#include "collarml/dsp.hpp"
#include "collarml/errors.hpp"
#include "collarml/stats.hpp"

namespace collarml {

double spectral_entropy(const std::vector<double>& channel, double sample_rate_hz,
                        const WelchConfig& cfg) {
    if (channel.size() < 8) throw ContractError("spectral_entropy: need at least 8 samples");
    if (stats::variance_pop(channel) == 0.0) return 0.0;
    // mean-removed so the entropy depends on signal shape, not offset
    std::vector<double> centered = channel;
    const double mu = stats::mean(channel);
    for (double& v : centered) v -= mu;
    const auto psd = dsp::welch_psd(centered, sample_rate_hz, cfg.segment_length);
    double total = 0.0;
    for (double p : psd.power) total += p;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double p : psd.power) {
        const double q = p / total;
        if (q > 0.0) h -= q * std::log2(q);
    }
    return h;
}

const std::vector<std::string>& hc_feature_names() {
    static const std::vector<std::string> names{
        "mean", "median", "min", "max", "std", "q1", "q3", "spectral_entropy",
        "motion_variation", "skewness", "kurtosis"};
    return names;
}

std::vector<double> hc_channel_features(const std::vector<double>& channel,
                                        double sample_rate_hz, const WelchConfig& cfg) {
    if (channel.size() < 4) throw ContractError("hc features: need at least 4 samples");
    std::vector<double> out;
    out.reserve(kNumHcFeatures);
    out.push_back(stats::mean(channel));
    out.push_back(stats::median(channel));
    out.push_back(*std::min_element(channel.begin(), channel.end()));
    out.push_back(*std::max_element(channel.begin(), channel.end()));
    out.push_back(stats::stddev_pop(channel));
    out.push_back(stats::quantile(channel, 0.25));
    out.push_back(stats::quantile(channel, 0.75));
    out.push_back(spectral_entropy(channel, sample_rate_hz, cfg));
    out.push_back(stats::motion_variation(channel));
    out.push_back(stats::skewness(channel));
    out.push_back(stats::kurtosis(channel));
    return out;
}

FeatureVector hc_features(const LabeledWindow& window, const WelchConfig& cfg) {
    FeatureVector fv;
    fv.names.reserve(kNumChannels * kNumHcFeatures);
    fv.values.reserve(kNumChannels * kNumHcFeatures);
    for (Channel c : all_channels) {
        const auto vals = hc_channel_features(window.channel(c), window.sample_rate_hz, cfg);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            fv.names.push_back(std::string(channel_name(c)) + "__" + hc_feature_names()[i]);
            fv.values.push_back(vals[i]);
        }
    }
    return fv;
}

}  // namespace collarml
