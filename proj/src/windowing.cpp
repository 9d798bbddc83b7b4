#include "collarml/windowing.hpp"

#include <array>
#include <cmath>

#include "collarml/csv.hpp"
#include "collarml/errors.hpp"

namespace collarml {

std::vector<LabeledWindow> segment(const ChannelSet& cs, const WindowingSpec& spec) {
    if (spec.duration_s <= 0.0) throw ContractError("windowing: duration must be positive");
    if (spec.overlap_fraction < 0.0 || spec.overlap_fraction >= 1.0) {
        throw ContractError("windowing: overlap must lie in [0, 1)");
    }
    if (spec.purity_threshold <= 0.5 || spec.purity_threshold > 1.0) {
        throw ContractError("windowing: purity threshold must lie in (0.5, 1]");
    }
    const double samples_f = spec.duration_s * cs.sample_rate_hz;
    if (std::abs(samples_f - std::round(samples_f)) > 1e-9) {
        throw ContractError("windowing: duration x sample rate must be an integer");
    }
    const auto window_len = static_cast<std::size_t>(std::llround(samples_f));
    const auto hop = static_cast<std::size_t>(
        std::floor(static_cast<double>(window_len) * (1.0 - spec.overlap_fraction)));
    if (hop == 0) throw ContractError("windowing: hop rounds to zero");

    std::vector<LabeledWindow> windows;
    if (cs.length() < window_len) return windows;
    if (cs.labels.size() != cs.length()) {
        throw ContractError("windowing: channel set has no per-sample labels");
    }

    std::size_t emitted = 0;
    for (std::size_t start = 0; start + window_len <= cs.length(); start += hop) {
        std::array<std::size_t, kNumBehaviours> counts{};
        bool has_unlabeled = false;
        for (std::size_t i = start; i < start + window_len; ++i) {
            const LabelCode l = cs.labels[i];
            if (l == kUnlabeled) {
                has_unlabeled = true;
                break;
            }
            ++counts[static_cast<std::size_t>(l)];
        }
        if (has_unlabeled) continue;

        std::size_t best = 0;
        for (std::size_t b = 1; b < kNumBehaviours; ++b) {
            if (counts[b] > counts[best]) best = b;
        }
        const double purity =
            static_cast<double>(counts[best]) / static_cast<double>(window_len);
        if (purity + 1e-12 < spec.purity_threshold) continue;

        LabeledWindow w;
        w.animal_id = cs.animal_id;
        w.window_index = emitted++;
        w.start_time_s = cs.start_time_s + static_cast<double>(start) / cs.sample_rate_hz;
        w.sample_rate_hz = cs.sample_rate_hz;
        w.label = static_cast<Behaviour>(best);
        for (Channel c : all_channels) {
            const auto& src = cs[c];
            w.channels[static_cast<std::size_t>(c)].assign(
                src.begin() + static_cast<std::ptrdiff_t>(start),
                src.begin() + static_cast<std::ptrdiff_t>(start + window_len));
        }
        windows.push_back(std::move(w));
    }
    return windows;
}

void write_window_manifest(const std::string& path, const std::vector<LabeledWindow>& windows) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"animal_id", "window_index", "start_time", "label"});
    for (const auto& w : windows) {
        rows.push_back({w.animal_id, std::to_string(w.window_index),
                        csv::format_double(w.start_time_s), std::string(to_string(w.label))});
    }
    csv::write_file(path, rows);
}

}  // namespace collarml
