#include "collarml/channels.hpp"

#include <cmath>

#include "collarml/csv.hpp"
#include "collarml/errors.hpp"

namespace collarml {

std::vector<double> magnitude(const TriAxialSeries& series) {
    std::vector<double> out;
    out.reserve(series.size());
    for (const auto& s : series.samples) {
        out.push_back(std::sqrt(s.x * s.x + s.y * s.y + s.z * s.z) - 1.0);
    }
    return out;
}

DynamicStaticSplit dynamic_static_split(const TriAxialSeries& series, double cutoff_hz, int order) {
    if (series.samples.empty()) throw ContractError("dynamic_static_split: empty series");
    ButterworthSpec lp{order, cutoff_hz, FilterKind::low_pass, series.sample_rate_hz};
    ButterworthSpec hp{order, cutoff_hz, FilterKind::high_pass, series.sample_rate_hz};
    const SosFilter low = design_butterworth(lp);
    const SosFilter high = design_butterworth(hp);

    std::array<std::vector<double>, 3> axes;
    for (auto& a : axes) a.reserve(series.size());
    for (const auto& s : series.samples) {
        axes[0].push_back(s.x);
        axes[1].push_back(s.y);
        axes[2].push_back(s.z);
    }

    DynamicStaticSplit out;
    out.dynamic.x = high.filtfilt(axes[0]);
    out.dynamic.y = high.filtfilt(axes[1]);
    out.dynamic.z = high.filtfilt(axes[2]);
    out.static_.x = low.filtfilt(axes[0]);
    out.static_.y = low.filtfilt(axes[1]);
    out.static_.z = low.filtfilt(axes[2]);
    return out;
}

std::vector<double> odba(const AxisTriple& dynamic) {
    std::vector<double> out;
    out.reserve(dynamic.x.size());
    for (std::size_t i = 0; i < dynamic.x.size(); ++i) {
        out.push_back(std::abs(dynamic.x[i]) + std::abs(dynamic.y[i]) + std::abs(dynamic.z[i]));
    }
    return out;
}

std::vector<double> vedba(const AxisTriple& dynamic) {
    std::vector<double> out;
    out.reserve(dynamic.x.size());
    for (std::size_t i = 0; i < dynamic.x.size(); ++i) {
        const double dx = dynamic.x[i], dy = dynamic.y[i], dz = dynamic.z[i];
        out.push_back(std::sqrt(dx * dx + dy * dy + dz * dz));
    }
    return out;
}

PitchRoll pitch_roll(const AxisTriple& s) {
    PitchRoll out;
    out.pitch.reserve(s.x.size());
    out.roll.reserve(s.x.size());
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double sx = s.x[i], sy = s.y[i], sz = s.z[i];
        if (sx == 0.0 && sy == 0.0 && sz == 0.0) {
            out.pitch.push_back(0.0);
            out.roll.push_back(0.0);
            continue;
        }
        out.pitch.push_back(std::atan2(sz, std::sqrt(sx * sx + sy * sy)));
        out.roll.push_back(std::atan2(sy, std::sqrt(sx * sx + sz * sz)));
    }
    return out;
}

ChannelSet derive_channels(const TriAxialSeries& series, const ChannelConfig& cfg) {
    ChannelSet cs;
    cs.animal_id = series.animal_id;
    cs.start_time_s = series.start_time_s;
    cs.sample_rate_hz = series.sample_rate_hz;
    cs.labels = series.labels;

    auto& x = cs[Channel::x];
    auto& y = cs[Channel::y];
    auto& z = cs[Channel::z];
    x.reserve(series.size());
    y.reserve(series.size());
    z.reserve(series.size());
    for (const auto& s : series.samples) {
        x.push_back(s.x);
        y.push_back(s.y);
        z.push_back(s.z);
    }
    cs[Channel::magnitude] = magnitude(series);

    const auto split = dynamic_static_split(series, cfg.cutoff_hz, cfg.filter_order);
    cs[Channel::odba] = odba(split.dynamic);
    cs[Channel::vedba] = vedba(split.dynamic);
    auto pr = pitch_roll(split.static_);
    cs[Channel::pitch] = std::move(pr.pitch);
    cs[Channel::roll] = std::move(pr.roll);
    return cs;
}

void write_channel_csv(const std::string& path, const ChannelSet& cs) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(cs.length() + 1);
    std::vector<std::string> header;
    for (Channel c : all_channels) header.emplace_back(channel_name(c));
    header.emplace_back("label");
    rows.push_back(std::move(header));
    for (std::size_t i = 0; i < cs.length(); ++i) {
        std::vector<std::string> row;
        for (Channel c : all_channels) row.push_back(csv::format_double(cs[c][i]));
        const LabelCode l = i < cs.labels.size() ? cs.labels[i] : kUnlabeled;
        row.emplace_back(l == kUnlabeled ? "unlabeled"
                                         : std::string(to_string(static_cast<Behaviour>(l))));
        rows.push_back(std::move(row));
    }
    csv::write_file(path, rows);
}

}  // namespace collarml
