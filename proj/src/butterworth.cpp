#include "collarml/butterworth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "collarml/errors.hpp"

namespace collarml {

SosFilter design_butterworth(const ButterworthSpec& spec) {
    if (spec.order < 2 || spec.order % 2 != 0) {
        throw ContractError("butterworth: order must be positive and even");
    }
    if (spec.sample_rate_hz <= 0.0) throw ContractError("butterworth: bad sample rate");
    if (spec.cutoff_hz <= 0.0 || spec.cutoff_hz >= spec.sample_rate_hz / 2.0) {
        throw ContractError("butterworth: cutoff must lie in (0, Nyquist)");
    }

    const double fs = spec.sample_rate_hz;
    const double k = 2.0 * fs;  // bilinear constant
    // pre-warp so the digital cutoff lands exactly on cutoff_hz
    const double w = 2.0 * fs * std::tan(std::numbers::pi * spec.cutoff_hz / fs);

    SosFilter out;
    const int n_sections = spec.order / 2;
    out.sections.reserve(static_cast<std::size_t>(n_sections));
    for (int s = 0; s < n_sections; ++s) {
        // analog prototype pole pair: s^2 + 2 sin(phi) wc s + wc^2
        const double phi =
            std::numbers::pi * (2.0 * s + 1.0) / (2.0 * static_cast<double>(spec.order));
        const double q = 2.0 * std::sin(phi);

        const double c0 = k * k + q * w * k + w * w;
        const double c1 = 2.0 * (w * w - k * k);
        const double c2 = k * k - q * w * k + w * w;

        Biquad bq{};
        if (spec.kind == FilterKind::low_pass) {
            bq.b0 = w * w / c0;
            bq.b1 = 2.0 * w * w / c0;
            bq.b2 = w * w / c0;
        } else {
            bq.b0 = k * k / c0;
            bq.b1 = -2.0 * k * k / c0;
            bq.b2 = k * k / c0;
        }
        bq.a1 = c1 / c0;
        bq.a2 = c2 / c0;
        out.sections.push_back(bq);
    }
    // settle length: samples for the slowest pole pair to decay below ~e^-8
    double rho_max = 0.0;
    for (const auto& s : out.sections) rho_max = std::max(rho_max, std::sqrt(s.a2));
    out.settle_length_ = rho_max >= 1.0 ? 1e9 : std::ceil(8.0 / -std::log(rho_max));
    return out;
}

namespace {

// Runs one cascade pass. When `steady_init` is set, each section starts in
// the steady state it would reach under a constant input equal to the
// first sample, which suppresses the slow startup transient.
std::vector<double> run_cascade(const std::vector<Biquad>& sections, std::vector<double> y,
                                bool steady_init) {
    double level = y.empty() ? 0.0 : y.front();
    for (const auto& s : sections) {
        double z1 = 0.0, z2 = 0.0;  // direct form II transposed state
        double out_level = 0.0;
        if (steady_init && !y.empty()) {
            const double denom = 1.0 + s.a1 + s.a2;
            const double gain = (s.b0 + s.b1 + s.b2) / denom;
            out_level = gain * level;
            z1 = out_level - s.b0 * level;
            z2 = s.b2 * level - s.a2 * out_level;
        }
        for (double& v : y) {
            const double in = v;
            const double outv = s.b0 * in + z1;
            z1 = s.b1 * in - s.a1 * outv + z2;
            z2 = s.b2 * in - s.a2 * outv;
            v = outv;
        }
        level = out_level;
    }
    return y;
}

}  // namespace

std::vector<double> SosFilter::filter(const std::vector<double>& x) const {
    return run_cascade(sections, x, false);
}

std::size_t SosFilter::pad_length(std::size_t input_size) const {
    const auto want = static_cast<std::size_t>(3.0 * settle_length_);
    return input_size == 0 ? 0 : std::min(input_size - 1, want);
}

std::vector<double> SosFilter::filtfilt(const std::vector<double>& x) const {
    if (x.size() < 3) throw ContractError("filtfilt: input too short");
    const std::size_t pad = pad_length(x.size());
    const std::size_t n = x.size();

    // odd reflection about the end samples suppresses edge transients
    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t i = 0; i < pad; ++i) ext.push_back(2.0 * x.front() - x[pad - i]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t i = 0; i < pad; ++i) ext.push_back(2.0 * x.back() - x[n - 2 - i]);

    ext = run_cascade(sections, std::move(ext), true);
    std::reverse(ext.begin(), ext.end());
    ext = run_cascade(sections, std::move(ext), true);
    std::reverse(ext.begin(), ext.end());

    return std::vector<double>(ext.begin() + static_cast<std::ptrdiff_t>(pad),
                               ext.begin() + static_cast<std::ptrdiff_t>(pad + n));
}

}  // namespace collarml
