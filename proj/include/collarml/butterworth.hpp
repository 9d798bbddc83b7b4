#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace collarml {

enum class FilterKind { low_pass, high_pass };

struct ButterworthSpec {
    int order = 6;  // must be even (cascade of biquads)
    double cutoff_hz = 0.3;
    FilterKind kind = FilterKind::low_pass;
    double sample_rate_hz = 25.0;
};

// One second-order section, direct form II transposed. a0 normalized to 1.
struct Biquad {
    double b0, b1, b2;
    double a1, a2;
};

// Cascade designed by the bilinear transform with frequency pre-warping.
struct SosFilter {
    std::vector<Biquad> sections;

    // Single forward pass, zero initial state.
    std::vector<double> filter(const std::vector<double>& x) const;

    // Zero-phase forward-backward pass with reflect padding.
    std::vector<double> filtfilt(const std::vector<double>& x) const;

    // Samples used for reflect padding in filtfilt.
    std::size_t pad_length(std::size_t input_size) const;

    double settle_length_ = 0.0;  // set at design time
};

SosFilter design_butterworth(const ButterworthSpec& spec);

}  // namespace collarml
