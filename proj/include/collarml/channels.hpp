#pragma once

#include <array>
#include <vector>

#include "collarml/butterworth.hpp"
#include "collarml/series.hpp"

namespace collarml {

// magnitude_i = sqrt(ax^2 + ay^2 + az^2) - 1, input in g (subtracting the
// 1 g gravity component from the vector norm).
std::vector<double> magnitude(const TriAxialSeries& series);

struct AxisTriple {
    std::vector<double> x, y, z;
};

struct DynamicStaticSplit {
    AxisTriple dynamic;  // high-pass: body movement
    AxisTriple static_;  // low-pass: gravity / orientation
};

// Zero-phase 6th-order Butterworth split at `cutoff_hz`. The low- and
// high-pass branches are power complementary, so dynamic + static
// reconstructs the input up to edge effects.
DynamicStaticSplit dynamic_static_split(const TriAxialSeries& series, double cutoff_hz = 0.3,
                                        int order = 6);

// ODBA_i = |Dx| + |Dy| + |Dz|
std::vector<double> odba(const AxisTriple& dynamic);

// VeDBA_i = sqrt(Dx^2 + Dy^2 + Dz^2)
std::vector<double> vedba(const AxisTriple& dynamic);

struct PitchRoll {
    std::vector<double> pitch;  // radians, [-pi/2, pi/2]
    std::vector<double> roll;
};

// pitch = atan2(Sz, sqrt(Sx^2 + Sy^2)); roll = atan2(Sy, sqrt(Sx^2 + Sz^2)).
// An all-zero static triple yields 0 for both angles.
PitchRoll pitch_roll(const AxisTriple& static_axes);

struct ChannelConfig {
    double cutoff_hz = 0.3;
    int filter_order = 6;
};

// Assembles the full 8-channel representation; labels pass through.
ChannelSet derive_channels(const TriAxialSeries& series, const ChannelConfig& cfg = {});

// Debug/golden-test dump: CSV with the 8 channel columns plus label.
void write_channel_csv(const std::string& path, const ChannelSet& cs);

}  // namespace collarml
