#pragma once

#include <string>
#include <vector>

#include "collarml/series.hpp"

namespace collarml {

struct WindowingSpec {
    double duration_s = 3.0;
    double overlap_fraction = 0.5;  // in [0, 1)
    // Minimum fraction of samples that must share one label for the window
    // to be emitted; 1.0 keeps single-label windows only.
    double purity_threshold = 1.0;
};

// Splits a ChannelSet into fixed-length windows with hop
// floor(L * (1 - overlap)). A window is emitted when a fraction >=
// purity_threshold of its samples share one label and no sample is
// unlabeled; the dominant label becomes the window label.
std::vector<LabeledWindow> segment(const ChannelSet& cs, const WindowingSpec& spec);

// Audit manifest: animal_id,window_index,start_time,label
void write_window_manifest(const std::string& path, const std::vector<LabeledWindow>& windows);

}  // namespace collarml
