#pragma once

#include <string>
#include <vector>

#include "collarml/series.hpp"

namespace collarml {

// Headered CSV: a `# schema_hash=<hex>` comment, then
// `animal_id,label,<feature names...>` and one row per window.
void write_feature_csv(const std::string& path, const FeatureMatrix& m);
FeatureMatrix read_feature_csv(const std::string& path);

// Compact binary twin (magic CMLF): schema hash, shape, names, labels,
// animal ids, row-major doubles. Meant for the wide rocket matrices.
void write_feature_bin(const std::string& path, const FeatureMatrix& m);
FeatureMatrix read_feature_bin(const std::string& path);

// Auto-detects binary vs CSV from the file's magic bytes.
FeatureMatrix read_feature_matrix(const std::string& path);

// Windowed segments, binary (magic CMLW), bit-exact round-trip.
void save_windows(const std::string& path, const std::vector<LabeledWindow>& windows);
std::vector<LabeledWindow> load_windows(const std::string& path);

}  // namespace collarml
