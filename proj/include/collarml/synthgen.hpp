#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collarml/series.hpp"

namespace collarml {

// A behaviour archetype: a static posture plus a dynamic component that is
// either quasi-periodic (dominant_freq_hz set) or broadband (unset).
struct ArchetypeSpec {
    Behaviour behaviour = Behaviour::other;
    Vec3 base_orientation{0.0, 0.0, 1.0};  // g, gravity seen in the sensor frame
    double dynamic_amplitude = 0.0;        // g
    std::optional<double> dominant_freq_hz;
    double noise_std = 0.01;  // g
    double duration_s = 60.0;
};

// One archetype per behaviour, each lasting `bout_s` seconds:
// lying flat and quiet, running high-amplitude broadband, grooming and
// drinking quasi-periodic at moderate amplitude, walking moderate
// aperiodic, `other` in between.
std::vector<ArchetypeSpec> default_archetypes(double bout_s = 60.0);

struct SynthAnimal {
    TriAxialSeries series;
    AnnotationTrack annotations;  // bout-exact, covering the whole series
};

// One synthetic animal per index; bouts are concatenated in spec order.
// Inter-animal variability comes from a lognormal (sigma 0.15) gain on the
// dynamic amplitude and an orientation jitter of at most 10 degrees, both
// drawn per animal. Deterministic in `seed`; each animal uses an
// independent derived stream, so results do not depend on generation order.
std::vector<SynthAnimal> generate(const std::vector<ArchetypeSpec>& specs, std::size_t n_animals,
                                  std::uint64_t seed, double sample_rate_hz = 25.0);

// Writes <dir>/<animal>_accel.csv and <dir>/<animal>_labels.csv in the
// formats the ingest readers accept; creates the directory if needed.
void write_synth_dataset(const std::string& dir, const std::vector<SynthAnimal>& animals);

}  // namespace collarml
