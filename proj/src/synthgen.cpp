#include "collarml/synthgen.hpp"

#include <cmath>
#include <filesystem>

#include "collarml/errors.hpp"
#include "collarml/ingest.hpp"
#include "collarml/rng.hpp"

namespace collarml {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBaseEpochS = 1700000000.0;

Vec3 normalized(Vec3 v) {
    const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    if (n == 0.0) return {0.0, 0.0, 1.0};
    return {v.x / n, v.y / n, v.z / n};
}

// Rodrigues rotation of v about unit axis u by angle theta.
Vec3 rotate(const Vec3& v, const Vec3& u, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double d = (u.x * v.x + u.y * v.y + u.z * v.z) * (1.0 - c);
    return {v.x * c + (u.y * v.z - u.z * v.y) * s + u.x * d,
            v.y * c + (u.z * v.x - u.x * v.z) * s + u.y * d,
            v.z * c + (u.x * v.y - u.y * v.x) * s + u.z * d};
}

void validate(const std::vector<ArchetypeSpec>& specs, std::size_t n_animals,
              double sample_rate_hz) {
    if (n_animals < 2) throw ContractError("generate: n_animals must be >= 2");
    if (specs.empty()) throw ContractError("generate: empty archetype list");
    if (sample_rate_hz <= 0.0) throw ContractError("generate: sample rate must be positive");
    for (const auto& s : specs) {
        if (s.noise_std < 0.0) throw ContractError("generate: noise_std must be >= 0");
        if (s.duration_s <= 0.0) throw ContractError("generate: duration_s must be positive");
        if (s.dynamic_amplitude < 0.0)
            throw ContractError("generate: dynamic_amplitude must be >= 0");
        if (s.dominant_freq_hz && *s.dominant_freq_hz >= sample_rate_hz / 2.0)
            throw ContractError("generate: dominant_freq_hz must be below Nyquist");
    }
}

SynthAnimal generate_animal(const std::vector<ArchetypeSpec>& specs, std::size_t index,
                            std::uint64_t seed, double sample_rate_hz) {
    Rng rng = Rng::derive(seed, index);
    const double gain = std::exp(0.15 * rng.normal());
    const Vec3 jitter_axis =
        normalized({rng.normal(), rng.normal(), rng.normal()});
    const double jitter_angle = rng.uniform(0.0, 10.0 * kPi / 180.0);

    SynthAnimal animal;
    char id[16];
    std::snprintf(id, sizeof(id), "synth%02zu", index);
    animal.series.animal_id = id;
    animal.series.sample_rate_hz = sample_rate_hz;
    animal.series.start_time_s = kBaseEpochS;
    animal.annotations.animal_id = id;

    double t0 = kBaseEpochS;
    for (const auto& spec : specs) {
        const auto n = static_cast<std::size_t>(std::llround(spec.duration_s * sample_rate_hz));
        const double amp = gain * spec.dynamic_amplitude;
        // per-bout randomization of the dynamic component's axis mix
        double weight[3], phase[3];
        for (int a = 0; a < 3; ++a) {
            weight[a] = rng.uniform(0.5, 1.0);
            phase[a] = rng.uniform(0.0, 2.0 * kPi);
        }
        for (std::size_t i = 0; i < n; ++i) {
            Vec3 v = spec.base_orientation;
            double dyn[3];
            if (spec.dominant_freq_hz) {
                const double w = 2.0 * kPi * *spec.dominant_freq_hz *
                                 static_cast<double>(i) / sample_rate_hz;
                for (int a = 0; a < 3; ++a) dyn[a] = std::sin(w + phase[a]);
            } else {
                for (int a = 0; a < 3; ++a) dyn[a] = rng.normal();
            }
            v.x += amp * weight[0] * dyn[0] + spec.noise_std * rng.normal();
            v.y += amp * weight[1] * dyn[1] + spec.noise_std * rng.normal();
            v.z += amp * weight[2] * dyn[2] + spec.noise_std * rng.normal();
            animal.series.samples.push_back(rotate(v, jitter_axis, jitter_angle));
        }
        const double dur = static_cast<double>(n) / sample_rate_hz;
        animal.annotations.intervals.push_back({spec.behaviour, t0, t0 + dur});
        t0 += dur;
    }
    return animal;
}

}  // namespace

std::vector<ArchetypeSpec> default_archetypes(double bout_s) {
    std::vector<ArchetypeSpec> specs;
    auto add = [&](Behaviour b, Vec3 base, double amp, std::optional<double> freq,
                   double noise) {
        specs.push_back({b, base, amp, freq, noise, bout_s});
    };
    add(Behaviour::lying, {0.0, 0.95, 0.31}, 0.0, std::nullopt, 0.01);
    add(Behaviour::running, {0.0, 0.0, 1.0}, 0.8, std::nullopt, 0.05);
    add(Behaviour::grooming, {0.3, 0.0, 0.95}, 0.3, 2.5, 0.03);
    add(Behaviour::drinking_milk, {0.6, 0.0, 0.8}, 0.25, 1.2, 0.03);
    add(Behaviour::walking, {0.0, 0.0, 1.0}, 0.25, std::nullopt, 0.04);
    add(Behaviour::other, {0.2, 0.2, 0.96}, 0.12, 0.7, 0.05);
    return specs;
}

std::vector<SynthAnimal> generate(const std::vector<ArchetypeSpec>& specs, std::size_t n_animals,
                                  std::uint64_t seed, double sample_rate_hz) {
    validate(specs, n_animals, sample_rate_hz);
    std::vector<SynthAnimal> animals;
    animals.reserve(n_animals);
    for (std::size_t a = 0; a < n_animals; ++a) {
        animals.push_back(generate_animal(specs, a, seed, sample_rate_hz));
    }
    return animals;
}

void write_synth_dataset(const std::string& dir, const std::vector<SynthAnimal>& animals) {
    std::filesystem::create_directories(dir);
    for (const auto& animal : animals) {
        const std::string stem = dir + "/" + animal.series.animal_id;
        write_accel_csv(stem + "_accel.csv", animal.series);
        write_annotations(stem + "_labels.csv", animal.annotations);
    }
}

}  // namespace collarml
