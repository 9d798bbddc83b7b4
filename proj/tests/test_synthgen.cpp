#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include "collarml/channels.hpp"
#include "collarml/errors.hpp"
#include "collarml/ingest.hpp"
#include "collarml/synthgen.hpp"
#include "doctest.h"

using namespace collarml;

namespace {

double odba_mean_for(const SynthAnimal& animal, Behaviour b) {
    const auto cs = derive_channels(align(animal.series, animal.annotations));
    const auto& odba_ch = cs[Channel::odba];
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < cs.length(); ++i) {
        if (cs.labels[i] == to_code(b)) {
            sum += odba_ch[i];
            ++n;
        }
    }
    REQUIRE(n > 0);
    return sum / static_cast<double>(n);
}

}  // namespace

TEST_CASE("lying is quiet and running is loud in derived ODBA") {
    const auto animals = generate(default_archetypes(40.0), 3, 7);
    for (const auto& animal : animals) {
        const double lying = odba_mean_for(animal, Behaviour::lying);
        const double running = odba_mean_for(animal, Behaviour::running);
        CHECK(lying < 0.05);
        CHECK(running > 5.0 * lying);
    }
}

TEST_CASE("annotation durations sum to the series duration and tile it") {
    const auto animals = generate(default_archetypes(30.0), 2, 1);
    for (const auto& animal : animals) {
        double total = 0.0;
        for (const auto& iv : animal.annotations.intervals) total += iv.stop_s - iv.start_s;
        CHECK(total == doctest::Approx(animal.series.duration_s()).epsilon(1e-12));
        // contiguous, starting at the series clock
        CHECK(animal.annotations.intervals.front().start_s ==
              doctest::Approx(animal.series.start_time_s));
        for (std::size_t i = 1; i < animal.annotations.intervals.size(); ++i) {
            CHECK(animal.annotations.intervals[i].start_s ==
                  doctest::Approx(animal.annotations.intervals[i - 1].stop_s));
        }
    }
}

TEST_CASE("same seed gives identical datasets, different seeds differ") {
    const auto specs = default_archetypes(10.0);
    const auto a = generate(specs, 2, 42);
    const auto b = generate(specs, 2, 42);
    const auto c = generate(specs, 2, 43);
    REQUIRE(a.size() == b.size());
    bool any_diff = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        REQUIRE(a[k].series.size() == b[k].series.size());
        for (std::size_t i = 0; i < a[k].series.size(); ++i) {
            CHECK(a[k].series.samples[i].x == b[k].series.samples[i].x);
            CHECK(a[k].series.samples[i].y == b[k].series.samples[i].y);
            CHECK(a[k].series.samples[i].z == b[k].series.samples[i].z);
            if (a[k].series.samples[i].x != c[k].series.samples[i].x) any_diff = true;
        }
    }
    CHECK(any_diff);
}

TEST_CASE("animals differ from each other but share bout structure") {
    const auto animals = generate(default_archetypes(10.0), 4, 9);
    for (std::size_t k = 1; k < animals.size(); ++k) {
        CHECK(animals[k].series.size() == animals[0].series.size());
        CHECK(animals[k].series.animal_id != animals[0].series.animal_id);
        bool differs = false;
        for (std::size_t i = 0; i < animals[k].series.size() && !differs; ++i) {
            differs = animals[k].series.samples[i].x != animals[0].series.samples[i].x;
        }
        CHECK(differs);
    }
}

TEST_CASE("written dataset round-trips through the ingest readers") {
    const std::string dir = "/tmp/collarml_synth_roundtrip";
    std::filesystem::remove_all(dir);
    const auto animals = generate(default_archetypes(8.0), 2, 3);
    write_synth_dataset(dir, animals);

    for (const auto& animal : animals) {
        const std::string stem = dir + "/" + animal.series.animal_id;
        const auto series = parse_accel_csv(stem + "_accel.csv", 25.0, animal.series.animal_id);
        const auto track = parse_annotations(stem + "_labels.csv", animal.series.animal_id);
        REQUIRE(series.size() == animal.series.size());
        for (std::size_t i = 0; i < series.size(); i += 17) {
            CHECK(series.samples[i].x == doctest::Approx(animal.series.samples[i].x).epsilon(1e-9));
        }
        REQUIRE(track.intervals.size() == animal.annotations.intervals.size());
        const auto labeled = align(series, track);
        CHECK(std::none_of(labeled.labels.begin(), labeled.labels.end(),
                           [](LabelCode c) { return c == kUnlabeled; }));
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("validation") {
    auto specs = default_archetypes(10.0);
    CHECK_THROWS_AS(generate(specs, 1, 0), ContractError);
    CHECK_THROWS_AS(generate({}, 3, 0), ContractError);
    auto bad = specs;
    bad[0].noise_std = -0.1;
    CHECK_THROWS_AS(generate(bad, 3, 0), ContractError);
    bad = specs;
    bad[2].dominant_freq_hz = 13.0;  // at/above Nyquist for 25 Hz
    CHECK_THROWS_AS(generate(bad, 3, 0), ContractError);
    bad = specs;
    bad[1].duration_s = 0.0;
    CHECK_THROWS_AS(generate(bad, 3, 0), ContractError);
}
