#include <cmath>
#include <numbers>

#include "collarml/butterworth.hpp"
#include "collarml/channels.hpp"
#include "collarml/errors.hpp"
#include "collarml/rng.hpp"
#include "doctest.h"

using namespace collarml;

namespace {

TriAxialSeries make_series(std::vector<Vec3> samples, double fs = 25.0) {
    TriAxialSeries s;
    s.animal_id = "a";
    s.sample_rate_hz = fs;
    s.samples = std::move(samples);
    return s;
}

std::vector<double> sine(double freq, double fs, double duration_s, double amp = 1.0) {
    const auto n = static_cast<std::size_t>(duration_s * fs);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = amp * std::sin(2.0 * std::numbers::pi * freq * static_cast<double>(i) / fs);
    }
    return out;
}

// steady-state sine amplitude over the middle half of the signal, via RMS
// (immune to the sample grid missing the true peaks)
double mid_amplitude(const std::vector<double>& x) {
    double ss = 0.0;
    std::size_t n = 0;
    for (std::size_t i = x.size() / 4; i < 3 * x.size() / 4; ++i, ++n) ss += x[i] * x[i];
    return std::sqrt(2.0 * ss / static_cast<double>(n));
}

}  // namespace

TEST_CASE("magnitude: unit gravity and 3-4-5 triple") {
    auto s = make_series({{0, 0, 1}, {1, 2, 2}});
    const auto m = magnitude(s);
    CHECK(m[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(m[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("magnitude: random vectors match per-sample recomputation") {
    Rng rng(11);
    std::vector<Vec3> samples;
    for (int i = 0; i < 200; ++i) {
        samples.push_back({rng.normal(), rng.normal(), rng.normal()});
    }
    auto s = make_series(samples);
    const auto m = magnitude(s);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& v = samples[i];
        const double want = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z) - 1.0;
        CHECK(std::abs(m[i] - want) < 1e-12);
    }
}

TEST_CASE("butterworth: DC response") {
    const double fs = 25.0;
    std::vector<double> dc(1000, 1.0);

    auto hp = design_butterworth({6, 0.3, FilterKind::high_pass, fs});
    const auto hp_out = hp.filtfilt(dc);
    for (std::size_t i = 200; i < 800; ++i) CHECK(std::abs(hp_out[i]) < 1e-6);

    auto lp = design_butterworth({6, 0.3, FilterKind::low_pass, fs});
    const auto lp_out = lp.filtfilt(dc);
    for (std::size_t i = 200; i < 800; ++i) CHECK(std::abs(lp_out[i] - 1.0) < 1e-6);
}

TEST_CASE("butterworth: -3 dB single-pass gain at cutoff") {
    const double fs = 25.0;
    auto lp = design_butterworth({6, 0.3, FilterKind::low_pass, fs});
    const auto out = lp.filter(sine(0.3, fs, 240.0));
    const double gain = mid_amplitude(out);
    CHECK(gain == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("butterworth: cutoff at or above Nyquist is a design error") {
    CHECK_THROWS_AS(design_butterworth({6, 13.0, FilterKind::low_pass, 25.0}), ContractError);
    CHECK_THROWS_AS(design_butterworth({5, 0.3, FilterKind::low_pass, 25.0}), ContractError);
}

TEST_CASE("zero-phase property: filtering commutes with time reversal") {
    Rng rng(3);
    std::vector<double> x(5000);
    for (auto& v : x) v = rng.normal();
    auto lp = design_butterworth({6, 0.3, FilterKind::low_pass, 25.0});
    auto fwd = lp.filtfilt(x);
    std::vector<double> xr(x.rbegin(), x.rend());
    auto rev = lp.filtfilt(xr);
    std::reverse(rev.begin(), rev.end());
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(fwd[i] - rev[i]) < 1e-9);
}

TEST_CASE("dynamic_static_split: constant input") {
    auto s = make_series(std::vector<Vec3>(500, Vec3{0, 0, 1}));
    const auto split = dynamic_static_split(s);
    for (std::size_t i = 0; i < 500; ++i) {
        CHECK(std::abs(split.dynamic.x[i]) < 1e-9);
        CHECK(std::abs(split.dynamic.z[i]) < 1e-9);
        CHECK(split.static_.z[i] == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("dynamic_static_split: 5 Hz sine lands in the dynamic branch") {
    const double fs = 25.0;
    auto wave = sine(5.0, fs, 60.0, 0.5);
    std::vector<Vec3> samples(wave.size());
    for (std::size_t i = 0; i < wave.size(); ++i) samples[i] = {wave[i], 0.0, 1.0};
    const auto split = dynamic_static_split(make_series(samples, fs));
    CHECK(mid_amplitude(split.dynamic.x) > 0.99 * 0.5);
    CHECK(mid_amplitude(split.static_.x) < 0.01);
}

TEST_CASE("dynamic_static_split: complementarity on noise") {
    Rng rng(7);
    std::vector<Vec3> samples(2000);
    for (auto& v : samples) {
        v = {0.1 * rng.normal(), 0.1 * rng.normal(), 1.0 + 0.1 * rng.normal()};
    }
    auto s = make_series(samples);
    const auto split = dynamic_static_split(s);
    double err = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        err = std::max(err, std::abs(split.dynamic.x[i] + split.static_.x[i] - samples[i].x));
        err = std::max(err, std::abs(split.dynamic.y[i] + split.static_.y[i] - samples[i].y));
        err = std::max(err, std::abs(split.dynamic.z[i] + split.static_.z[i] - samples[i].z));
    }
    CHECK(err < 0.02);
}

TEST_CASE("odba and vedba: fixed values and norm inequalities") {
    AxisTriple d;
    d.x = {0.1, 0.0, 3e-3};
    d.y = {0.2, 0.0, 4e-3};
    d.z = {0.3, 0.0, 0.0};
    const auto o = odba(d);
    const auto v = vedba(d);
    CHECK(o[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(o[1] == 0.0);
    CHECK(v[1] == 0.0);
    CHECK(v[2] == doctest::Approx(5e-3).epsilon(1e-12));

    Rng rng(19);
    AxisTriple r;
    for (int i = 0; i < 500; ++i) {
        r.x.push_back(rng.normal());
        r.y.push_back(rng.normal());
        r.z.push_back(rng.normal());
    }
    const auto ro = odba(r);
    const auto rv = vedba(r);
    for (std::size_t i = 0; i < ro.size(); ++i) {
        CHECK(rv[i] <= ro[i] + 1e-12);
        CHECK(ro[i] <= std::sqrt(3.0) * rv[i] + 1e-12);
    }
}

TEST_CASE("pitch_roll: axis-aligned static vectors") {
    AxisTriple s;
    s.x = {0.0, 1.0, 0.0};
    s.y = {0.0, 0.0, 0.0};
    s.z = {1.0, 0.0, 0.0};
    const auto pr = pitch_roll(s);
    CHECK(pr.pitch[0] == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
    CHECK(pr.pitch[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pr.roll[1] == doctest::Approx(0.0).epsilon(1e-12));
    // all-zero static triple: documented 0 convention
    CHECK(pr.pitch[2] == 0.0);
    CHECK(pr.roll[2] == 0.0);
}

TEST_CASE("pitch_roll: random unit vectors match the direct formula") {
    Rng rng(23);
    AxisTriple s;
    for (int i = 0; i < 300; ++i) {
        double x = rng.normal(), y = rng.normal(), z = rng.normal();
        const double n = std::sqrt(x * x + y * y + z * z);
        s.x.push_back(x / n);
        s.y.push_back(y / n);
        s.z.push_back(z / n);
    }
    const auto pr = pitch_roll(s);
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double want_p = std::atan2(s.z[i], std::hypot(s.x[i], s.y[i]));
        const double want_r = std::atan2(s.y[i], std::hypot(s.x[i], s.z[i]));
        CHECK(std::abs(pr.pitch[i] - want_p) < 1e-12);
        CHECK(std::abs(pr.roll[i] - want_r) < 1e-12);
        CHECK(pr.pitch[i] >= -std::numbers::pi / 2 - 1e-12);
        CHECK(pr.pitch[i] <= std::numbers::pi / 2 + 1e-12);
    }
}

TEST_CASE("pitch invariance under rotation of the static vector in the X-Y plane") {
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        const double x = rng.normal(), y = rng.normal(), z = rng.normal();
        const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        AxisTriple s;
        s.x = {x, x * std::cos(theta) - y * std::sin(theta)};
        s.y = {y, x * std::sin(theta) + y * std::cos(theta)};
        s.z = {z, z};
        const auto pr = pitch_roll(s);
        CHECK(std::abs(pr.pitch[0] - pr.pitch[1]) < 1e-12);
    }
}

TEST_CASE("derive_channels: composition and shape") {
    Rng rng(31);
    std::vector<Vec3> samples(400);
    for (auto& v : samples) {
        v = {0.05 * rng.normal(), 0.05 * rng.normal(), 1.0 + 0.05 * rng.normal()};
    }
    auto s = make_series(samples);
    s.labels.assign(samples.size(), to_code(Behaviour::lying));
    const auto cs = derive_channels(s);

    for (Channel c : all_channels) CHECK(cs[c].size() == samples.size());
    CHECK(cs.labels == s.labels);

    // channels equal their standalone operations
    const auto mag = magnitude(s);
    const auto split = dynamic_static_split(s);
    const auto o = odba(split.dynamic);
    const auto v = vedba(split.dynamic);
    const auto pr = pitch_roll(split.static_);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(cs[Channel::magnitude][i] == mag[i]);
        CHECK(cs[Channel::odba][i] == o[i]);
        CHECK(cs[Channel::vedba][i] == v[i]);
        CHECK(cs[Channel::pitch][i] == pr.pitch[i]);
        CHECK(cs[Channel::roll][i] == pr.roll[i]);
    }
}

TEST_CASE("derive_channels: constant gravity gives zero motion channels") {
    auto s = make_series(std::vector<Vec3>(300, Vec3{0, 0, 1}));
    s.labels.assign(300, to_code(Behaviour::lying));
    const auto cs = derive_channels(s);
    for (std::size_t i = 0; i < 300; ++i) {
        CHECK(std::abs(cs[Channel::magnitude][i]) < 1e-9);
        CHECK(std::abs(cs[Channel::odba][i]) < 1e-8);
        CHECK(std::abs(cs[Channel::vedba][i]) < 1e-8);
    }
}

TEST_CASE("axis permutation invariance of magnitude, odba, vedba") {
    Rng rng(37);
    std::vector<Vec3> samples(64);
    for (auto& v : samples) v = {rng.normal(), rng.normal(), rng.normal()};
    std::vector<Vec3> permuted(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        permuted[i] = {samples[i].z, samples[i].x, samples[i].y};
    }
    const auto m1 = magnitude(make_series(samples));
    const auto m2 = magnitude(make_series(permuted));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(m1[i] == doctest::Approx(m2[i]).epsilon(1e-12));
    }
}
