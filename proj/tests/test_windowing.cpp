#include "collarml/errors.hpp"
#include "collarml/rng.hpp"
#include "collarml/windowing.hpp"
#include "doctest.h"

using namespace collarml;

namespace {

ChannelSet make_channelset(std::size_t n, double fs = 25.0) {
    ChannelSet cs;
    cs.animal_id = "a";
    cs.sample_rate_hz = fs;
    Rng rng(99);
    for (auto& ch : cs.channels) {
        ch.resize(n);
        for (auto& v : ch) v = rng.normal();
    }
    cs.labels.assign(n, to_code(Behaviour::lying));
    return cs;
}

}  // namespace

TEST_CASE("segment: 150 uniform samples, L=75, hop 37 -> 3 windows") {
    auto cs = make_channelset(150);
    const auto windows = segment(cs, WindowingSpec{3.0, 0.5, 1.0});
    REQUIRE(windows.size() == 3);
    CHECK(windows[0].start_time_s == doctest::Approx(0.0));
    CHECK(windows[1].start_time_s == doctest::Approx(37.0 / 25.0));
    CHECK(windows[2].start_time_s == doctest::Approx(74.0 / 25.0));
    for (const auto& w : windows) {
        CHECK(w.length() == 75);
        for (const auto& ch : w.channels) CHECK(ch.size() == 75);
        CHECK(w.label == Behaviour::lying);
    }
}

TEST_CASE("segment: window channels copy the right slice") {
    auto cs = make_channelset(150);
    const auto windows = segment(cs, WindowingSpec{3.0, 0.5, 1.0});
    for (std::size_t i = 0; i < 75; ++i) {
        CHECK(windows[1].channel(Channel::odba)[i] == cs[Channel::odba][37 + i]);
    }
}

TEST_CASE("segment: label boundary window dropped at purity 1.0") {
    auto cs = make_channelset(150);
    // lying -> walking switch at sample 60: window [37,112) is mixed
    for (std::size_t i = 60; i < 150; ++i) cs.labels[i] = to_code(Behaviour::walking);
    const auto windows = segment(cs, WindowingSpec{3.0, 0.5, 1.0});
    REQUIRE(windows.size() == 1);  // only [74,149) is pure (walking)
    CHECK(windows[0].label == Behaviour::walking);
}

TEST_CASE("segment: majority rule at purity 0.6") {
    auto cs = make_channelset(75);
    for (std::size_t i = 0; i < 20; ++i) cs.labels[i] = to_code(Behaviour::walking);
    const auto strict = segment(cs, WindowingSpec{3.0, 0.5, 1.0});
    CHECK(strict.empty());
    const auto majority = segment(cs, WindowingSpec{3.0, 0.5, 0.6});
    REQUIRE(majority.size() == 1);
    CHECK(majority[0].label == Behaviour::lying);
}

TEST_CASE("segment: windows containing unlabeled samples are dropped") {
    auto cs = make_channelset(75);
    cs.labels[40] = kUnlabeled;
    CHECK(segment(cs, WindowingSpec{3.0, 0.5, 0.6}).empty());
}

TEST_CASE("segment: count bound and single-label equality") {
    for (std::size_t n : {75u, 76u, 149u, 150u, 300u, 1000u}) {
        auto cs = make_channelset(n);
        const auto windows = segment(cs, WindowingSpec{3.0, 0.5, 1.0});
        const std::size_t bound = (n - 75) / 37 + 1;
        CHECK(windows.size() == bound);  // equality: single-label series
    }
}

TEST_CASE("segment: no two windows share (animal_id, start_time)") {
    auto cs = make_channelset(1000);
    const auto windows = segment(cs, WindowingSpec{3.0, 0.5, 1.0});
    for (std::size_t i = 1; i < windows.size(); ++i) {
        CHECK(windows[i].start_time_s > windows[i - 1].start_time_s);
    }
}

TEST_CASE("segment: series shorter than L emits nothing") {
    auto cs = make_channelset(74);
    CHECK(segment(cs, WindowingSpec{3.0, 0.5, 1.0}).empty());
}

TEST_CASE("segment: non-integer window length is a spec error") {
    auto cs = make_channelset(100);
    CHECK_THROWS_AS(segment(cs, WindowingSpec{3.01, 0.5, 1.0}), ContractError);
}

TEST_CASE("segment: concatenated homogeneous runs give union minus impure") {
    auto cs = make_channelset(296);
    for (std::size_t i = 148; i < 296; ++i) cs.labels[i] = to_code(Behaviour::running);
    const auto windows = segment(cs, WindowingSpec{3.0, 0.5, 1.0});
    // every emitted window is pure and lies wholly in one run
    for (const auto& w : windows) {
        const auto start = static_cast<std::size_t>(w.start_time_s * 25.0 + 0.5);
        const bool in_first = start + 75 <= 148;
        const bool in_second = start >= 148;
        CHECK((in_first || in_second));
        CHECK(w.label == (in_first ? Behaviour::lying : Behaviour::running));
    }
}
