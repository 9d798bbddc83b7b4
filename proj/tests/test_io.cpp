#include <filesystem>
#include <fstream>

#include "collarml/config.hpp"
#include "collarml/errors.hpp"
#include "collarml/feature_io.hpp"
#include "collarml/rng.hpp"
#include "doctest.h"

using namespace collarml;

namespace {

FeatureMatrix sample_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Rng rng(seed);
    FeatureMatrix m;
    for (std::size_t c = 0; c < cols; ++c) m.feature_names.push_back("f" + std::to_string(c));
    for (std::size_t r = 0; r < rows; ++r) {
        m.animal_ids.push_back("animal" + std::to_string(r % 3));
        m.labels.push_back(static_cast<Behaviour>(r % kNumBehaviours));
        for (std::size_t c = 0; c < cols; ++c) m.values.push_back(rng.normal());
    }
    return m;
}

void check_equal(const FeatureMatrix& a, const FeatureMatrix& b) {
    REQUIRE(a.feature_names == b.feature_names);
    REQUIRE(a.animal_ids == b.animal_ids);
    REQUIRE(a.labels == b.labels);
    REQUIRE(a.values.size() == b.values.size());
    for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

struct TempFile {
    std::string path;
    explicit TempFile(const char* name) : path(std::string("/tmp/collarml_io_") + name) {}
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("feature csv round-trips bit-exactly") {
    const auto m = sample_matrix(7, 5, 1);
    TempFile f("m.csv");
    write_feature_csv(f.path, m);
    check_equal(m, read_feature_csv(f.path));
    check_equal(m, read_feature_matrix(f.path));  // auto-detect
}

TEST_CASE("feature binary round-trips bit-exactly and auto-detects") {
    const auto m = sample_matrix(11, 30, 2);
    TempFile f("m.bin");
    write_feature_bin(f.path, m);
    check_equal(m, read_feature_bin(f.path));
    check_equal(m, read_feature_matrix(f.path));
}

TEST_CASE("corrupt feature files are rejected") {
    TempFile f("bad.csv");
    {
        std::ofstream out(f.path);
        out << "wrong,header,x\n1,2,3\n";
    }
    CHECK_THROWS_AS(read_feature_csv(f.path), DataError);
    {
        std::ofstream out(f.path, std::ios::binary);
        out << "XXXXjunk";
    }
    CHECK_THROWS_AS(read_feature_bin(f.path), DataError);
    CHECK_THROWS_AS(read_feature_matrix("/nonexistent/path.csv"), DataError);
}

TEST_CASE("windows round-trip bit-exactly") {
    Rng rng(3);
    std::vector<LabeledWindow> windows;
    for (int i = 0; i < 5; ++i) {
        LabeledWindow w;
        w.animal_id = "a" + std::to_string(i);
        w.window_index = static_cast<std::size_t>(i * 7);
        w.start_time_s = 1e9 + i;
        w.label = static_cast<Behaviour>(i % kNumBehaviours);
        for (auto& ch : w.channels) {
            ch.resize(75);
            for (auto& v : ch) v = rng.normal();
        }
        windows.push_back(std::move(w));
    }
    TempFile f("w.bin");
    save_windows(f.path, windows);
    const auto back = load_windows(f.path);
    REQUIRE(back.size() == windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        CHECK(back[i].animal_id == windows[i].animal_id);
        CHECK(back[i].window_index == windows[i].window_index);
        CHECK(back[i].start_time_s == windows[i].start_time_s);
        CHECK(back[i].label == windows[i].label);
        for (std::size_t ch = 0; ch < kNumChannels; ++ch)
            CHECK(back[i].channels[ch] == windows[i].channels[ch]);
    }
}

TEST_CASE("config parsing: sections, comments, types, lists") {
    const auto c = Config::parse_string(
        "top = 1\n"
        "[split]\n"
        "ratio = 0.7   # train fraction\n"
        "candidates=10000\n"
        "[experiment]\n"
        "feature_sets = hc, catch24 ,rocket\n"
        "verbose = true\n"
        "; full-line comment\n"
        "name = grid run\n");
    CHECK(c.get_int("top") == 1);
    CHECK(c.get_double("split.ratio") == doctest::Approx(0.7));
    CHECK(c.get_u64("split.candidates") == 10000);
    CHECK(c.get_bool("experiment.verbose"));
    CHECK(c.get_string("experiment.name") == "grid run");
    const auto list = c.get_list("experiment.feature_sets");
    REQUIRE(list.size() == 3);
    CHECK(list[0] == "hc");
    CHECK(list[1] == "catch24");
    CHECK(list[2] == "rocket");
    // defaults
    CHECK(c.get_double("split.missing", 0.25) == 0.25);
    CHECK(c.get_list("no.such.list").empty());
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(Config::parse_string("no equals sign\n"), DataError);
    CHECK_THROWS_AS(Config::parse_string("[unterminated\n"), DataError);
    CHECK_THROWS_AS(Config::parse_string("= value\n"), DataError);
    const auto c = Config::parse_string("k = abc\nneg = -4\n");
    CHECK_THROWS_AS(c.get_double("k"), DataError);
    CHECK_THROWS_AS(c.get_bool("k"), DataError);
    CHECK_THROWS_AS(c.get_u64("neg"), DataError);
    CHECK_THROWS_AS(c.get_string("missing"), DataError);
    CHECK_THROWS_AS(Config::parse_file("/nonexistent.cfg"), DataError);
}
