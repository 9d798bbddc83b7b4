#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "collarml/series.hpp"

namespace collarml {

struct GroupedSplit {
    std::vector<std::string> train_animals;  // sorted
    std::vector<std::string> test_animals;   // sorted
    double objective = 0.0;  // mean absolute per-class proportion difference
    bool exhaustive = false;
    bool class_missing_from_test = false;
};

// Animal-grouped split at `ratio` train fraction. Evaluates `candidates`
// seeded random partitions -- or every partition when there are no more
// than `candidates` of them -- and keeps the one minimizing the mean over
// classes of |p_train(c) - p_test(c)|.
GroupedSplit grouped_stratified_split(const std::vector<LabeledWindow>& windows, double ratio,
                                      std::size_t candidates, std::uint64_t seed);

std::vector<LabeledWindow> filter_windows(const std::vector<LabeledWindow>& windows,
                                          const std::vector<std::string>& animals);

}  // namespace collarml
