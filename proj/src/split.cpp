#include "collarml/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "collarml/behaviour.hpp"
#include "collarml/errors.hpp"
#include "collarml/rng.hpp"

namespace collarml {

namespace {

// C(n, k) capped at `cap` to avoid overflow.
std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
    k = std::min(k, n - k);
    double v = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        v *= static_cast<double>(n - i) / static_cast<double>(i + 1);
        if (v > static_cast<double>(cap)) return cap + 1;
    }
    return static_cast<std::size_t>(std::llround(v));
}

struct Objective {
    double value = 0.0;
    bool missing_from_test = false;
};

Objective evaluate(const std::vector<std::array<std::size_t, kNumBehaviours>>& counts,
                   const std::vector<bool>& in_train,
                   const std::vector<std::size_t>& classes_present) {
    std::array<double, kNumBehaviours> train{}, test{};
    double train_total = 0.0, test_total = 0.0;
    for (std::size_t a = 0; a < counts.size(); ++a) {
        for (std::size_t c : classes_present) {
            const auto v = static_cast<double>(counts[a][c]);
            (in_train[a] ? train[c] : test[c]) += v;
            (in_train[a] ? train_total : test_total) += v;
        }
    }
    Objective out;
    double sum = 0.0;
    for (std::size_t c : classes_present) {
        const double pt = train_total > 0.0 ? train[c] / train_total : 0.0;
        const double pe = test_total > 0.0 ? test[c] / test_total : 0.0;
        if (test_total == 0.0 || test[c] == 0.0) out.missing_from_test = true;
        sum += std::abs(pt - pe);
    }
    out.value = sum / static_cast<double>(classes_present.size());
    return out;
}

}  // namespace

GroupedSplit grouped_stratified_split(const std::vector<LabeledWindow>& windows, double ratio,
                                      std::size_t candidates, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ContractError("split: ratio must be in (0,1)");
    if (candidates == 0) throw ContractError("split: need at least one candidate");

    std::vector<std::string> animals;
    {
        std::set<std::string> seen;
        for (const auto& w : windows) seen.insert(w.animal_id);
        animals.assign(seen.begin(), seen.end());
    }
    const std::size_t n = animals.size();
    if (n < 2) throw ContractError("split: need at least 2 animals");

    std::vector<std::array<std::size_t, kNumBehaviours>> counts(n);
    for (auto& c : counts) c.fill(0);
    for (const auto& w : windows) {
        const auto it = std::lower_bound(animals.begin(), animals.end(), w.animal_id);
        ++counts[static_cast<std::size_t>(it - animals.begin())]
               [static_cast<std::size_t>(w.label)];
    }
    std::vector<std::size_t> classes_present;
    for (std::size_t c = 0; c < kNumBehaviours; ++c) {
        for (const auto& row : counts) {
            if (row[c] > 0) {
                classes_present.push_back(c);
                break;
            }
        }
    }
    if (classes_present.empty()) throw ContractError("split: no labeled windows");

    auto n_train = static_cast<std::size_t>(
        std::llround(ratio * static_cast<double>(n)));
    n_train = std::clamp<std::size_t>(n_train, 1, n - 1);

    GroupedSplit best;
    bool have = false;
    std::vector<bool> in_train(n, false);
    const auto consider = [&](const std::vector<bool>& membership) {
        const Objective obj = evaluate(counts, membership, classes_present);
        if (!have || obj.value < best.objective) {
            have = true;
            best.objective = obj.value;
            best.class_missing_from_test = obj.missing_from_test;
            best.train_animals.clear();
            best.test_animals.clear();
            for (std::size_t a = 0; a < n; ++a) {
                (membership[a] ? best.train_animals : best.test_animals).push_back(animals[a]);
            }
        }
    };

    if (binomial_capped(n, n_train, candidates) <= candidates) {
        best.exhaustive = true;
        // lexicographic combinations of train indices
        std::vector<std::size_t> pick(n_train);
        for (std::size_t i = 0; i < n_train; ++i) pick[i] = i;
        while (true) {
            std::fill(in_train.begin(), in_train.end(), false);
            for (std::size_t i : pick) in_train[i] = true;
            consider(in_train);
            std::size_t i = n_train;
            while (i > 0 && pick[i - 1] == n - n_train + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < n_train; ++j) pick[j] = pick[j - 1] + 1;
        }
    } else {
        Rng rng(seed);
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        for (std::size_t c = 0; c < candidates; ++c) {
            rng.shuffle(order);
            std::fill(in_train.begin(), in_train.end(), false);
            for (std::size_t i = 0; i < n_train; ++i) in_train[order[i]] = true;
            consider(in_train);
        }
    }
    return best;
}

std::vector<LabeledWindow> filter_windows(const std::vector<LabeledWindow>& windows,
                                          const std::vector<std::string>& animals) {
    std::set<std::string> keep(animals.begin(), animals.end());
    std::vector<LabeledWindow> out;
    for (const auto& w : windows) {
        if (keep.count(w.animal_id)) out.push_back(w);
    }
    return out;
}

}  // namespace collarml
