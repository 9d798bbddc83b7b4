#pragma once

#include <vector>

#include "collarml/series.hpp"

namespace collarml {

struct ClassMetrics {
    double sensitivity = 0.0;  // TP / (TP + FN)
    double specificity = 0.0;  // TN / (TN + FP)
    double precision = 0.0;    // TP / (TP + FP), 0 when undefined
    bool precision_defined = true;
};

struct MetricsReport {
    double balanced_accuracy = 0.0;  // mean per-class sensitivity
    std::vector<ClassMetrics> per_class;
    std::vector<std::size_t> confusion;  // K x K, rows = actual, cols = predicted
    std::size_t n_test_windows = 0;

    std::size_t confusion_at(std::size_t actual, std::size_t predicted,
                             std::size_t k) const {
        return confusion[actual * k + predicted];
    }
};

MetricsReport compute_metrics(const std::vector<Behaviour>& actual,
                              const std::vector<Behaviour>& predicted,
                              const std::vector<Behaviour>& classes);

// kappa = (p_o - p_e) / (1 - p_e); 1 when both raters are constant and equal.
double cohens_kappa(const std::vector<LabelCode>& a, const std::vector<LabelCode>& b);

}  // namespace collarml
