#pragma once

#include <vector>

#include "collarml/series.hpp"

namespace collarml {

enum class ClassWeight { none, balanced };

struct RidgeCVSpec {
    std::vector<double> alphas;  // all > 0
    bool fit_intercept = true;
    ClassWeight class_weight = ClassWeight::none;
};

// 100 log-spaced values in [10^lo_exp, 10^hi_exp].
std::vector<double> logspace_alphas(double lo_exp, double hi_exp, std::size_t count = 100);

struct RidgeModel {
    std::vector<Behaviour> classes;
    std::vector<std::string> feature_names;
    std::vector<double> feature_mean;   // standardization statistics
    std::vector<double> feature_scale;  // population std, 1 for constant columns
    std::vector<double> weights;        // cols x classes, row-major
    std::vector<double> intercepts;     // per class
    double chosen_alpha = 0.0;
    std::vector<double> loo_errors;     // per alpha, aligned with sorted spec.alphas
    std::vector<double> alphas;

    double weight_at(std::size_t feature, std::size_t cls) const {
        return weights[feature * classes.size() + cls];
    }
};

RidgeModel ridge_cv_fit(const FeatureMatrix& X, const RidgeCVSpec& spec);

// Leave-one-out residuals (rows x classes, row-major) at a single alpha,
// exactly what the CV criterion aggregates. Exposed for verification
// against brute-force refits.
std::vector<double> ridge_loo_residuals(const FeatureMatrix& X, const RidgeCVSpec& spec,
                                        double alpha);

// Per-row class scores (rows x classes, row-major).
std::vector<double> ridge_decision(const RidgeModel& model, const FeatureMatrix& X);
std::vector<Behaviour> ridge_predict(const RidgeModel& model, const FeatureMatrix& X);

}  // namespace collarml
