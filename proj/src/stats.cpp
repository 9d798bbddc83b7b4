#include "collarml/stats.hpp"

#include <algorithm>
#include <cmath>

#include "collarml/errors.hpp"

namespace collarml::stats {

double mean(const std::vector<double>& x) {
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance_pop(const std::vector<double>& x) {
    if (x.empty()) return 0.0;
    const double mu = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - mu) * (v - mu);
    return s / static_cast<double>(x.size());
}

double stddev_pop(const std::vector<double>& x) { return std::sqrt(variance_pop(x)); }

double variance_sample(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    const double mu = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - mu) * (v - mu);
    return s / static_cast<double>(x.size() - 1);
}

double stddev_sample(const std::vector<double>& x) { return std::sqrt(variance_sample(x)); }

double quantile(const std::vector<double>& x, double p) {
    if (x.empty()) throw ContractError("quantile of empty vector");
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double rank = (n + 1.0) * p;  // 1-based
    rank = std::clamp(rank, 1.0, n);
    const auto lo = static_cast<std::size_t>(std::floor(rank)) - 1;
    const auto hi = static_cast<std::size_t>(std::ceil(rank)) - 1;
    const double frac = rank - std::floor(rank);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median(const std::vector<double>& x) { return quantile(x, 0.5); }

double skewness(const std::vector<double>& x) {
    if (x.empty()) return 0.0;
    const double mu = mean(x);
    const double sigma = stddev_pop(x);
    if (sigma == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) {
        const double z = (v - mu) / sigma;
        s += z * z * z;
    }
    return s / static_cast<double>(x.size());
}

double kurtosis(const std::vector<double>& x) {
    if (x.empty()) return 0.0;
    const double mu = mean(x);
    const double var = variance_pop(x);
    if (var == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) {
        const double d = v - mu;
        s += d * d * d * d;
    }
    return (s / static_cast<double>(x.size())) / (var * var);
}

double motion_variation(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) s += std::abs(x[i + 1] - x[i]);
    return s / static_cast<double>(x.size());
}

std::vector<double> zscore(std::vector<double> x) {
    const double mu = mean(x);
    const double sigma = stddev_pop(x);
    if (sigma == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return x;
    }
    for (double& v : x) v = (v - mu) / sigma;
    return x;
}

}  // namespace collarml::stats
