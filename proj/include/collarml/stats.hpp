#pragma once

#include <vector>

namespace collarml::stats {

double mean(const std::vector<double>& x);
double variance_pop(const std::vector<double>& x);  // divisor N
double stddev_pop(const std::vector<double>& x);
double variance_sample(const std::vector<double>& x);  // divisor N-1
double stddev_sample(const std::vector<double>& x);
double median(const std::vector<double>& x);

// Order-statistic quantile with the (N+1)p rank convention, interpolating
// fractional ranks and clamping to the data range.
double quantile(const std::vector<double>& x, double p);

// gamma = (1/N) sum ((x - mu)/sigma)^3; 0 when sigma == 0.
double skewness(const std::vector<double>& x);

// Non-excess kurtosis: ((1/N) sum (x - mu)^4) / V^2; 0 when V == 0.
double kurtosis(const std::vector<double>& x);

// Mean absolute successive difference: (1/M) sum_{i=1}^{M-1} |x_{i+1} - x_i|.
double motion_variation(const std::vector<double>& x);

// In-place z-score; a zero-variance input becomes all zeros.
std::vector<double> zscore(std::vector<double> x);

}  // namespace collarml::stats
