#pragma once

// One-sample Kolmogorov-Smirnov statistic against a model CDF, with the
// asymptotic (Brownian bridge) tail probability.

#include <cstddef>
#include <functional>
#include <span>

#include "genlaw/distributions.hpp"

namespace genlaw {

struct KsResult {
    double statistic = 0.0;  // sqrt(n) * sup |F_n - F|
    std::size_t n = 0;
    double p_value = 1.0;
    double max_at = 0.0;  // sample value where the sup is attained
};

/// Prob(sup |B(t)| >= x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2); 1 for x <= 0.
double kolmogorov_tail(double x);

/// The alternating series above truncated after `terms` terms.
double kolmogorov_tail_series(double x, int terms);

/// Throws std::domain_error for an empty sample.
KsResult ks_statistic(std::span<const double> values, const std::function<double(double)>& model_cdf);
KsResult ks_statistic(std::span<const double> log_values, const DensityModel& model);

}  // namespace genlaw
