#include "genlaw/goodness_of_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace genlaw {

double kolmogorov_tail_series(double x, int terms) {
    double sum = 0.0;
    for (int k = 1; k <= terms; ++k) {
        const double t = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1) ? t : -t;
    }
    return 2.0 * sum;
}

double kolmogorov_tail(double x) {
    if (!(x > 0.0)) return 1.0;
    if (x < 1.0) {
        // Jacobi-theta form of the CDF, rapidly convergent for small x:
        // P(K <= x) = sqrt(2 pi)/x * sum_{k>=1} exp(-(2k-1)^2 pi^2 / (8 x^2))
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
        double sum = 0.0;
        for (int k = 1; k < 100; ++k) {
            const double m = 2.0 * k - 1.0;
            const double t = std::exp(-m * m * c);
            sum += t;
            if (t < 1e-18 * sum) break;
        }
        const double lower = std::sqrt(2.0 * std::numbers::pi) / x * sum;
        return std::clamp(1.0 - lower, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) {
        const double t = std::exp(-2.0 * k * k * x * x);
        if (t < 1e-18 * sum || t == 0.0) break;
        sum += (k % 2 == 1) ? t : -t;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_statistic(std::span<const double> values,
                      const std::function<double(double)>& model_cdf) {
    if (values.empty()) throw std::domain_error("KS statistic of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());

    KsResult out;
    out.n = sorted.size();
    double sup = -1.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = model_cdf(sorted[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        const double gap = std::max(std::abs(above), std::abs(below));
        if (gap > sup) {
            sup = gap;
            out.max_at = sorted[i];
        }
    }
    out.statistic = std::sqrt(n) * sup;
    out.p_value = kolmogorov_tail(out.statistic);
    return out;
}

KsResult ks_statistic(std::span<const double> log_values, const DensityModel& model) {
    return ks_statistic(log_values, [&model](double x) { return cdf(model, x); });
}

}  // namespace genlaw
