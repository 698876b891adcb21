#pragma once

// Numerical building blocks shared by the distribution models.

#include <cmath>
#include <cstddef>
#include <functional>

namespace genlaw::numerics {

/// Composite Simpson rule on `intervals` subintervals (rounded up to even).
template <class Fn>
double simpson(Fn&& f, double a, double b, std::size_t intervals) {
    if (intervals < 2) intervals = 2;
    if (intervals % 2 != 0) ++intervals;
    const double h = (b - a) / static_cast<double>(intervals);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < intervals; ++i) {
        const double v = f(a + static_cast<double>(i) * h);
        (i % 2 != 0 ? odd : even) += v;
    }
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

struct QuadratureResult {
    double value;
    std::size_t intervals;
    bool converged;
};

/// Composite Simpson, doubling the subinterval count from `initial` until two
/// successive estimates agree to `rel_tol` (or to `abs_tol` absolutely).
QuadratureResult simpson_refined(const std::function<double(double)>& f, double a, double b,
                                 std::size_t initial = 4096, double rel_tol = 1e-10,
                                 double abs_tol = 1e-300, std::size_t max_intervals = 1u << 22);

/// Standard normal CDF, accurate in both tails.
double normal_cdf(double z);
/// Standard normal upper tail 1 - Phi(z).
double normal_sf(double z);
double normal_pdf(double z);

/// Inverse standard normal CDF: rational approximation polished by Newton
/// steps on the CDF. Throws std::domain_error outside (0, 1).
double normal_quantile(double q);

/// |Gamma(1 + i b)| for real b, from |Gamma(1+ib)|^2 = pi b / sinh(pi b).
double gamma_one_plus_i_abs(double b);

/// Sine integral Si(z) = integral_0^z sin(t)/t dt.
double sine_integral(double z);

}  // namespace genlaw::numerics
