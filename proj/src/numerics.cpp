#include "genlaw/numerics.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <stdexcept>
#include <string>

namespace genlaw::numerics {

QuadratureResult simpson_refined(const std::function<double(double)>& f, double a, double b,
                                 std::size_t initial, double rel_tol, double abs_tol,
                                 std::size_t max_intervals) {
    std::size_t n = initial < 2 ? 2 : initial;
    double prev = simpson(f, a, b, n);
    while (n < max_intervals) {
        n *= 2;
        const double next = simpson(f, a, b, n);
        const double diff = std::abs(next - prev);
        if (diff <= rel_tol * std::abs(next) || diff <= abs_tol) return {next, n, true};
        prev = next;
    }
    return {prev, n, false};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

namespace {

// Acklam's rational approximation of the lower-tail normal quantile,
// relative error about 1.15e-9 before polishing.
double acklam_lower(double p) {
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("normal quantile requires 0 < q < 1, got " + std::to_string(q));
    }
    if (q == 0.5) return 0.0;
    // work in the lower tail where the CDF carries full relative precision
    const bool upper = q > 0.5;
    const double p = upper ? 1.0 - q : q;
    double x = acklam_lower(p);
    for (int it = 0; it < 3; ++it) {
        const double dens = normal_pdf(x);
        if (!(dens > 0.0)) break;
        const double step = (normal_cdf(x) - p) / dens;
        x -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return upper ? -x : x;
}

double gamma_one_plus_i_abs(double b) {
    const double t = std::numbers::pi * std::abs(b);
    if (t == 0.0) return 1.0;
    if (t < 20.0) return std::sqrt(t / std::sinh(t));
    const double log_sinh = t - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * t));
    return std::exp(0.5 * (std::log(t) - log_sinh));
}

double sine_integral(double z) {
    if (z < 0.0) return -sine_integral(-z);
    if (z == 0.0) return 0.0;
    constexpr double kAsymptoticFrom = 40.0;
    if (z <= kAsymptoticFrom) {
        const auto sinc = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
        const auto panels = static_cast<std::size_t>(std::ceil(z * 16.0));
        return simpson_refined(sinc, 0.0, z, panels, 1e-15, 1e-14, 1u << 20).value;
    }
    // Si(z) = pi/2 - f(z) cos z - g(z) sin z with the asymptotic series for f and g;
    // beyond z = 40 the smallest term is below 1e-17.
    const double inv2 = 1.0 / (z * z);
    double f = 0.0;
    double g = 0.0;
    double tf = 1.0;  // (2k)! / z^{2k}
    double tg = 1.0;  // (2k+1)! / z^{2k}
    double sign = 1.0;
    for (int k = 0; k < 30; ++k) {
        f += sign * tf;
        g += sign * tg;
        const double nf = tf * (2 * k + 1) * (2 * k + 2) * inv2;
        const double ng = tg * (2 * k + 2) * (2 * k + 3) * inv2;
        if (nf > tf || nf < 1e-18) break;
        tf = nf;
        tg = ng;
        sign = -sign;
    }
    f /= z;
    g *= inv2;
    return std::numbers::pi / 2.0 - f * std::cos(z) - g * std::sin(z);
}

}  // namespace genlaw::numerics
