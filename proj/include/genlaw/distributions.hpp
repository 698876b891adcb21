#pragma once

// Continuous models for ln X and their ln F-periodization.
//
// A positive random variable X obeys the generalized law exactly when the
// density of ln X, wrapped onto one period of length ln F, is constant. The
// rank probabilities of X are integrals of the wrapped density over the
// log-cells [ln r_d, ln r_{d+1}), r_d = 1 + (d-1)(F-1)/D.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "genlaw/law.hpp"

namespace genlaw {

inline constexpr double kEulerGamma = std::numbers::egamma;

/// ln X ~ Normal(mu, sigma).
class NormalLogModel {
public:
    NormalLogModel(double mu, double sigma);

    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }
    double mode() const noexcept { return mu_; }
    double mean() const noexcept { return mu_; }
    double stddev() const noexcept { return sigma_; }

    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double q) const;
    /// P(a <= ln X < b), computed from whichever tail keeps precision.
    double interval_probability(double a, double b) const;
    /// |p^(y)| = exp(-2 pi^2 sigma^2 y^2).
    double fourier_magnitude(double y) const;

    friend bool operator==(const NormalLogModel&, const NormalLogModel&) = default;

private:
    double mu_;
    double sigma_;
};

/// ln X ~ reflected (minimum) Gumbel: p(x) = exp(z - e^z) / beta, z = (x - mu) / beta.
/// mu is the mode; the mean is mu - beta * gamma and the standard deviation pi beta / sqrt 6.
class GumbelLogModel {
public:
    GumbelLogModel(double mu, double beta);

    double mu() const noexcept { return mu_; }
    double beta() const noexcept { return beta_; }
    double mode() const noexcept { return mu_; }
    double mean() const noexcept { return mu_ - beta_ * kEulerGamma; }
    double stddev() const noexcept { return std::numbers::pi * beta_ / std::sqrt(6.0); }

    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double q) const;
    double interval_probability(double a, double b) const;
    /// |p^(y)| = |Gamma(1 - 2 pi i beta y)|.
    double fourier_magnitude(double y) const;

    friend bool operator==(const GumbelLogModel&, const GumbelLogModel&) = default;

private:
    double mu_;
    double beta_;
};

/// ln X with density (1/K) (sin(pi K x) / (pi x))^2, whose Fourier transform is
/// the triangle max(0, 1 - |y|/K). X is F-perfect whenever ln F <= 1/K.
class PerfectModel {
public:
    explicit PerfectModel(double k_support);

    double k_support() const noexcept { return k_; }
    double mode() const noexcept { return 0.0; }

    double pdf(double x) const;
    /// 1/2 + (Si(2 pi K x) - sin^2(pi K x) / (pi K x)) / pi.
    double cdf(double x) const;
    double quantile(double q) const;
    double fourier_magnitude(double y) const;

    friend bool operator==(const PerfectModel&, const PerfectModel&) = default;

private:
    double k_;
};

using DensityModel = std::variant<NormalLogModel, GumbelLogModel, PerfectModel>;

double density(const DensityModel& model, double x);
double cdf(const DensityModel& model, double x);
/// Throws std::domain_error unless 0 < q < 1.
double quantile(const DensityModel& model, double q);
double fourier_magnitude(const DensityModel& model, double y);
/// "normal", "gumbel" or "perfect".
const char* model_name(const DensityModel& model);
/// Name with parameters, e.g. "normal(mu=7.217, sigma=1.8316)".
std::string describe(const DensityModel& model);

/// Weibull(lambda, k) on x > 0: q(x) = (k/lambda)(x/lambda)^{k-1} exp(-(x/lambda)^k).
struct WeibullParams {
    double lambda;
    double k;

    double pdf(double x) const;
    double cdf(double x) const;
};

/// Method of moments on ln-data: identity mapping. Throws if log_std <= 0.
NormalLogModel fit_normal(double log_mean, double log_std);
/// beta = log_std sqrt(6) / pi, mu = log_mean + beta gamma. Throws if log_std <= 0.
GumbelLogModel fit_gumbel(double log_mean, double log_std);

/// exp of a reflected-Gumbel variable is Weibull with k = 1/beta and lambda = e^mu.
WeibullParams weibull_of_gumbel(const GumbelLogModel& model);

/// p~(x) = sum_j p(x + j period).
double periodized_value(const DensityModel& model, double period, double x);

struct PeriodizedDensity {
    DensityModel model;
    double period;
    std::vector<double> values;  // p~ at x_i = i * period / values.size()

    double x_at(std::size_t i) const {
        return static_cast<double>(i) * period / static_cast<double>(values.size());
    }
    /// Periodic trapezoid rule over one period; 1 for a normalized density.
    double period_integral() const;
    /// max - min of the sampled values.
    double spread() const;
    double mean_level() const { return 1.0 / period; }
};

/// Samples p~ on a uniform grid of [0, ln F). Throws for F <= 1 or resolution < 16.
PeriodizedDensity periodize(const DensityModel& model, double scale, std::size_t resolution);

/// Prob(R_{F,D}(X) = d) for d = 1..D.
std::vector<double> model_probs(const DensityModel& model, const LawParams& params);

/// (F-1) * integral over [0, ln F) of e^{-x} (p~(x) - 1/ln F)^2. Dominates
/// D * E_{F,D}(X) for every D and is its limit as D grows.
double integral_bound(const DensityModel& model, double scale);

/// max_{1 <= j <= j_max} |p^(j / ln F)|; zero iff F-perfect up to j_max harmonics.
double perfect_deviation(const DensityModel& model, double scale, int j_max);

/// n reproducible draws of ln X.
std::vector<double> sample(const DensityModel& model, std::size_t n, std::uint64_t seed);

}  // namespace genlaw
