#include "genlaw/distributions.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <type_traits>

#include "genlaw/numerics.hpp"

namespace genlaw {

namespace {

constexpr double kPi = std::numbers::pi;

// Outward summation of the period translates: stop once a term is below this
// fraction of the running sum, or after kMaxTermsPerSide translates each way.
constexpr double kStopRatio = 1e-18;
constexpr long kMaxTermsPerSide = 5000;

template <class Term>
double sum_outward(Term&& term, long center) {
    double sum = term(center);
    for (const long dir : {1L, -1L}) {
        for (long step = 1; step <= kMaxTermsPerSide; ++step) {
            const double t = term(center + dir * step);
            sum += t;
            if (t <= kStopRatio * sum) break;
        }
    }
    return sum;
}

void require_probability(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("quantile requires 0 < q < 1, got " + std::to_string(q));
    }
}

void require_scale(double scale) {
    if (!(scale > 1.0) || !std::isfinite(scale)) {
        throw std::domain_error("scale factor F must exceed 1, got " + std::to_string(scale));
    }
}

// Uniform on the open interval (0, 1) with 53 random bits.
double open_uniform(std::mt19937_64& gen) {
    return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

// Trigonometric part of the perfect model's wrapped density, i.e. p~(x) - 1/L.
// Only harmonics k with k/L < K survive the triangular transform.
double perfect_periodized_deviation(const PerfectModel& m, double period, double x) {
    const double kl = m.k_support() * period;
    double sum = 0.0;
    for (long k = 1; static_cast<double>(k) < kl; ++k) {
        const double weight = 1.0 - static_cast<double>(k) / kl;
        sum += weight * std::cos(2.0 * kPi * static_cast<double>(k) * x / period);
    }
    return 2.0 * sum / period;
}

double periodized_deviation(const DensityModel& model, double period, double x) {
    if (const auto* perfect = std::get_if<PerfectModel>(&model)) {
        return perfect_periodized_deviation(*perfect, period, x);
    }
    return periodized_value(model, period, x) - 1.0 / period;
}

}  // namespace

// --- normal -----------------------------------------------------------------

NormalLogModel::NormalLogModel(double mu, double sigma) : mu_(mu), sigma_(sigma) {
    if (!std::isfinite(mu)) throw std::domain_error("normal model: mu must be finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::domain_error("normal model: sigma must be positive, got " +
                                std::to_string(sigma));
    }
}

double NormalLogModel::pdf(double x) const { return numerics::normal_pdf((x - mu_) / sigma_) / sigma_; }

double NormalLogModel::cdf(double x) const { return numerics::normal_cdf((x - mu_) / sigma_); }

double NormalLogModel::quantile(double q) const {
    require_probability(q);
    return mu_ + sigma_ * numerics::normal_quantile(q);
}

double NormalLogModel::interval_probability(double a, double b) const {
    const double za = (a - mu_) / sigma_;
    const double zb = (b - mu_) / sigma_;
    if (za >= 0.0) return numerics::normal_sf(za) - numerics::normal_sf(zb);
    return numerics::normal_cdf(zb) - numerics::normal_cdf(za);
}

double NormalLogModel::fourier_magnitude(double y) const {
    return std::exp(-2.0 * kPi * kPi * sigma_ * sigma_ * y * y);
}

// --- reflected Gumbel -------------------------------------------------------

GumbelLogModel::GumbelLogModel(double mu, double beta) : mu_(mu), beta_(beta) {
    if (!std::isfinite(mu)) throw std::domain_error("gumbel model: mu must be finite");
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::domain_error("gumbel model: beta must be positive, got " +
                                std::to_string(beta));
    }
}

double GumbelLogModel::pdf(double x) const {
    const double z = (x - mu_) / beta_;
    return std::exp(z - std::exp(z)) / beta_;
}

double GumbelLogModel::cdf(double x) const {
    return -std::expm1(-std::exp((x - mu_) / beta_));
}

double GumbelLogModel::quantile(double q) const {
    require_probability(q);
    return mu_ + beta_ * std::log(-std::log1p(-q));
}

double GumbelLogModel::interval_probability(double a, double b) const {
    const double za = (a - mu_) / beta_;
    const double zb = (b - mu_) / beta_;
    if (zb <= 0.0) return std::expm1(-std::exp(za)) - std::expm1(-std::exp(zb));
    return std::exp(-std::exp(za)) - std::exp(-std::exp(zb));
}

double GumbelLogModel::fourier_magnitude(double y) const {
    return numerics::gamma_one_plus_i_abs(2.0 * kPi * beta_ * y);
}

// --- perfect (sinc^2) ---------------------------------------------------------

PerfectModel::PerfectModel(double k_support) : k_(k_support) {
    if (!(k_support > 0.0) || !std::isfinite(k_support)) {
        throw std::domain_error("perfect model: K must be positive, got " +
                                std::to_string(k_support));
    }
}

double PerfectModel::pdf(double x) const {
    if (x == 0.0) return k_;
    const double s = std::sin(kPi * k_ * x) / (kPi * x);
    return s * s / k_;
}

double PerfectModel::cdf(double x) const {
    const double big_x = kPi * k_ * x;
    if (big_x == 0.0) return 0.5;
    const double s = std::sin(big_x);
    return 0.5 + (numerics::sine_integral(2.0 * big_x) - s * s / big_x) / kPi;
}

double PerfectModel::quantile(double q) const {
    require_probability(q);
    if (q == 0.5) return 0.0;
    // bracket then bisect; the CDF has no closed-form inverse
    double lo = -1.0 / k_;
    double hi = 1.0 / k_;
    while (cdf(lo) > q) lo *= 2.0;
    while (cdf(hi) < q) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo + hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double PerfectModel::fourier_magnitude(double y) const {
    return std::max(0.0, 1.0 - std::abs(y) / k_);
}

// --- variant dispatch ---------------------------------------------------------

double density(const DensityModel& model, double x) {
    return std::visit([x](const auto& m) { return m.pdf(x); }, model);
}

double cdf(const DensityModel& model, double x) {
    return std::visit([x](const auto& m) { return m.cdf(x); }, model);
}

double quantile(const DensityModel& model, double q) {
    return std::visit([q](const auto& m) { return m.quantile(q); }, model);
}

double fourier_magnitude(const DensityModel& model, double y) {
    return std::visit([y](const auto& m) { return m.fourier_magnitude(y); }, model);
}

const char* model_name(const DensityModel& model) {
    switch (model.index()) {
        case 0: return "normal";
        case 1: return "gumbel";
        default: return "perfect";
    }
}

std::string describe(const DensityModel& model) {
    char buf[128];
    std::visit(
        [&buf](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NormalLogModel>) {
                std::snprintf(buf, sizeof buf, "normal(mu=%.6g, sigma=%.6g)", m.mu(), m.sigma());
            } else if constexpr (std::is_same_v<T, GumbelLogModel>) {
                std::snprintf(buf, sizeof buf, "gumbel(mu=%.6g, beta=%.6g)", m.mu(), m.beta());
            } else {
                std::snprintf(buf, sizeof buf, "perfect(K=%.6g)", m.k_support());
            }
        },
        model);
    return buf;
}

// --- Weibull and fitting --------------------------------------------------------

double WeibullParams::pdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    const double t = x / lambda;
    return k / lambda * std::pow(t, k - 1.0) * std::exp(-std::pow(t, k));
}

double WeibullParams::cdf(double x) const {
    if (!(x > 0.0)) return 0.0;
    return -std::expm1(-std::pow(x / lambda, k));
}

NormalLogModel fit_normal(double log_mean, double log_std) {
    if (!(log_std > 0.0)) {
        throw std::domain_error("fit_normal requires a positive standard deviation");
    }
    return {log_mean, log_std};
}

GumbelLogModel fit_gumbel(double log_mean, double log_std) {
    if (!(log_std > 0.0)) {
        throw std::domain_error("fit_gumbel requires a positive standard deviation");
    }
    const double beta = log_std * std::sqrt(6.0) / kPi;
    return {log_mean + beta * kEulerGamma, beta};
}

WeibullParams weibull_of_gumbel(const GumbelLogModel& model) {
    return {std::exp(model.mu()), 1.0 / model.beta()};
}

// --- periodization -------------------------------------------------------------

double periodized_value(const DensityModel& model, double period, double x) {
    if (!(period > 0.0)) throw std::domain_error("period must be positive");
    if (std::holds_alternative<PerfectModel>(model)) {
        return 1.0 / period + periodized_deviation(model, period, x);
    }
    const double mode = std::visit([](const auto& m) { return m.mode(); }, model);
    const auto center = std::lround((mode - x) / period);
    return std::visit(
        [&](const auto& m) {
            return sum_outward(
                [&](long j) { return m.pdf(x + static_cast<double>(j) * period); }, center);
        },
        model);
}

double PeriodizedDensity::period_integral() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * period / static_cast<double>(values.size());
}

double PeriodizedDensity::spread() const {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *hi - *lo;
}

PeriodizedDensity periodize(const DensityModel& model, double scale, std::size_t resolution) {
    require_scale(scale);
    if (resolution < 16) throw std::domain_error("periodize needs at least 16 grid points");
    PeriodizedDensity out{model, std::log(scale), std::vector<double>(resolution)};
    for (std::size_t i = 0; i < resolution; ++i) {
        out.values[i] = periodized_value(model, out.period, out.x_at(i));
    }
    return out;
}

std::vector<double> model_probs(const DensityModel& model, const LawParams& params) {
    const double period = params.log_scale();
    const int bins = params.bins();
    std::vector<double> probs(static_cast<std::size_t>(bins));

    std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
    for (int d = 1; d <= bins + 1; ++d) {
        edges[static_cast<std::size_t>(d - 1)] = std::log(params.cell_lower(d));
    }
    edges.back() = period;

    if (const auto* perfect = std::get_if<PerfectModel>(&model)) {
        const auto f = [&](double x) {
            return 1.0 / period + perfect_periodized_deviation(*perfect, period, x);
        };
        for (int d = 0; d < bins; ++d) {
            const double a = edges[static_cast<std::size_t>(d)];
            const double b = edges[static_cast<std::size_t>(d) + 1];
            const auto intervals = std::max<std::size_t>(
                16, static_cast<std::size_t>(std::ceil(4096.0 * (b - a) / period)));
            probs[static_cast<std::size_t>(d)] =
                numerics::simpson_refined(f, a, b, intervals, 1e-10, 1e-300).value;
        }
        return probs;
    }

    std::visit(
        [&](const auto& m) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(m)>, PerfectModel>) {
                for (int d = 0; d < bins; ++d) {
                    const double a = edges[static_cast<std::size_t>(d)];
                    const double b = edges[static_cast<std::size_t>(d) + 1];
                    const auto center = std::lround((m.mode() - 0.5 * (a + b)) / period);
                    probs[static_cast<std::size_t>(d)] = sum_outward(
                        [&](long j) {
                            const double shift = static_cast<double>(j) * period;
                            return m.interval_probability(a + shift, b + shift);
                        },
                        center);
                }
            }
        },
        model);
    return probs;
}

double integral_bound(const DensityModel& model, double scale) {
    require_scale(scale);
    const double period = std::log(scale);
    const auto integrand = [&](double x) {
        const double dev = periodized_deviation(model, period, x);
        return std::exp(-x) * dev * dev;
    };
    // the squared deviation of a sum of O(1) terms carries ~1e-32 of rounding noise
    const auto result = numerics::simpson_refined(integrand, 0.0, period, 4096, 1e-10, 1e-30);
    return (scale - 1.0) * result.value;
}

double perfect_deviation(const DensityModel& model, double scale, int j_max) {
    require_scale(scale);
    if (j_max < 1) throw std::domain_error("perfect_deviation needs j_max >= 1");
    const double period = std::log(scale);
    double worst = 0.0;
    for (int j = 1; j <= j_max; ++j) {
        worst = std::max(worst, fourier_magnitude(model, static_cast<double>(j) / period));
    }
    return worst;
}

// --- sampling -------------------------------------------------------------------

std::vector<double> sample(const DensityModel& model, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::domain_error("sample size must be at least 1");
    std::mt19937_64 gen(seed);
    std::vector<double> out;
    out.reserve(n);

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NormalLogModel>) {
                // Box-Muller, both variates of each pair used
                while (out.size() < n) {
                    const double r = std::sqrt(-2.0 * std::log(open_uniform(gen)));
                    const double theta = 2.0 * kPi * open_uniform(gen);
                    out.push_back(m.mu() + m.sigma() * r * std::cos(theta));
                    if (out.size() < n) out.push_back(m.mu() + m.sigma() * r * std::sin(theta));
                }
            } else if constexpr (std::is_same_v<T, GumbelLogModel>) {
                while (out.size() < n) out.push_back(m.quantile(open_uniform(gen)));
            } else {
                // Rejection from the envelope g(x) = min(K, 1/(K pi^2 x^2)), total mass 4/pi,
                // split evenly between the flat core |x| < x0 and the 1/x^2 tails;
                // acceptance rate pi/4.
                const double k = m.k_support();
                const double x0 = 1.0 / (k * kPi);
                while (out.size() < n) {
                    const double side = open_uniform(gen) < 0.5 ? -1.0 : 1.0;
                    double x = 0.0;
                    double envelope = k;
                    if (open_uniform(gen) < 0.5) {
                        x = side * x0 * open_uniform(gen);
                    } else {
                        x = side * x0 / open_uniform(gen);
                        envelope = 1.0 / (k * kPi * kPi * x * x);
                    }
                    if (open_uniform(gen) * envelope <= m.pdf(x)) out.push_back(x);
                }
            }
        },
        model);
    return out;
}

}  // namespace genlaw
