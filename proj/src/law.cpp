#include "genlaw/law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace genlaw {

namespace {

void check_rank_index(const LawParams& params, int d) {
    if (d < 1 || d > params.bins()) {
        throw std::domain_error("rank index " + std::to_string(d) + " outside 1.." +
                                std::to_string(params.bins()));
    }
}

// x * F^k with a single rounding whenever F^|k| is representable.
double scale_by_power(double x, double scale, long k) {
    const long a = k < 0 ? -k : k;
    const double p = std::pow(scale, static_cast<double>(a));
    if (std::isfinite(p) && p > 0.0) {
        return k >= 0 ? x * p : x / p;
    }
    const long h = a / 2;
    const double p1 = std::pow(scale, static_cast<double>(h));
    const double p2 = std::pow(scale, static_cast<double>(a - h));
    return k >= 0 ? x * p1 * p2 : x / p1 / p2;
}

}  // namespace

LawParams::LawParams(double scale, int bins) : scale_(scale), bins_(bins), log_scale_(0.0) {
    if (!(scale > 1.0) || !(scale <= kMaxScale)) {
        throw std::domain_error("scale factor F must satisfy 1 < F <= 1e6, got " +
                                std::to_string(scale));
    }
    if (bins < 2 || bins > kMaxBins) {
        throw std::domain_error("bin count D must satisfy 2 <= D <= 1e6, got " +
                                std::to_string(bins));
    }
    log_scale_ = std::log1p(scale - 1.0);
}

double LawParams::cell_lower(int d) const noexcept {
    if (d > bins_) return scale_;
    return 1.0 + static_cast<double>(d - 1) * (scale_ - 1.0) / bins_;
}

double law_value(const LawParams& params, int d) {
    check_rank_index(params, d);
    const double step = (params.scale() - 1.0) / params.bins();
    // ratio of consecutive cell endpoints is 1 + step / (1 + (d-1) step)
    const double rel = step / (1.0 + static_cast<double>(d - 1) * step);
    return std::log1p(rel) / params.log_scale();
}

std::vector<double> law_vector(const LawParams& params) {
    std::vector<double> out(static_cast<std::size_t>(params.bins()));
    for (int d = 1; d <= params.bins(); ++d) {
        out[static_cast<std::size_t>(d - 1)] = law_value(params, d);
    }
    return out;
}

int rank(const LawParams& params, double x) {
    if (!std::isfinite(x) || !(x > 0.0)) {
        throw std::domain_error("rank requires a finite positive value, got " + std::to_string(x));
    }
    const double scale = params.scale();
    const int bins = params.bins();

    long e = static_cast<long>(std::floor(std::log(x) / params.log_scale()));
    double m = scale_by_power(x, scale, -e);
    // The log estimate of the exponent can be off by one near exact powers of F.
    for (int guard = 0; guard < 4 && m >= scale; ++guard) m = scale_by_power(x, scale, -(++e));
    for (int guard = 0; guard < 4 && m < 1.0; ++guard) m = scale_by_power(x, scale, -(--e));

    int d = 1 + static_cast<int>(std::floor((m - 1.0) * bins / (scale - 1.0)));
    d = std::clamp(d, 1, bins);
    // half-open correction against the exact cell endpoints used everywhere else
    while (d > 1 && m < params.cell_lower(d)) --d;
    while (d < bins && m >= params.cell_lower(d + 1)) ++d;
    return d;
}

std::vector<double> RankHistogram::frequencies() const {
    std::vector<double> out(counts.size(), 0.0);
    if (n == 0) return out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    }
    return out;
}

RankHistogram& RankHistogram::merge(const RankHistogram& other) {
    if (!(params == other.params)) {
        throw std::domain_error("cannot merge histograms with different (F, D)");
    }
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    n += other.n;
    return *this;
}

RankHistogram histogram(const LawParams& params, std::span<const double> values) {
    if (values.empty()) throw std::domain_error("histogram of an empty series");
    RankHistogram h{params, std::vector<std::uint64_t>(static_cast<std::size_t>(params.bins()), 0),
                    0};
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = values[i];
        if (!std::isfinite(x) || !(x > 0.0)) {
            throw std::domain_error("non-positive or non-finite value " + std::to_string(x) +
                                    " at index " + std::to_string(i));
        }
        ++h.counts[static_cast<std::size_t>(rank(params, x) - 1)];
    }
    h.n = values.size();
    return h;
}

double ssd(const LawParams& params, std::span<const double> observed) {
    if (observed.size() != static_cast<std::size_t>(params.bins())) {
        throw std::domain_error("observed vector has length " + std::to_string(observed.size()) +
                                ", expected D = " + std::to_string(params.bins()));
    }
    constexpr double kSlack = 1e-12;
    double sum = 0.0;
    for (int d = 1; d <= params.bins(); ++d) {
        const double p = observed[static_cast<std::size_t>(d - 1)];
        if (!(p >= -kSlack && p <= 1.0 + kSlack)) {
            throw std::domain_error("observed probability " + std::to_string(p) + " at rank " +
                                    std::to_string(d) + " outside [0, 1]");
        }
        const double diff = p - law_value(params, d);
        sum += diff * diff;
    }
    return sum;
}

double flat_ssd(const LawParams& params) {
    double sum_sq = 0.0;
    for (int d = 1; d <= params.bins(); ++d) {
        const double l = law_value(params, d);
        sum_sq += l * l;
    }
    return params.bins() * sum_sq - 1.0;
}

double s_of_f(double scale) {
    if (!(scale > 1.0) || !std::isfinite(scale)) {
        throw std::domain_error("S(F) requires F > 1, got " + std::to_string(scale));
    }
    const double u = scale - 1.0;
    const double l = std::log1p(u);
    return (u / l) * (u / l) / scale;
}

LawBounds law_bounds(const LawParams& params, int d) {
    check_rank_index(params, d);
    const double u = params.scale() - 1.0;
    const double mean_slope = u / params.log_scale();
    const double D = params.bins();
    return {mean_slope / (1.0 + d * u / D) / D, mean_slope / (1.0 + (d - 1) * u / D) / D};
}

}  // namespace genlaw
