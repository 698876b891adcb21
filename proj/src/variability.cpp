#include "genlaw/variability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace genlaw {

namespace {

std::size_t trim_count(std::size_t n, double delta) {
    if (!(delta > 0.0 && delta < 0.5)) {
        throw std::domain_error("truncation fraction must lie in (0, 0.5), got " +
                                std::to_string(delta));
    }
    if (n == 0) throw std::domain_error("cannot truncate an empty series");
    const auto k = static_cast<std::size_t>(std::floor(delta * static_cast<double>(n)));
    if (2 * k >= n) {
        throw std::domain_error("truncating " + std::to_string(k) + " from each end of " +
                                std::to_string(n) + " values leaves nothing");
    }
    return k;
}

}  // namespace

std::vector<double> truncate(std::span<const double> s, double delta) {
    const std::size_t k = trim_count(s.size(), delta);
    std::vector<double> sorted(s.begin(), s.end());
    std::stable_sort(sorted.begin(), sorted.end());
    return {sorted.begin() + static_cast<std::ptrdiff_t>(k),
            sorted.end() - static_cast<std::ptrdiff_t>(k)};
}

SampleSeries truncate(const SampleSeries& s, double delta) {
    return SampleSeries(truncate(s.values(), delta), s.provenance());
}

double r_delta(std::span<const double> s, double delta) {
    const std::size_t k = trim_count(s.size(), delta);
    std::vector<double> v(s.begin(), s.end());
    // only the order statistics k and n-1-k are needed
    const auto lo = v.begin() + static_cast<std::ptrdiff_t>(k);
    const auto hi = v.end() - 1 - static_cast<std::ptrdiff_t>(k);
    std::nth_element(v.begin(), lo, v.end());
    const double min_v = *lo;
    std::nth_element(lo, hi, v.end());
    const double max_v = *hi;
    if (!(min_v > 0.0)) throw std::domain_error("R_delta requires positive values");
    return max_v / min_v;
}

VariabilityResult variability(const LawParams& params, std::span<const double> s, double delta) {
    VariabilityResult out;
    out.delta = delta;
    out.n_removed_each_side = trim_count(s.size(), delta);
    out.r_delta = r_delta(s, delta);
    out.log_f_r = std::log(out.r_delta) / params.log_scale();
    out.meets_threshold = out.log_f_r >= kComplianceThreshold;
    return out;
}

ComplianceExpectation compliance_expectation(const LawParams& params, double r_delta_value,
                                             std::size_t n) {
    if (!(r_delta_value >= 1.0)) {
        throw std::domain_error("R_delta must be >= 1, got " + std::to_string(r_delta_value));
    }
    ComplianceExpectation out;
    out.log_f_r = std::log(r_delta_value) / params.log_scale();
    out.meets_threshold = out.log_f_r >= kComplianceThreshold;
    out.long_enough = n >= kLengthPerBin * static_cast<std::size_t>(params.bins());
    out.expected_close = out.meets_threshold && out.long_enough;
    return out;
}

ComplianceExpectation compliance_expectation(const LawParams& params, std::span<const double> s) {
    return compliance_expectation(params, r_delta(s, kDefaultDelta), s.size());
}

}  // namespace genlaw
