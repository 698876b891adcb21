#pragma once

// Truncated-range variability R_delta = max / min after trimming the delta
// fraction of smallest and largest terms, and the compliance expectation
// derived from it.

#include <cstddef>
#include <span>
#include <vector>

#include "genlaw/law.hpp"
#include "genlaw/sample_series.hpp"

namespace genlaw {

inline constexpr double kDefaultDelta = 0.01;
/// log_F R_{0.01} at or above this predicts close agreement with the law.
inline constexpr double kComplianceThreshold = 3.0;
/// "length >> D" is taken as length >= 100 D.
inline constexpr std::size_t kLengthPerBin = 100;

struct VariabilityResult {
    double delta = kDefaultDelta;
    double r_delta = 1.0;
    double log_f_r = 0.0;
    std::size_t n_removed_each_side = 0;
    bool meets_threshold = false;

    friend bool operator==(const VariabilityResult&, const VariabilityResult&) = default;
};

struct ComplianceExpectation {
    double log_f_r = 0.0;
    bool meets_threshold = false;
    bool long_enough = false;
    bool expected_close = false;  // both of the above
};

/// Sorted copy of s with k = floor(delta n) entries removed from each end.
/// Throws std::domain_error for delta outside (0, 0.5), empty s, or k that
/// would leave nothing.
std::vector<double> truncate(std::span<const double> s, double delta);
SampleSeries truncate(const SampleSeries& s, double delta);

double r_delta(std::span<const double> s, double delta);

VariabilityResult variability(const LawParams& params, std::span<const double> s,
                              double delta = kDefaultDelta);

ComplianceExpectation compliance_expectation(const LawParams& params, double r_delta_value,
                                             std::size_t n);
ComplianceExpectation compliance_expectation(const LawParams& params, std::span<const double> s);

}  // namespace genlaw
