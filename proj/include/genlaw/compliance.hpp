#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genlaw/law.hpp"
#include "genlaw/variability.hpp"

namespace genlaw {

enum class ReportKind { law, data, model };

/// Law values against observed frequencies or model probabilities for one (F, D).
struct ComplianceReport {
    ReportKind kind = ReportKind::law;
    std::string label;
    LawParams params{2.0, 5};
    std::vector<double> law;
    std::vector<double> observed;
    std::vector<double> deviations;  // observed - law
    double ssd = 0.0;

    // data diagnostics
    std::optional<std::uint64_t> n;
    std::optional<double> log_mean;
    std::optional<double> log_std;
    std::optional<VariabilityResult> variability;
    std::optional<bool> long_enough;
    std::optional<bool> expected_close;

    // model diagnostics
    std::optional<double> integral_bound;
    std::optional<double> perfect_deviation;

    friend bool operator==(const ComplianceReport&, const ComplianceReport&) = default;
};

/// Fills law, deviations and ssd from `observed`.
ComplianceReport make_report(ReportKind kind, std::string label, const LawParams& params,
                             std::vector<double> observed);

const char* to_string(ReportKind kind) noexcept;

}  // namespace genlaw
