#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace genlaw {

enum class Transform { none, pairwise_difference };

struct SeriesProvenance {
    std::string source;
    std::string column;
    Transform transform = Transform::none;
    bool log_input = false;      // file held ln-values, exponentiated on ingest
    std::size_t skipped = 0;     // rows dropped as non-numeric or non-positive
};

/// A validated sequence of finite positive values with provenance.
class SampleSeries {
public:
    using Provenance = SeriesProvenance;

    /// Throws std::domain_error when empty or when any entry is not finite and > 0.
    explicit SampleSeries(std::vector<double> values, Provenance provenance = {});

    /// Builds a series from ln-space values by exponentiating them.
    static SampleSeries from_log_values(std::span<const double> log_values,
                                        Provenance provenance = {});

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const Provenance& provenance() const noexcept { return provenance_; }

    std::vector<double> log_values() const;
    double log_mean() const;
    /// Sample (n-1) standard deviation of ln s; 0 for a single value.
    double log_std() const;

private:
    std::vector<double> values_;
    Provenance provenance_;
};

const char* to_string(Transform t) noexcept;

}  // namespace genlaw
