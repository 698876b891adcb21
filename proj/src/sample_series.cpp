#include "genlaw/sample_series.hpp"

#include <cmath>
#include <stdexcept>

namespace genlaw {

SampleSeries::SampleSeries(std::vector<double> values, Provenance provenance)
    : values_(std::move(values)), provenance_(std::move(provenance)) {
    if (values_.empty()) throw std::domain_error("sample series is empty");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || !(values_[i] > 0.0)) {
            throw std::domain_error("sample series entry " + std::to_string(i) + " = " +
                                    std::to_string(values_[i]) + " is not finite and positive");
        }
    }
}

SampleSeries SampleSeries::from_log_values(std::span<const double> log_values,
                                           Provenance provenance) {
    std::vector<double> v;
    v.reserve(log_values.size());
    for (double l : log_values) v.push_back(std::exp(l));
    provenance.log_input = true;
    return SampleSeries(std::move(v), std::move(provenance));
}

std::vector<double> SampleSeries::log_values() const {
    std::vector<double> out;
    out.reserve(values_.size());
    for (double v : values_) out.push_back(std::log(v));
    return out;
}

double SampleSeries::log_mean() const {
    double sum = 0.0;
    for (double v : values_) sum += std::log(v);
    return sum / static_cast<double>(values_.size());
}

double SampleSeries::log_std() const {
    if (values_.size() < 2) return 0.0;
    const double mean = log_mean();
    double ss = 0.0;
    for (double v : values_) {
        const double d = std::log(v) - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(values_.size() - 1));
}

const char* to_string(Transform t) noexcept {
    switch (t) {
        case Transform::none: return "none";
        case Transform::pairwise_difference: return "diff";
    }
    return "none";
}

}  // namespace genlaw
