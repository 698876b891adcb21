#pragma once

// Orchestration and rendering: per-F compliance reports for data, models and
// the bare law, and their table / json / csv / plot-data renderings.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "genlaw/compliance.hpp"
#include "genlaw/distributions.hpp"
#include "genlaw/goodness_of_fit.hpp"
#include "genlaw/sample_series.hpp"

namespace genlaw {

enum class ModelKind { normal, gumbel, perfect };
enum class OutputFormat { table, json, csv };

struct RunConfig {
    std::vector<double> f_list{2.0, 8.0, 32.0};
    int d = 5;
    double delta = kDefaultDelta;
    /// In analyze: also fit this model to the data by moments and report it.
    std::optional<ModelKind> model;
    int j_max = 50;
    OutputFormat format = OutputFormat::table;
    std::optional<std::string> plot_prefix;
    std::size_t plot_points = 10000;
};

class WriteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws std::domain_error for an empty f_list, any F <= 1, or d < 2.
void validate(const RunConfig& config);

/// Law rows only, one report per F.
std::vector<ComplianceReport> law_report(const RunConfig& config);

/// Per F: observed rank frequencies with variability diagnostics, followed by
/// the fitted model's report when config.model is set.
std::vector<ComplianceReport> analyze(const SampleSeries& s, const RunConfig& config);

/// Per F: model probabilities, integral bound and perfect deviation.
std::vector<ComplianceReport> model_report(const DensityModel& model, const RunConfig& config);

/// Moment fit of `kind` to the ln-values of s. Perfect models cannot be fitted.
DensityModel fit_model(ModelKind kind, const SampleSeries& s);

void emit(std::span<const ComplianceReport> reports, OutputFormat format, std::ostream& out);
/// Throws WriteError when the destination cannot be written.
void emit_to_file(std::span<const ComplianceReport> reports, OutputFormat format,
                  const std::filesystem::path& path);

nlohmann::json to_json(const ComplianceReport& report);
ComplianceReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(std::span<const ComplianceReport> reports);
std::vector<ComplianceReport> reports_from_json(const nlohmann::json& j);

nlohmann::json to_json(const KsResult& ks);

/// Rows "x<TAB>p~(x)" over one period. Throws WriteError.
void write_periodized_plot(const PeriodizedDensity& density, const std::filesystem::path& path);
/// Rows "x<TAB>empirical CDF<TAB>model CDF" at each sorted sample value. Throws WriteError.
void write_cdf_plot(std::span<const double> log_values, const DensityModel& model,
                    const std::filesystem::path& path);

std::optional<ModelKind> parse_model_kind(std::string_view name);
std::optional<OutputFormat> parse_output_format(std::string_view name);

}  // namespace genlaw
