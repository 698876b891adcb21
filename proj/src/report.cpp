#include "genlaw/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>

namespace genlaw {

namespace {

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

// Evaluates fn(F) for every F concurrently; results keep f_list order.
template <class Fn>
auto per_scale(const std::vector<double>& f_list, Fn fn) {
    using Result = decltype(fn(f_list.front()));
    std::vector<std::future<Result>> futures;
    futures.reserve(f_list.size());
    for (double f : f_list) futures.push_back(std::async(std::launch::async, fn, f));
    std::vector<Result> out;
    out.reserve(f_list.size());
    for (auto& fut : futures) out.push_back(fut.get());
    return out;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw WriteError("cannot write " + path.string());
    return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw WriteError("error writing " + path.string());
}

std::string law_label(const LawParams& p) {
    return "L_{" + format("%g", p.scale()) + "," + std::to_string(p.bins()) + "}";
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

void emit_table(std::span<const ComplianceReport> reports, std::ostream& out) {
    std::size_t width = 28;
    for (const auto& r : reports) width = std::max(width, r.label.size() + 2);
    const LawParams* group = nullptr;
    for (const auto& r : reports) {
        const int bins = r.params.bins();
        if (group == nullptr || !(*group == r.params)) {
            if (group != nullptr) out << '\n';
            group = &r.params;
            out << "F = " << format("%g", r.params.scale()) << ", D = " << bins << '\n';
            char buf[64];
            out << pad("rank", width);
            for (int d = 1; d <= bins; ++d) {
                std::snprintf(buf, sizeof buf, " %11d", d);
                out << buf;
            }
            out << "  SSD\n";
            out << pad(law_label(r.params), width);
            for (double v : r.law) out << ' ' << format("%11.8f", v);
            out << "  0\n";
        }
        if (r.kind == ReportKind::law) {
            out << "  flat-sequence D*E = " << format("%.6g", flat_ssd(r.params))
                << ", S(F)-1 = " << format("%.6g", s_of_f(r.params.scale()) - 1.0) << '\n';
            continue;
        }
        const bool data = r.kind == ReportKind::data;
        out << pad(r.label, width);
        for (double v : r.observed) out << ' ' << format(data ? "%11.5f" : "%11.8f", v);
        out << "  " << format(data ? "%.5f" : "%.2e", r.ssd) << '\n';

        if (r.n) {
            out << "  n = " << *r.n;
            if (r.log_mean) out << ", mean(ln s) = " << format("%.4f", *r.log_mean);
            if (r.log_std) out << ", sigma(ln s) = " << format("%.4f", *r.log_std);
            out << '\n';
        }
        if (r.variability) {
            const auto& v = *r.variability;
            out << "  R_" << format("%g", v.delta) << " = " << format("%.6g", v.r_delta)
                << ", log_F R = " << format("%.4f", v.log_f_r)
                << ", trimmed " << v.n_removed_each_side << " per side"
                << ", log_F R >= 3: " << (v.meets_threshold ? "yes" : "no");
            if (r.long_enough) out << ", n >= 100 D: " << (*r.long_enough ? "yes" : "no");
            if (r.expected_close) out << ", close fit expected: " << (*r.expected_close ? "yes" : "no");
            out << '\n';
        }
        if (r.integral_bound) {
            out << "  D*E = " << format("%.6g", bins * r.ssd)
                << ", integral bound = " << format("%.6g", *r.integral_bound);
            if (r.perfect_deviation) {
                out << ", max |p^(j/ln F)| = " << format("%.6g", *r.perfect_deviation);
            }
            out << '\n';
        }
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

void emit_csv(std::span<const ComplianceReport> reports, std::ostream& out) {
    out << "kind,label,F,D,d,law,observed,deviation,ssd\n";
    for (const auto& r : reports) {
        for (std::size_t i = 0; i < r.law.size(); ++i) {
            out << to_string(r.kind) << ',' << csv_field(r.label) << ',' << format("%.17g", r.params.scale())
                << ',' << r.params.bins() << ',' << (i + 1) << ',' << format("%.17g", r.law[i])
                << ',' << format("%.17g", r.observed[i]) << ','
                << format("%.17g", r.deviations[i]) << ',' << format("%.17g", r.ssd) << '\n';
        }
    }
}

template <class T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <class T>
std::optional<T> get_optional(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

ReportKind kind_from_string(const std::string& s) {
    if (s == "data") return ReportKind::data;
    if (s == "model") return ReportKind::model;
    if (s == "law") return ReportKind::law;
    throw std::domain_error("unknown report kind '" + s + "'");
}

}  // namespace

void validate(const RunConfig& config) {
    if (config.f_list.empty()) throw std::domain_error("at least one F is required");
    for (double f : config.f_list) LawParams(f, config.d);
    if (config.j_max < 1) throw std::domain_error("j_max must be at least 1");
    if (config.plot_points < 16) throw std::domain_error("plot points must be at least 16");
}

std::vector<ComplianceReport> law_report(const RunConfig& config) {
    validate(config);
    std::vector<ComplianceReport> out;
    for (double f : config.f_list) {
        const LawParams params(f, config.d);
        out.push_back(make_report(ReportKind::law, law_label(params), params, law_vector(params)));
    }
    return out;
}

DensityModel fit_model(ModelKind kind, const SampleSeries& s) {
    switch (kind) {
        case ModelKind::normal: return fit_normal(s.log_mean(), s.log_std());
        case ModelKind::gumbel: return fit_gumbel(s.log_mean(), s.log_std());
        case ModelKind::perfect: break;
    }
    throw std::domain_error("the perfect model has no moment fit; give --k-support");
}

std::vector<ComplianceReport> analyze(const SampleSeries& s, const RunConfig& config) {
    validate(config);
    const double log_mean = s.log_mean();
    const double log_std = s.log_std();
    std::optional<DensityModel> fitted;
    if (config.model) fitted = fit_model(*config.model, s);

    const auto& source = s.provenance().source;
    const auto label =
        source.empty() ? std::string("data") : std::filesystem::path(source).filename().string();
    auto groups = per_scale(config.f_list, [&](double f) {
        const LawParams params(f, config.d);
        const auto hist = histogram(params, s.values());
        std::vector<ComplianceReport> group;
        auto rep = make_report(ReportKind::data, label, params, hist.frequencies());
        rep.n = hist.n;
        rep.log_mean = log_mean;
        rep.log_std = log_std;
        const auto v = variability(params, s.values(), config.delta);
        rep.variability = v;
        const auto expect = compliance_expectation(params, v.r_delta, s.size());
        rep.long_enough = expect.long_enough;
        rep.expected_close = expect.expected_close;
        group.push_back(std::move(rep));
        if (fitted) {
            auto m = make_report(ReportKind::model, describe(*fitted), params,
                                 model_probs(*fitted, params));
            m.integral_bound = integral_bound(*fitted, f);
            m.perfect_deviation = perfect_deviation(*fitted, f, config.j_max);
            group.push_back(std::move(m));
        }
        return group;
    });

    std::vector<ComplianceReport> out;
    for (auto& g : groups) {
        for (auto& rep : g) out.push_back(std::move(rep));
    }
    return out;
}

std::vector<ComplianceReport> model_report(const DensityModel& model, const RunConfig& config) {
    validate(config);
    return per_scale(config.f_list, [&](double f) {
        const LawParams params(f, config.d);
        auto rep = make_report(ReportKind::model, describe(model), params, model_probs(model, params));
        rep.integral_bound = integral_bound(model, f);
        rep.perfect_deviation = perfect_deviation(model, f, config.j_max);
        return rep;
    });
}

void emit(std::span<const ComplianceReport> reports, OutputFormat fmt, std::ostream& out) {
    if (reports.empty()) throw std::domain_error("nothing to emit");
    switch (fmt) {
        case OutputFormat::table: emit_table(reports, out); break;
        case OutputFormat::json: out << to_json(reports).dump(2) << '\n'; break;
        case OutputFormat::csv: emit_csv(reports, out); break;
    }
}

void emit_to_file(std::span<const ComplianceReport> reports, OutputFormat fmt,
                  const std::filesystem::path& path) {
    auto out = open_for_write(path);
    emit(reports, fmt, out);
    finish_write(out, path);
}

nlohmann::json to_json(const ComplianceReport& r) {
    nlohmann::json j;
    j["kind"] = to_string(r.kind);
    j["label"] = r.label;
    j["F"] = r.params.scale();
    j["D"] = r.params.bins();
    j["law"] = r.law;
    j["observed"] = r.observed;
    j["deviations"] = r.deviations;
    j["ssd"] = r.ssd;
    put_optional(j, "n", r.n);
    put_optional(j, "log_mean", r.log_mean);
    put_optional(j, "log_std", r.log_std);
    if (r.variability) {
        const auto& v = *r.variability;
        j["variability"] = {{"delta", v.delta},
                            {"r_delta", v.r_delta},
                            {"log_f_r", v.log_f_r},
                            {"n_removed_each_side", v.n_removed_each_side},
                            {"meets_threshold", v.meets_threshold}};
    }
    put_optional(j, "long_enough", r.long_enough);
    put_optional(j, "expected_close", r.expected_close);
    put_optional(j, "integral_bound", r.integral_bound);
    put_optional(j, "perfect_deviation", r.perfect_deviation);
    return j;
}

ComplianceReport report_from_json(const nlohmann::json& j) {
    ComplianceReport r;
    r.kind = kind_from_string(j.at("kind").get<std::string>());
    r.label = j.at("label").get<std::string>();
    r.params = LawParams(j.at("F").get<double>(), j.at("D").get<int>());
    r.law = j.at("law").get<std::vector<double>>();
    r.observed = j.at("observed").get<std::vector<double>>();
    r.deviations = j.at("deviations").get<std::vector<double>>();
    r.ssd = j.at("ssd").get<double>();
    r.n = get_optional<std::uint64_t>(j, "n");
    r.log_mean = get_optional<double>(j, "log_mean");
    r.log_std = get_optional<double>(j, "log_std");
    if (j.contains("variability")) {
        const auto& v = j.at("variability");
        r.variability = VariabilityResult{v.at("delta").get<double>(), v.at("r_delta").get<double>(),
                                          v.at("log_f_r").get<double>(),
                                          v.at("n_removed_each_side").get<std::size_t>(),
                                          v.at("meets_threshold").get<bool>()};
    }
    r.long_enough = get_optional<bool>(j, "long_enough");
    r.expected_close = get_optional<bool>(j, "expected_close");
    r.integral_bound = get_optional<double>(j, "integral_bound");
    r.perfect_deviation = get_optional<double>(j, "perfect_deviation");
    return r;
}

nlohmann::json to_json(std::span<const ComplianceReport> reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return {{"reports", arr}};
}

std::vector<ComplianceReport> reports_from_json(const nlohmann::json& j) {
    std::vector<ComplianceReport> out;
    for (const auto& r : j.at("reports")) out.push_back(report_from_json(r));
    return out;
}

nlohmann::json to_json(const KsResult& ks) {
    return {{"statistic", ks.statistic}, {"n", ks.n}, {"p_value", ks.p_value}, {"max_at", ks.max_at}};
}

void write_periodized_plot(const PeriodizedDensity& density, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "# x\tperiodized_density  (" << describe(density.model)
        << ", period " << format("%.17g", density.period) << ")\n";
    for (std::size_t i = 0; i < density.values.size(); ++i) {
        out << format("%.17g", density.x_at(i)) << '\t' << format("%.17g", density.values[i]) << '\n';
    }
    finish_write(out, path);
}

void write_cdf_plot(std::span<const double> log_values, const DensityModel& model,
                    const std::filesystem::path& path) {
    std::vector<double> sorted(log_values.begin(), log_values.end());
    std::sort(sorted.begin(), sorted.end());
    auto out = open_for_write(path);
    out << "# ln_x\tempirical_cdf\tmodel_cdf  (" << describe(model) << ")\n";
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        out << format("%.17g", sorted[i]) << '\t' << format("%.17g", static_cast<double>(i + 1) / n)
            << '\t' << format("%.17g", cdf(model, sorted[i])) << '\n';
    }
    finish_write(out, path);
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
    if (name == "normal" || name == "lognormal") return ModelKind::normal;
    if (name == "gumbel" || name == "loggumbel") return ModelKind::gumbel;
    if (name == "perfect") return ModelKind::perfect;
    return std::nullopt;
}

std::optional<OutputFormat> parse_output_format(std::string_view name) {
    if (name == "table") return OutputFormat::table;
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    return std::nullopt;
}

}  // namespace genlaw
