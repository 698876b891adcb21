#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "genlaw/distributions.hpp"
#include "genlaw/goodness_of_fit.hpp"
#include "genlaw/ingest.hpp"
#include "genlaw/report.hpp"
#include "genlaw/variability.hpp"

namespace genlaw::cli {

namespace {

struct InputFlags {
    std::string path;
    std::string column = "1";
    std::string delimiter;
    std::string header = "auto";
    std::string transform = "none";
    bool log_input = false;
    double max_skip = 0.01;
};

struct ModelFlags {
    std::string kind;
    std::optional<double> mu;
    std::optional<double> sigma;
    std::optional<double> beta;
    std::optional<double> k_support;
};

struct CommonFlags {
    std::vector<double> f_list{2.0, 8.0, 32.0};
    int d = 5;
    double delta = kDefaultDelta;
    int j_max = 50;
    std::string format = "table";
    std::string output;
    std::string plot_prefix;
    std::size_t plot_points = 10000;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt_num(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

void add_input(CLI::App* cmd, InputFlags& in) {
    cmd->add_option("file", in.path, "Delimited text file with the data")->required();
    cmd->add_option("--column", in.column, "Column by 1-based index or header name");
    cmd->add_option("--delimiter", in.delimiter, "Field delimiter: ',', 'tab', 'space' (default: detect)");
    cmd->add_option("--header", in.header, "Header row: auto, yes, no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
    cmd->add_option("--transform", in.transform, "none, or diff for successive differences")
        ->check(CLI::IsMember({"none", "diff"}));
    cmd->add_flag("--log-input", in.log_input, "Values are natural logarithms");
    cmd->add_option("--max-skip", in.max_skip, "Abort when more than this fraction of rows is skipped");
}

void add_model(CLI::App* cmd, ModelFlags& m, bool required) {
    auto* opt = cmd->add_option("--model", m.kind, "normal, gumbel or perfect");
    if (required) opt->required();
    cmd->add_option("--mu", m.mu, "Location of ln X (normal mean, gumbel mode)");
    cmd->add_option("--sigma", m.sigma, "Standard deviation of ln X (normal)");
    cmd->add_option("--beta", m.beta, "Gumbel scale");
    cmd->add_option("--k-support", m.k_support, "Half-width K of the perfect model's transform");
}

void add_common(CLI::App* cmd, CommonFlags& c) {
    cmd->add_option("--f", c.f_list, "Scale factor F > 1 (repeatable)");
    cmd->add_option("--d", c.d, "Bin count D >= 2");
    cmd->add_option("--format", c.format, "table, json or csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    cmd->add_option("-o,--output", c.output, "Write the report here instead of stdout");
}

void add_plot(CLI::App* cmd, CommonFlags& c) {
    cmd->add_option("--plot-data", c.plot_prefix, "Path prefix for plot-data files");
    cmd->add_option("--plot-points", c.plot_points, "Grid size for periodized-density plots");
}

IngestOptions to_ingest_options(const InputFlags& in) {
    IngestOptions o;
    o.column = in.column;
    if (in.delimiter == "tab" || in.delimiter == "\\t") {
        o.delimiter = '\t';
    } else if (in.delimiter == "space" || in.delimiter == "whitespace") {
        o.delimiter = ' ';
    } else if (in.delimiter.size() == 1) {
        o.delimiter = in.delimiter.front();
    } else if (!in.delimiter.empty()) {
        throw UsageError("unsupported delimiter '" + in.delimiter + "'");
    }
    if (in.header == "yes") o.header = true;
    if (in.header == "no") o.header = false;
    o.transform = in.transform == "diff" ? Transform::pairwise_difference : Transform::none;
    o.log_input = in.log_input;
    o.max_skip_fraction = in.max_skip;
    return o;
}

RunConfig to_config(const CommonFlags& c) {
    RunConfig cfg;
    cfg.f_list = c.f_list;
    cfg.d = c.d;
    cfg.delta = c.delta;
    cfg.j_max = c.j_max;
    cfg.format = *parse_output_format(c.format);
    if (!c.plot_prefix.empty()) cfg.plot_prefix = c.plot_prefix;
    cfg.plot_points = c.plot_points;
    return cfg;
}

ModelKind model_kind(const ModelFlags& m) {
    const auto kind = parse_model_kind(m.kind);
    if (!kind) throw UsageError("unknown model '" + m.kind + "' (normal, gumbel, perfect)");
    return *kind;
}

template <class T>
T need(const std::optional<T>& v, const char* flag, const char* model) {
    if (!v) throw UsageError(std::string("the ") + model + " model needs " + flag);
    return *v;
}

DensityModel build_model(const ModelFlags& m) {
    switch (model_kind(m)) {
        case ModelKind::normal:
            return NormalLogModel(need(m.mu, "--mu", "normal"), need(m.sigma, "--sigma", "normal"));
        case ModelKind::gumbel:
            return GumbelLogModel(need(m.mu, "--mu", "gumbel"), need(m.beta, "--beta", "gumbel"));
        case ModelKind::perfect:
            return PerfectModel(need(m.k_support, "--k-support", "perfect"));
    }
    throw UsageError("unknown model");
}

bool has_parameters(const ModelFlags& m) {
    return m.mu || m.sigma || m.beta || m.k_support;
}

void deliver(const std::string& text, const CommonFlags& c, std::ostream& out) {
    if (c.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(c.output, std::ios::binary | std::ios::trunc);
    if (!file) throw WriteError("cannot write " + c.output);
    file << text;
    file.flush();
    if (!file) throw WriteError("error writing " + c.output);
}

void deliver(const std::vector<ComplianceReport>& reports, const RunConfig& cfg,
             const CommonFlags& c, std::ostream& out) {
    if (c.output.empty()) {
        emit(reports, cfg.format, out);
    } else {
        emit_to_file(reports, cfg.format, c.output);
    }
}

std::string scale_tag(double f) { return fmt_num("%g", f); }

void write_periodized_plots(const DensityModel& model, const RunConfig& cfg) {
    if (!cfg.plot_prefix) return;
    for (double f : cfg.f_list) {
        write_periodized_plot(periodize(model, f, cfg.plot_points),
                              *cfg.plot_prefix + "_periodized_F" + scale_tag(f) + ".tsv");
    }
}

// --- subcommand bodies -------------------------------------------------------

void cmd_expected(const CommonFlags& c, std::ostream& out) {
    const auto cfg = to_config(c);
    deliver(law_report(cfg), cfg, c, out);
}

void cmd_analyze(const InputFlags& in, const ModelFlags& m, const CommonFlags& c,
                 std::ostream& out, std::ostream& err) {
    auto cfg = to_config(c);
    validate(cfg);
    const auto series = ingest(in.path, to_ingest_options(in));
    if (series.provenance().skipped > 0) {
        err << "genlaw: skipped " << series.provenance().skipped << " rows of " << in.path << '\n';
    }
    if (!m.kind.empty()) cfg.model = model_kind(m);
    deliver(analyze(series, cfg), cfg, c, out);
    if (cfg.model && cfg.plot_prefix) {
        const auto fitted = fit_model(*cfg.model, series);
        write_periodized_plots(fitted, cfg);
        write_cdf_plot(series.log_values(), fitted, *cfg.plot_prefix + "_cdf.tsv");
    }
}

void cmd_model(const ModelFlags& m, const CommonFlags& c, std::ostream& out) {
    const auto cfg = to_config(c);
    const auto model = build_model(m);
    deliver(model_report(model, cfg), cfg, c, out);
    write_periodized_plots(model, cfg);
}

void cmd_ks(const InputFlags& in, const ModelFlags& m, const CommonFlags& c, std::ostream& out,
            std::ostream& err) {
    const auto cfg = to_config(c);
    const auto series = ingest(in.path, to_ingest_options(in));
    if (series.provenance().skipped > 0) {
        err << "genlaw: skipped " << series.provenance().skipped << " rows of " << in.path << '\n';
    }
    const auto model = has_parameters(m) ? build_model(m) : fit_model(model_kind(m), series);
    const auto logs = series.log_values();
    const auto ks = ks_statistic(logs, model);

    std::ostringstream text;
    switch (cfg.format) {
        case OutputFormat::table:
            text << "model      " << describe(model) << '\n'
                 << "n          " << ks.n << '\n'
                 << "KS         " << fmt_num("%.6f", ks.statistic) << '\n'
                 << "p-value    " << fmt_num("%.6g", ks.p_value) << '\n'
                 << "sup at ln x = " << fmt_num("%.6f", ks.max_at) << '\n';
            break;
        case OutputFormat::json: {
            auto j = to_json(ks);
            j["model"] = describe(model);
            text << j.dump(2) << '\n';
            break;
        }
        case OutputFormat::csv:
            text << "model,n,statistic,p_value,max_at\n"
                 << '"' << describe(model) << "\"," << ks.n << ',' << fmt_num("%.17g", ks.statistic)
                 << ',' << fmt_num("%.17g", ks.p_value) << ',' << fmt_num("%.17g", ks.max_at) << '\n';
            break;
    }
    deliver(text.str(), c, out);
    if (cfg.plot_prefix) write_cdf_plot(logs, model, *cfg.plot_prefix + "_cdf.tsv");
}

void cmd_variability(const InputFlags& in, const CommonFlags& c, std::ostream& out,
                     std::ostream& err) {
    const auto cfg = to_config(c);
    validate(cfg);
    const auto series = ingest(in.path, to_ingest_options(in));
    if (series.provenance().skipped > 0) {
        err << "genlaw: skipped " << series.provenance().skipped << " rows of " << in.path << '\n';
    }
    std::ostringstream text;
    nlohmann::json rows = nlohmann::json::array();
    if (cfg.format == OutputFormat::table) {
        text << "n = " << series.size() << ", mean(ln s) = " << fmt_num("%.4f", series.log_mean())
             << ", sigma(ln s) = " << fmt_num("%.4f", series.log_std()) << '\n';
    }
    if (cfg.format == OutputFormat::csv) {
        text << "F,D,delta,r_delta,log_f_r,n_removed_each_side,meets_threshold,long_enough,"
                "expected_close\n";
    }
    for (double f : cfg.f_list) {
        const LawParams params(f, cfg.d);
        const auto v = variability(params, series.values(), cfg.delta);
        const auto e = compliance_expectation(params, v.r_delta, series.size());
        switch (cfg.format) {
            case OutputFormat::table:
                text << "F = " << scale_tag(f) << ": R_" << scale_tag(v.delta) << " = "
                     << fmt_num("%.6g", v.r_delta) << ", log_F R = " << fmt_num("%.4f", v.log_f_r)
                     << ", trimmed " << v.n_removed_each_side << " per side, log_F R >= 3: "
                     << (e.meets_threshold ? "yes" : "no") << ", n >= 100 D: "
                     << (e.long_enough ? "yes" : "no") << ", close fit expected: "
                     << (e.expected_close ? "yes" : "no") << '\n';
                break;
            case OutputFormat::json:
                rows.push_back({{"F", f},
                                {"D", cfg.d},
                                {"delta", v.delta},
                                {"r_delta", v.r_delta},
                                {"log_f_r", v.log_f_r},
                                {"n_removed_each_side", v.n_removed_each_side},
                                {"meets_threshold", e.meets_threshold},
                                {"long_enough", e.long_enough},
                                {"expected_close", e.expected_close}});
                break;
            case OutputFormat::csv:
                text << fmt_num("%.17g", f) << ',' << cfg.d << ',' << fmt_num("%.17g", v.delta) << ','
                     << fmt_num("%.17g", v.r_delta) << ',' << fmt_num("%.17g", v.log_f_r) << ','
                     << v.n_removed_each_side << ',' << e.meets_threshold << ',' << e.long_enough
                     << ',' << e.expected_close << '\n';
                break;
        }
    }
    if (cfg.format == OutputFormat::json) {
        nlohmann::json j{{"n", series.size()},
                         {"log_mean", series.log_mean()},
                         {"log_std", series.log_std()},
                         {"variability", rows}};
        text << j.dump(2) << '\n';
    }
    deliver(text.str(), c, out);
}

void cmd_perfect_check(const ModelFlags& m, const CommonFlags& c, std::ostream& out) {
    const auto cfg = to_config(c);
    validate(cfg);
    const auto model = build_model(m);
    std::ostringstream text;
    nlohmann::json rows = nlohmann::json::array();
    if (cfg.format == OutputFormat::table) {
        text << "model " << describe(model) << ", harmonics j = 1.." << cfg.j_max << '\n';
    }
    if (cfg.format == OutputFormat::csv) text << "F,ln_F,j_max,perfect_deviation,perfect,integral_bound\n";
    for (double f : cfg.f_list) {
        const double dev = perfect_deviation(model, f, cfg.j_max);
        const double bound = integral_bound(model, f);
        const bool perfect = dev == 0.0;
        switch (cfg.format) {
            case OutputFormat::table:
                text << "F = " << scale_tag(f) << " (ln F = " << fmt_num("%.6g", std::log(f))
                     << "): max |p^(j/ln F)| = " << fmt_num("%.6g", dev)
                     << ", integral bound = " << fmt_num("%.6g", bound)
                     << (perfect ? ", F-perfect" : ", not F-perfect") << '\n';
                break;
            case OutputFormat::json:
                rows.push_back({{"F", f},
                                {"ln_F", std::log(f)},
                                {"j_max", cfg.j_max},
                                {"perfect_deviation", dev},
                                {"perfect", perfect},
                                {"integral_bound", bound}});
                break;
            case OutputFormat::csv:
                text << fmt_num("%.17g", f) << ',' << fmt_num("%.17g", std::log(f)) << ',' << cfg.j_max
                     << ',' << fmt_num("%.17g", dev) << ',' << perfect << ','
                     << fmt_num("%.17g", bound) << '\n';
                break;
        }
    }
    if (cfg.format == OutputFormat::json) {
        text << nlohmann::json{{"model", describe(model)}, {"checks", rows}}.dump(2) << '\n';
    }
    deliver(text.str(), c, out);
    write_periodized_plots(model, cfg);
}

void cmd_simulate(const ModelFlags& m, const CommonFlags& c, std::size_t n, std::uint64_t seed,
                  std::ostream& out) {
    const auto cfg = to_config(c);
    validate(cfg);
    const auto model = build_model(m);
    SampleSeries::Provenance prov;
    prov.source = "simulated " + describe(model);
    const auto draws = sample(model, n, seed);
    const auto series = SampleSeries::from_log_values(draws, prov);

    auto reports = analyze(series, cfg);
    auto model_rows = model_report(model, cfg);
    // interleave: each F's data row followed by its model row
    std::vector<ComplianceReport> merged;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        merged.push_back(std::move(reports[i]));
        merged.push_back(std::move(model_rows[i]));
    }
    deliver(merged, cfg, c, out);
    write_periodized_plots(model, cfg);
    if (cfg.plot_prefix) write_cdf_plot(draws, model, *cfg.plot_prefix + "_cdf.tsv");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rank-frequency analysis under the generalized first-digit law", "genlaw"};
    app.require_subcommand(1);

    InputFlags in;
    ModelFlags model;
    CommonFlags common;
    std::size_t n = 100000;
    std::uint64_t seed = 1;

    auto* expected = app.add_subcommand("expected", "Print law values L_{F,D}(d)");
    add_common(expected, common);

    auto* analyze_cmd = app.add_subcommand("analyze", "Rank frequencies of a data file versus the law");
    add_input(analyze_cmd, in);
    add_common(analyze_cmd, common);
    add_plot(analyze_cmd, common);
    analyze_cmd->add_option("--delta", common.delta, "Truncation fraction for R_delta");
    analyze_cmd->add_option("--model", model.kind, "Also fit normal or gumbel to ln s");
    analyze_cmd->add_option("--j-max", common.j_max, "Harmonics for the perfect-deviation check");

    auto* model_cmd = app.add_subcommand("model", "Rank probabilities of a parameterized model");
    add_model(model_cmd, model, true);
    add_common(model_cmd, common);
    add_plot(model_cmd, common);
    model_cmd->add_option("--j-max", common.j_max, "Harmonics for the perfect-deviation check");

    auto* ks_cmd = app.add_subcommand("ks", "Kolmogorov-Smirnov test of ln s against a model");
    add_input(ks_cmd, in);
    add_model(ks_cmd, model, true);
    add_common(ks_cmd, common);
    add_plot(ks_cmd, common);

    auto* var_cmd = app.add_subcommand("variability", "R_delta and the compliance expectation");
    add_input(var_cmd, in);
    add_common(var_cmd, common);
    var_cmd->add_option("--delta", common.delta, "Truncation fraction");

    auto* perfect_cmd = app.add_subcommand("perfect-check", "Fourier test for F-perfect models");
    add_model(perfect_cmd, model, true);
    add_common(perfect_cmd, common);
    add_plot(perfect_cmd, common);
    perfect_cmd->add_option("--j-max", common.j_max, "Number of harmonics to test");

    auto* sim_cmd = app.add_subcommand("simulate", "Sample a model, then analyze the sample");
    add_model(sim_cmd, model, true);
    add_common(sim_cmd, common);
    add_plot(sim_cmd, common);
    sim_cmd->add_option("--n", n, "Sample size")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", seed, "Generator seed");
    sim_cmd->add_option("--delta", common.delta, "Truncation fraction for R_delta");
    sim_cmd->add_option("--j-max", common.j_max, "Harmonics for the perfect-deviation check");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (expected->parsed()) cmd_expected(common, out);
        if (analyze_cmd->parsed()) cmd_analyze(in, model, common, out, err);
        if (model_cmd->parsed()) cmd_model(model, common, out);
        if (ks_cmd->parsed()) cmd_ks(in, model, common, out, err);
        if (var_cmd->parsed()) cmd_variability(in, common, out, err);
        if (perfect_cmd->parsed()) cmd_perfect_check(model, common, out);
        if (sim_cmd->parsed()) cmd_simulate(model, common, n, seed, out);
    } catch (const UsageError& e) {
        err << "genlaw: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IngestError& e) {
        err << "genlaw: " << e.what() << '\n';
        return kExitIngest;
    } catch (const WriteError& e) {
        err << "genlaw: " << e.what() << '\n';
        return kExitWrite;
    } catch (const std::exception& e) {
        err << "genlaw: " << e.what() << '\n';
        return kExitCompute;
    }
    return kExitOk;
}

}  // namespace genlaw::cli
