#include "genlaw/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <vector>

namespace genlaw {

namespace {

constexpr char kWhitespace = ' ';

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        s = s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    if (delim == kWhitespace) {
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
            if (i >= line.size()) break;
            const std::size_t start = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
            out.push_back(line.substr(start, i - start));
        }
        return out;
    }
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(delim, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_number(std::string_view field) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    if (field.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
    return value;
}

char detect_delimiter(std::string_view line) {
    if (line.find('\t') != std::string_view::npos) return '\t';
    if (line.find(',') != std::string_view::npos) return ',';
    return kWhitespace;
}

bool is_index(const std::string& column) {
    return !column.empty() && std::all_of(column.begin(), column.end(),
                                          [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

SampleSeries parse_series(std::istream& in, const IngestOptions& options,
                          const std::string& source) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        lines.push_back(std::move(line));
    }
    if (lines.empty()) throw IngestError(IngestError::Code::empty, source + ": no data rows");

    const char delim = options.delimiter.value_or(detect_delimiter(lines.front()));
    const bool by_index = is_index(options.column);

    std::size_t col = 0;
    if (by_index) {
        col = static_cast<std::size_t>(std::stoul(options.column));
        if (col == 0) throw IngestError(IngestError::Code::bad_column, "column index is 1-based");
        --col;
    }

    bool header = options.header.value_or(!by_index);
    if (!options.header && by_index) {
        const auto fields = split(lines.front(), delim);
        header = col >= fields.size() || !parse_number(fields[col]).has_value();
    }
    if (!by_index) {
        if (!header) {
            throw IngestError(IngestError::Code::bad_column,
                              "column '" + options.column + "' named but the file has no header");
        }
        const auto names = split(lines.front(), delim);
        const auto it = std::find_if(names.begin(), names.end(), [&](std::string_view n) {
            return trim(n) == options.column;
        });
        if (it == names.end()) {
            throw IngestError(IngestError::Code::bad_column,
                              source + ": no column named '" + options.column + "'");
        }
        col = static_cast<std::size_t>(it - names.begin());
    }

    const std::size_t first_row = header ? 1 : 0;
    const std::size_t rows = lines.size() - first_row;
    if (rows == 0) throw IngestError(IngestError::Code::empty, source + ": header but no data rows");

    std::size_t skipped = 0;
    std::vector<double> raw;
    raw.reserve(rows);
    for (std::size_t i = first_row; i < lines.size(); ++i) {
        const auto fields = split(lines[i], delim);
        const auto v = col < fields.size() ? parse_number(fields[col]) : std::nullopt;
        if (!v || !std::isfinite(*v)) {
            ++skipped;
            continue;
        }
        raw.push_back(options.log_input ? std::exp(*v) : *v);
    }

    std::size_t candidates = rows;
    if (options.transform == Transform::pairwise_difference) {
        candidates = rows > 0 ? rows - 1 : 0;
        std::vector<double> diffs;
        for (std::size_t i = 1; i < raw.size(); ++i) diffs.push_back(raw[i] - raw[i - 1]);
        raw = std::move(diffs);
    }

    std::vector<double> values;
    values.reserve(raw.size());
    for (double v : raw) {
        if (std::isfinite(v) && v > 0.0) {
            values.push_back(v);
        } else {
            ++skipped;
        }
    }

    if (values.empty()) {
        throw IngestError(IngestError::Code::empty, source + ": no positive numeric values");
    }
    if (static_cast<double>(skipped) > options.max_skip_fraction * static_cast<double>(candidates)) {
        throw IngestError(IngestError::Code::excessive_skips,
                          source + ": skipped " + std::to_string(skipped) + " of " +
                              std::to_string(candidates) + " rows (limit " +
                              std::to_string(options.max_skip_fraction * 100.0) + "%)");
    }

    SampleSeries::Provenance prov;
    prov.source = source;
    prov.column = options.column;
    prov.transform = options.transform;
    prov.log_input = options.log_input;
    prov.skipped = skipped;
    return SampleSeries(std::move(values), std::move(prov));
}

SampleSeries ingest(const std::filesystem::path& path, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw IngestError(IngestError::Code::unreadable, "cannot open " + path.string());
    return parse_series(in, options, path.string());
}

}  // namespace genlaw
