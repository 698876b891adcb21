#pragma once

// Reading numeric series from delimited text files.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "genlaw/sample_series.hpp"

namespace genlaw {

class IngestError : public std::runtime_error {
public:
    enum class Code { unreadable, bad_column, empty, excessive_skips };

    IngestError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Code code() const noexcept { return code_; }

private:
    Code code_;
};

struct IngestOptions {
    /// 1-based index ("3") or header name ("pop").
    std::string column = "1";
    /// Autodetected from the first data line when unset: tab, then comma, else whitespace.
    std::optional<char> delimiter;
    /// Autodetected when unset: a header is present if the first row's selected
    /// field is not numeric (always assumed when the column is given by name).
    std::optional<bool> header;
    Transform transform = Transform::none;
    /// Values are natural logarithms; exponentiated before use.
    bool log_input = false;
    /// Abort when more than this fraction of rows is skipped.
    double max_skip_fraction = 0.01;
};

SampleSeries parse_series(std::istream& in, const IngestOptions& options,
                          const std::string& source = "<stream>");

/// Throws IngestError.
SampleSeries ingest(const std::filesystem::path& path, const IngestOptions& options);

}  // namespace genlaw
