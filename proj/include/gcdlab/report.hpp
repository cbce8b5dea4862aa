// CSV/JSON report emission. CSV is the primary exchange format: comment
// header lines record the full run configuration, then a column row and the
// data body. Identical configurations produce byte-identical files.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gcdlab {

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;  ///< ordered key=value header
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> footer;  ///< trailing comment key=values
};

/// Stable formatting for report cells ("%.12g"; empty for NaN placeholders).
std::string format_cell(double v);
std::string format_cell(std::uint64_t v);
std::string format_cell(std::int64_t v);
std::string format_cell(bool v);

std::string to_csv(const Report& report);
std::string to_json_text(const Report& report);

/// Writes to the path, or to stdout when the path is empty.
void write_report(const Report& report, const std::string& path, const std::string& format);

/// Declared column/field schema for a command, stable within a major
/// version. Throws on unknown format or command.
std::string report_schema(const std::string& format, const std::string& command);

/// All commands with a declared schema.
std::vector<std::string> schema_commands();

}  // namespace gcdlab
