#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace frontlab::cli {

/// 17 significant digits; round-trips every double exactly.
std::string format_double(double x);

/// Named-column table of string cells, the CSV interchange shape. Numeric
/// cells are produced with format_double; absent values are empty cells.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Index of a column by name, -1 when absent.
    int column_index(const std::string& name) const;
};

/// Header row plus data rows, comma separated, LF line endings.
/// Throws ParseError when a row width disagrees with the header.
void write_csv(const std::filesystem::path& path, const Table& table);

/// Parses a CSV in the dialect write_csv emits (no quoting, no embedded
/// commas). Throws ParseError on an unreadable file, an empty file, or
/// ragged rows.
Table read_csv(const std::filesystem::path& path);

/// Whole file as a string. Throws ParseError when unreadable.
std::string read_text_file(const std::filesystem::path& path);

/// Writes bytes exactly as given (binary mode, LF stays LF).
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace frontlab::cli
