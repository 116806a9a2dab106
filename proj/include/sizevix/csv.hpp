#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sizevix {

// Locale-independent float parsing/formatting. CSV files produced by this
// library use '.' decimals, ',' delimiters, LF endings and shortest
// round-trip float text, so identical runs yield identical bytes.
double parse_double(std::string_view token, const std::string& context);
std::string format_double(double value);

std::vector<std::string> split_csv_line(std::string_view line);

// Reads all non-empty lines, split on ','; fields are trimmed of spaces
// and a trailing CR. No quoting support (the ingested formats need none).
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace sizevix
