#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace leadernet {

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Strict full-string parse; throws Error on trailing garbage.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

/// Writes `content` to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);

std::string read_file(const std::filesystem::path &path);

/// CSV field, quoted only when it contains a separator, quote or newline.
std::string csv_escape(std::string_view field);

/// Splits one CSV line, honouring double-quoted fields.
std::vector<std::string> csv_split(std::string_view line);

} // namespace leadernet
