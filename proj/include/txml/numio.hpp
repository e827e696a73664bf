#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace txml {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

// Fixed-point with the given number of decimals (report display columns).
std::string format_fixed(double value, int decimals);

// Strict full-consumption parse; nullopt on any trailing or malformed text.
std::optional<double> try_parse_double(std::string_view text);

// Splits on the delimiter, keeping empty fields.
std::vector<std::string_view> split_fields(std::string_view line, char delim);

// Whole-file read; IoError with the path on failure.
std::string read_text_file(const std::filesystem::path& path);

// Writes to "<path>.tmp" then renames, so a failed write never leaves a
// partial file at the destination. IoError with the path on failure.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace txml
