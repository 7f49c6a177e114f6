#pragma once

// Small string helpers shared by the file-format readers and writers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simcrew::text {

std::string_view trim(std::string_view s) noexcept;
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b) noexcept;
bool starts_with_icase(std::string_view s, std::string_view prefix) noexcept;

/// Whitespace tokenizer; single- and double-quoted tokens keep embedded blanks.
std::vector<std::string> split_ws(std::string_view line);

std::vector<std::string> split_lines(std::string_view s);

std::optional<double> parse_double(std::string_view token);
std::optional<long long> parse_int(std::string_view token);

/// Shortest decimal form that reads back to the same double.
std::string format_number(double value);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace simcrew::text
