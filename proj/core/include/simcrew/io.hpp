#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace simcrew::io {

/// Throws Error(io) when the file cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Creates parent directories as needed. Throws Error(io) on failure.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace simcrew::io
