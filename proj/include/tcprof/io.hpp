#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace tcprof {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view contents);

/// Fixed-point formatting used by every human-facing report ("%.*f").
std::string format_fixed(double value, int decimals = 4);

}  // namespace tcprof
