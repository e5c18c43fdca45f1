#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace georep {

// Canonical serialization: object keys sorted, no insignificant whitespace,
// reals printed with 17 significant digits (round-trip exact). File digests
// of canonical output are stable across platforms.
std::string canonical_dump(const nlohmann::json& j);

// %.17g with negative zero normalized away. NaN/Inf are rejected.
std::string fmt_double(double v);

nlohmann::json load_json_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

// Creates parent directories as needed.
void write_text_file(const std::filesystem::path& path, const std::string& content);

// canonical_dump + trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace georep
