#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace georep {

// SHA-256 hex digest of a byte string.
std::string sha256_hex(std::string_view data);

// Digest of a file's raw bytes. Throws ParseError if unreadable.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace georep
