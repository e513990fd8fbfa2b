#pragma once

#include <string>
#include <string_view>

namespace occlang {

/// Hex digest of the SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Hex digest of a file's contents.
std::string sha256_file_hex(const std::string& path);

}  // namespace occlang
