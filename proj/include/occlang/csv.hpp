#pragma once

#include <string>
#include <vector>

namespace occlang {

/// RFC-4180 style quoting: fields containing comma, quote or newline are
/// wrapped in double quotes with embedded quotes doubled.
std::string csv_field(const std::string& s);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Returns all records including the header row.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

}  // namespace occlang
