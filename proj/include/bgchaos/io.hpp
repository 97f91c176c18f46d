#pragma once

#include <string>
#include <vector>

namespace bgchaos {

// Writes to a sibling temp file, then renames over the target.
void write_file_atomic(const std::string& path, const std::string& contents);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

}  // namespace bgchaos
