#pragma once

#include <string>
#include <vector>

namespace enaqt {

/// Shortest round-trip representation ("%.17g"); NaN prints as "nan".
std::string format_double(double value);

/// Writes `header` and rows to `path` through a temporary file renamed into place,
/// so a failed run never leaves a partial CSV behind.
void write_csv_atomically(const std::string& path, const std::string& header,
                          const std::vector<std::string>& rows);

void write_text_atomically(const std::string& path, const std::string& content);

}  // namespace enaqt
