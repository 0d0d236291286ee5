#include "enaqt/csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "enaqt/errors.hpp"

namespace enaqt {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_text_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open '" + tmp + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw Error("failed writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at '" + path + "'");
  }
}

void write_csv_atomically(const std::string& path, const std::string& header,
                          const std::vector<std::string>& rows) {
  std::string content = header + "\n";
  for (const auto& row : rows) content += row + "\n";
  write_text_atomically(path, content);
}

}  // namespace enaqt
