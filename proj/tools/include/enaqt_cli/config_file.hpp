#pragma once

#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace enaqt::cli {

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Reads `key = value` lines; `#` starts a comment. Errors carry path:line.
std::vector<ConfigEntry> read_config_file(const std::string& path);

/// Applies entries to options of `app` named `--key` that were not given on the command
/// line. Unknown keys and unconvertible values are ConfigurationErrors naming the line.
void apply_config_file(CLI::App& app, const std::string& path);

}  // namespace enaqt::cli
