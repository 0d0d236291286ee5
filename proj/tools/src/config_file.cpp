#include "enaqt_cli/config_file.hpp"

#include <fstream>

#include <CLI11.hpp>

#include "enaqt/errors.hpp"

namespace enaqt::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

std::vector<ConfigEntry> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot read config file '" + path + "'");
  std::vector<ConfigEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw ConfigurationError(where + "expected 'key = value'");
    ConfigEntry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no};
    if (e.key.empty()) throw ConfigurationError(where + "missing key");
    if (e.value.size() >= 2 && e.value.front() == '"' && e.value.back() == '"') {
      e.value = e.value.substr(1, e.value.size() - 2);
    }
    for (const auto& prev : entries) {
      if (prev.key == e.key) {
        throw ConfigurationError(where + "duplicate key '" + e.key + "' (first set on line " +
                                 std::to_string(prev.line) + ")");
      }
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

void apply_config_file(CLI::App& app, const std::string& path) {
  for (const ConfigEntry& e : read_config_file(path)) {
    const std::string where = path + ":" + std::to_string(e.line) + ": ";
    std::string name = e.key;
    for (char& c : name) {
      if (c == '_') c = '-';
    }
    CLI::Option* opt = app.get_option_no_throw("--" + name);
    if (opt == nullptr || name == "config") {
      throw ConfigurationError(where + "unknown key '" + e.key + "' for '" + app.get_name() + "'");
    }
    if (opt->count() > 0) continue;  // command line wins
    try {
      opt->add_result(e.value);
      opt->run_callback();
    } catch (const CLI::Error& err) {
      throw ConfigurationError(where + "bad value for '" + e.key + "': " + err.what());
    }
  }
}

}  // namespace enaqt::cli
