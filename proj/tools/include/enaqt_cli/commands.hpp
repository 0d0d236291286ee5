#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace enaqt::cli {

/// What a subcommand produced: output files (paths) plus the manifest content.
struct RunSummary {
  std::vector<std::string> outputs;
  std::string manifest_path;
  nlohmann::json manifest;
};

struct FmoSweepConfig {
  std::string data_path;  // empty: bundled file
  double gamma_min = 1e-3;
  double gamma_max = 1e5;
  int gamma_points = 60;
  bool surface = false;
  double kappa_min = 1e-2;
  double kappa_max = 1e3;
  int kappa_points = 31;
  double trap_rate = 1.0;
  double recomb_rate = 0.0005;
  double annotate_temperature = 300.0;
  double reorganization_energy = 35.0;
  double cutoff = 150.0;
  unsigned width = 0;
  std::string out_dir = ".";
};

struct TreeEnsembleConfig {
  int generation = 4;
  std::size_t samples = 100;
  std::uint64_t seed = 20090101;
  std::vector<double> delta_grid;  // empty: 20 points over [0, 4]
  std::string kind = "both";       // coherent | mixture | both
  double coupling = 100.0;         // cm^-1
  double gamma_over_v = 0.005;
  double kappa_over_v = 2.0;
  int search_points = 40;
  bool allow_large = false;
  unsigned width = 0;
  std::string out_dir = ".";
};

struct TwoLevelConfig {
  double epsilon = 100.0;   // cm^-1
  double coupling = 10.0;   // cm^-1
  double trap_rate = 1.0;   // on site 2, ps^-1
  double recomb_rate = 0.0005;
  int oracle_samples = 201;
  double tolerance = 1e-9;
  double gamma_min = 1e-3;
  double gamma_max = 1e4;
  int gamma_points = 50;
  std::string out_dir = ".";
};

struct PropagateConfig {
  std::string system_path;
  std::string initial_kind = "single";
  std::vector<int> initial_sites{1};
  double t_final = 0.0;  // <= 0: default horizon capped at horizon_cap
  double horizon_cap = 1000.0;
  int samples = 201;
  double tolerance = 1e-9;
  std::string output = "trajectory.csv";
  std::string out_dir = ".";
};

struct TemperatureConfig {
  double temperature = 300.0;
  double reorganization_energy = 35.0;
  double cutoff = 150.0;
};

RunSummary cmd_fmo_sweep(const FmoSweepConfig& config);
RunSummary cmd_tree_ensemble(const TreeEnsembleConfig& config);
RunSummary cmd_two_level(const TwoLevelConfig& config);
RunSummary cmd_propagate(const PropagateConfig& config);
/// Returns {"kelvin", "gamma_phi_cm^-1", "gamma_phi_ps^-1", ...}.
nlohmann::json cmd_temperature_to_rate(const TemperatureConfig& config);

/// Parses "a,b,c" or "start:stop:count" (inclusive, linear).
std::vector<double> parse_grid(const std::string& text);

}  // namespace enaqt::cli
