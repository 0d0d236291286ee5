#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "enaqt/errors.hpp"
#include "enaqt/fmo.hpp"
#include "enaqt/spectral_density.hpp"
#include "enaqt_cli/commands.hpp"

using namespace enaqt;
using namespace enaqt::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("enaqt_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

struct CliRun {
  int code;
  std::string err;
};

CliRun run_cli(const std::string& args, const fs::path& scratch) {
  fs::create_directories(scratch);
  const fs::path err = scratch / "stderr.txt";
  const std::string cmd = std::string(ENAQT_CLI_PATH) + " " + args + " > " + (scratch / "stdout.txt").string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return {WEXITSTATUS(status), slurp(err)};
}

void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

}  // namespace

TEST(ParseGrid, ListAndRange) {
  EXPECT_EQ(parse_grid("0,1.5,4"), (std::vector<double>{0.0, 1.5, 4.0}));
  EXPECT_EQ(parse_grid("0:4:5"), (std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0}));
  EXPECT_THROW(parse_grid("0:4"), ConfigurationError);
  EXPECT_THROW(parse_grid("1,x"), ConfigurationError);
}

TEST(FmoSweepCommand, DefaultRunAndManifest) {
  FmoSweepConfig cfg;
  cfg.out_dir = fresh_dir("fmo").string();
  const RunSummary s = cmd_fmo_sweep(cfg);
  const auto rows = read_csv(fs::path(cfg.out_dir) / "fmo_sweep.csv");
  ASSERT_EQ(rows.size(), 61u);
  EXPECT_EQ(rows[0][0], "gamma_phi_ps^-1");
  EXPECT_EQ(rows[0][1], "eta");
  double peak = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) peak = std::max(peak, std::stod(rows[i][1]));
  EXPECT_NEAR(peak, 0.94, 0.03);

  const auto m = nlohmann::json::parse(slurp(s.manifest_path));
  EXPECT_NEAR(m["annotations"]["gamma_phi_at_T_cm^-1"].get<double>(), 300.0, 15.0);
  EXPECT_EQ(m["annotations"]["temperature_K"].get<double>(), 300.0);
  EXPECT_TRUE(m.contains("version"));
  EXPECT_EQ(m["constants"]["boltzmann_cm_per_kelvin"].get<double>(), 0.695035);
  EXPECT_EQ(m["inputs"]["fmo_data"]["sha256"].get<std::string>().size(), 64u);
  EXPECT_EQ(m["outputs"]["fmo_sweep.csv"]["sha256"].get<std::string>().size(), 64u);
}

TEST(FmoSweepCommand, RepeatedRunsAreBitwiseIdentical) {
  FmoSweepConfig cfg;
  cfg.surface = true;
  cfg.out_dir = fresh_dir("fmo_a").string();
  cmd_fmo_sweep(cfg);
  FmoSweepConfig again = cfg;
  again.out_dir = fresh_dir("fmo_b").string();
  again.width = 1;
  cmd_fmo_sweep(again);
  for (const char* f : {"fmo_sweep.csv", "fmo_surface.csv"}) {
    EXPECT_EQ(slurp(fs::path(cfg.out_dir) / f), slurp(fs::path(again.out_dir) / f)) << f;
  }
  EXPECT_EQ(read_csv(fs::path(cfg.out_dir) / "fmo_surface.csv").size(), 1u + 60u * 31u);
}

TEST(TreeEnsembleCommand, BothKindsTwentyRowsAndSeedDeterminism) {
  TreeEnsembleConfig cfg;
  cfg.samples = 2;
  cfg.out_dir = fresh_dir("tree_a").string();
  cmd_tree_ensemble(cfg);
  TreeEnsembleConfig again = cfg;
  again.out_dir = fresh_dir("tree_b").string();
  again.width = 1;
  cmd_tree_ensemble(again);
  for (const char* f : {"tree_ensemble_coherent.csv", "tree_ensemble_mixture.csv"}) {
    const auto rows = read_csv(fs::path(cfg.out_dir) / f);
    EXPECT_EQ(rows.size(), 21u) << f;
    EXPECT_EQ(slurp(fs::path(cfg.out_dir) / f), slurp(fs::path(again.out_dir) / f)) << f;
  }
}

TEST(TreeEnsembleCommand, SmokeRunUnderAMinute) {
  TreeEnsembleConfig cfg;
  cfg.samples = 5;
  cfg.out_dir = fresh_dir("tree_smoke").string();
  const auto start = std::chrono::steady_clock::now();
  cmd_tree_ensemble(cfg);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 60.0);
}

TEST(TreeEnsembleCommand, GenerationGuard) {
  TreeEnsembleConfig cfg;
  cfg.generation = 9;
  cfg.out_dir = fresh_dir("tree_guard").string();
  EXPECT_THROW(cmd_tree_ensemble(cfg), SizeGuardError);
  EXPECT_FALSE(fs::exists(cfg.out_dir));
}

TEST(TwoLevelCommand, ResonantOracleAndBiasedSweep) {
  TwoLevelConfig resonant;
  resonant.epsilon = 0.0;
  resonant.coupling = 40.0;
  resonant.out_dir = fresh_dir("two_res").string();
  const auto r = cmd_two_level(resonant);
  EXPECT_LE(r.manifest["annotations"]["oracle_max_abs_diff"].get<double>(), 1e-8);

  TwoLevelConfig biased;
  biased.out_dir = fresh_dir("two_bias").string();
  const auto b = cmd_two_level(biased);
  EXPECT_TRUE(b.manifest["annotations"]["eta_max_interior"].get<bool>());
  const auto rows = read_csv(fs::path(biased.out_dir) / "two_level_oracle.csv");
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t_ps", "p2_oracle", "p2_propagated", "abs_diff"}));
}

TEST(TwoLevelCommand, RejectsNoDynamics) {
  const fs::path dir = fresh_dir("two_reject");
  const CliRun r = run_cli("two-level --epsilon 0 --coupling 0 --out " + (dir / "out").string(), dir);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("no dynamics"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(PropagateCommand, SingleSiteExponential) {
  const fs::path dir = fresh_dir("prop_decay");
  const double recomb = 0.3;
  write_file(dir / "sys.json",
             TransportSystem(RealVector::Zero(1), RealMatrix::Zero(1, 1), RealVector::Zero(1), recomb, 0.0).to_text());
  PropagateConfig cfg;
  cfg.system_path = (dir / "sys.json").string();
  cfg.t_final = 5.0;
  cfg.samples = 51;
  cfg.out_dir = (dir / "out").string();
  cmd_propagate(cfg);
  const auto rows = read_csv(dir / "out" / "trajectory.csv");
  ASSERT_EQ(rows.size(), 52u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t_ps", "p_1", "trace", "coherence_l1"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_NEAR(std::stod(rows[i][1]), std::exp(-2.0 * recomb * std::stod(rows[i][0])), 1e-8);
  }
}

TEST(PropagateCommand, FmoCoherencesOscillate) {
  const fs::path dir = fresh_dir("prop_fmo");
  FmoOverrides o;
  o.dephasing_rate = 0.0;
  write_file(dir / "fmo.json", load_fmo_model(default_fmo_data_path(), o).system.to_text());
  PropagateConfig cfg;
  cfg.system_path = (dir / "fmo.json").string();
  cfg.initial_kind = "mixture";
  cfg.initial_sites = {1, 6};
  cfg.t_final = 5.0;
  cfg.samples = 501;
  cfg.out_dir = (dir / "out").string();
  cmd_propagate(cfg);
  const auto rows = read_csv(dir / "out" / "trajectory.csv");
  int turns = 0;
  double prev_slope = 0.0;
  for (std::size_t i = 2; i < rows.size(); ++i) {
    const double slope = std::stod(rows[i].back()) - std::stod(rows[i - 1].back());
    if (prev_slope * slope < 0.0) ++turns;
    prev_slope = slope;
  }
  EXPECT_GE(turns, 2);
}

TEST(PropagateCommand, MalformedFileFailsWithoutOutput) {
  const fs::path dir = fresh_dir("prop_bad");
  write_file(dir / "bad.json", "{\n  \"n_sites\": 2,\n  \"site_energies\": [1, 2\n}\n");
  const CliRun r = run_cli("propagate --system " + (dir / "bad.json").string() + " --out " + (dir / "out").string(), dir);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(ConfigFile, ValuesApplyAndCommandLineWins) {
  const fs::path dir = fresh_dir("config_ok");
  write_file(dir / "run.cfg", "# two-level settings\nepsilon = 0\ncoupling = 30   # cm-1\ngamma_points = 7\n");
  const CliRun r = run_cli("two-level --config " + (dir / "run.cfg").string() + " --gamma-points 9 --out " +
                            (dir / "out").string(),
                        dir);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = nlohmann::json::parse(slurp(dir / "out" / "two_level_manifest.json"));
  EXPECT_EQ(m["config"]["epsilon_cm^-1"].get<double>(), 0.0);
  EXPECT_EQ(m["config"]["coupling_cm^-1"].get<double>(), 30.0);
  EXPECT_EQ(m["config"]["gamma_points"].get<int>(), 9);
}

TEST(ConfigFile, UnknownKeyNamesTheLine) {
  const fs::path dir = fresh_dir("config_bad");
  write_file(dir / "run.cfg", "epsilon = 10\n\nflux_capacitor = 1\n");
  const CliRun r = run_cli("two-level --config " + (dir / "run.cfg").string() + " --out " + (dir / "out").string(), dir);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("run.cfg:3"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("flux_capacitor"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir / "out"));
}

TEST(ConfigFile, BadValueNamesTheLine) {
  const fs::path dir = fresh_dir("config_value");
  write_file(dir / "run.cfg", "epsilon = ten\n");
  const CliRun r = run_cli("two-level --config " + (dir / "run.cfg").string() + " --out " + (dir / "out").string(), dir);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("run.cfg:1"), std::string::npos) << r.err;
}

TEST(TemperatureCommand, RoomTemperature) {
  const auto j = cmd_temperature_to_rate({});
  EXPECT_NEAR(j["gamma_phi_cm^-1"].get<double>(), 305.69, 0.01);
}

TEST(Cli, UnwritableOutputFails) {
  const fs::path dir = fresh_dir("unwritable");
  write_file(dir / "blocker", "x");
  const CliRun r = run_cli("fmo-sweep --out " + (dir / "blocker" / "sub").string(), dir);
  EXPECT_NE(r.code, 0);
}
