#include <iostream>

#include <CLI11.hpp>

#include "enaqt/errors.hpp"
#include "enaqt/version.hpp"
#include "enaqt_cli/commands.hpp"
#include "enaqt_cli/config_file.hpp"

namespace {

using namespace enaqt::cli;

void print_summary(const RunSummary& s) {
  for (const auto& path : s.outputs) std::cout << "wrote " << path << "\n";
  std::cout << "manifest " << s.manifest_path << "\n";
}

CLI::Option* add_config(CLI::App* sub, std::string& path) {
  return sub->add_option("--config", path, "key = value file; command-line flags take precedence");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Environment-assisted quantum transport simulations"};
  app.set_version_flag("--version", std::string(enaqt::version()));
  app.require_subcommand(1);

  FmoSweepConfig fmo;
  std::string fmo_config;
  auto* fmo_cmd = app.add_subcommand("fmo-sweep", "FMO efficiency and transfer time versus dephasing");
  add_config(fmo_cmd, fmo_config);
  fmo_cmd->add_option("--data", fmo.data_path, "FMO Hamiltonian file (checksummed)");
  fmo_cmd->add_option("--gamma-min", fmo.gamma_min, "smallest dephasing rate [ps^-1]");
  fmo_cmd->add_option("--gamma-max", fmo.gamma_max, "largest dephasing rate [ps^-1]");
  fmo_cmd->add_option("--gamma-points", fmo.gamma_points, "log-spaced grid points")->check(CLI::PositiveNumber);
  fmo_cmd->add_flag("--surface", fmo.surface, "also write the (gamma, kappa) transfer-time surface");
  fmo_cmd->add_option("--kappa-min", fmo.kappa_min, "smallest trap rate [ps^-1]");
  fmo_cmd->add_option("--kappa-max", fmo.kappa_max, "largest trap rate [ps^-1]");
  fmo_cmd->add_option("--kappa-points", fmo.kappa_points)->check(CLI::PositiveNumber);
  fmo_cmd->add_option("--trap-rate", fmo.trap_rate, "kappa at site 3 [ps^-1]");
  fmo_cmd->add_option("--recomb-rate", fmo.recomb_rate, "Gamma at every site [ps^-1]");
  fmo_cmd->add_option("--annotate-temperature", fmo.annotate_temperature, "temperature marker [K]");
  fmo_cmd->add_option("--reorganization-energy", fmo.reorganization_energy, "bath E_R [cm^-1]");
  fmo_cmd->add_option("--cutoff", fmo.cutoff, "bath cutoff [cm^-1]");
  fmo_cmd->add_option("--width", fmo.width, "worker threads (0: all cores)");
  fmo_cmd->add_option("--out", fmo.out_dir, "output directory");

  TreeEnsembleConfig tree;
  std::string tree_config, tree_delta;
  auto* tree_cmd = app.add_subcommand("tree-ensemble", "disordered binary-tree ensembles");
  add_config(tree_cmd, tree_config);
  tree_cmd->add_option("--generation", tree.generation)->check(CLI::Range(2, 20));
  tree_cmd->add_option("--samples", tree.samples, "graphs per disorder value")->check(CLI::PositiveNumber);
  tree_cmd->add_option("--seed", tree.seed, "master seed");
  tree_cmd->add_option("--delta-grid", tree_delta, "delta/V values: a,b,c or start:stop:count");
  tree_cmd->add_option("--kind", tree.kind, "coherent | mixture | both");
  tree_cmd->add_option("--coupling", tree.coupling, "V [cm^-1]");
  tree_cmd->add_option("--gamma-over-v", tree.gamma_over_v, "Gamma / V");
  tree_cmd->add_option("--kappa-over-v", tree.kappa_over_v, "kappa / V");
  tree_cmd->add_option("--search-points", tree.search_points, "dephasing grid points")->check(CLI::Range(2, 10000));
  tree_cmd->add_flag("--allow-large", tree.allow_large, "permit generation > 7");
  tree_cmd->add_option("--width", tree.width, "worker threads (0: all cores)");
  tree_cmd->add_option("--out", tree.out_dir, "output directory");

  TwoLevelConfig two;
  std::string two_config;
  auto* two_cmd = app.add_subcommand("two-level", "two-site oracle comparison and dephasing sweep");
  add_config(two_cmd, two_config);
  two_cmd->add_option("--epsilon", two.epsilon, "energy mismatch [cm^-1]");
  two_cmd->add_option("--coupling", two.coupling, "coupling V [cm^-1]");
  two_cmd->add_option("--trap-rate", two.trap_rate, "kappa at site 2 [ps^-1]");
  two_cmd->add_option("--recomb-rate", two.recomb_rate, "Gamma [ps^-1]");
  two_cmd->add_option("--oracle-samples", two.oracle_samples);
  two_cmd->add_option("--tolerance", two.tolerance, "propagator local tolerance");
  two_cmd->add_option("--gamma-min", two.gamma_min);
  two_cmd->add_option("--gamma-max", two.gamma_max);
  two_cmd->add_option("--gamma-points", two.gamma_points)->check(CLI::PositiveNumber);
  two_cmd->add_option("--out", two.out_dir, "output directory");

  PropagateConfig prop;
  std::string prop_config;
  auto* prop_cmd = app.add_subcommand("propagate", "time-propagate a serialized system");
  add_config(prop_cmd, prop_config);
  prop_cmd->add_option("--system", prop.system_path, "system JSON file");
  prop_cmd->add_option("--initial", prop.initial_kind, "single | mixture | coherent");
  prop_cmd->add_option("--sites", prop.initial_sites, "1-based initial sites")->delimiter(',');
  prop_cmd->add_option("--t-final", prop.t_final, "horizon [ps]; default 10 lifetimes");
  prop_cmd->add_option("--horizon-cap", prop.horizon_cap, "cap on the default horizon [ps]");
  prop_cmd->add_option("--samples", prop.samples)->check(CLI::Range(2, 10000000));
  prop_cmd->add_option("--tolerance", prop.tolerance);
  prop_cmd->add_option("--output", prop.output, "CSV file name inside --out");
  prop_cmd->add_option("--out", prop.out_dir, "output directory");

  TemperatureConfig temp;
  auto* temp_cmd = app.add_subcommand("temperature-to-rate", "Ohmic-bath dephasing rate at a temperature");
  temp_cmd->add_option("--temperature", temp.temperature, "[K]");
  temp_cmd->add_option("--reorganization-energy", temp.reorganization_energy, "[cm^-1]");
  temp_cmd->add_option("--cutoff", temp.cutoff, "[cm^-1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*fmo_cmd) {
      if (!fmo_config.empty()) apply_config_file(*fmo_cmd, fmo_config);
      print_summary(cmd_fmo_sweep(fmo));
    } else if (*tree_cmd) {
      if (!tree_config.empty()) apply_config_file(*tree_cmd, tree_config);
      if (!tree_delta.empty()) tree.delta_grid = parse_grid(tree_delta);
      print_summary(cmd_tree_ensemble(tree));
    } else if (*two_cmd) {
      if (!two_config.empty()) apply_config_file(*two_cmd, two_config);
      print_summary(cmd_two_level(two));
    } else if (*prop_cmd) {
      if (!prop_config.empty()) apply_config_file(*prop_cmd, prop_config);
      if (prop.system_path.empty()) throw enaqt::ConfigurationError("--system is required");
      print_summary(cmd_propagate(prop));
    } else if (*temp_cmd) {
      std::cout << cmd_temperature_to_rate(temp).dump(2) << "\n";
    }
  } catch (const enaqt::ConfigurationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
