#include "enaqt_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "enaqt/binary_tree.hpp"
#include "enaqt/checksum.hpp"
#include "enaqt/csv.hpp"
#include "enaqt/errors.hpp"
#include "enaqt/fmo.hpp"
#include "enaqt/spectral_density.hpp"
#include "enaqt/sweep.hpp"
#include "enaqt/two_level.hpp"
#include "enaqt/version.hpp"

namespace enaqt::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

json constants_json() {
  const UnitConvention& u = kDefaultUnits;
  return {
      {"speed_of_light_cm_per_ps", u.speed_of_light_cm_per_ps},
      {"cm_to_angular_ps_per_cm", u.cm_to_angular()},
      {"boltzmann_cm_per_kelvin", u.boltzmann_cm_per_kelvin},
      {"hbar", 1.0},
  };
}

/// Creates the output directory and checks that it accepts files.
void prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error("output directory '" + dir + "' cannot be created");
  const fs::path probe = fs::path(dir) / ".enaqt_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw Error("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
}

std::string render_csv(const std::string& header, const std::vector<std::string>& rows) {
  std::string content = header + "\n";
  for (const auto& row : rows) content += row + "\n";
  return content;
}

class OutputSet {
public:
  explicit OutputSet(std::string dir) : dir_(std::move(dir)) {}

  /// Renders everything first; nothing touches the disk until commit().
  void add(const std::string& name, std::string content) { pending_.emplace_back(name, std::move(content)); }

  RunSummary commit(const std::string& subcommand, json config, json extra, Clock::time_point start) {
    prepare_out_dir(dir_);
    RunSummary summary;
    json outputs = json::object();
    for (const auto& [name, content] : pending_) {
      const std::string path = (fs::path(dir_) / name).string();
      write_text_atomically(path, content);
      const std::string expected = sha256_hex(content);
      if (sha256_file(path) != expected) throw Error("validation of '" + path + "' failed after writing");
      outputs[name] = {{"sha256", expected}, {"bytes", content.size()}};
      summary.outputs.push_back(path);
    }
    json manifest = {
        {"tool", "enaqt"},
        {"version", std::string(version())},
        {"subcommand", subcommand},
        {"config", std::move(config)},
        {"constants", constants_json()},
        {"outputs", std::move(outputs)},
        {"wall_time_s", std::chrono::duration<double>(Clock::now() - start).count()},
    };
    for (auto& [key, value] : extra.items()) manifest[key] = value;
    summary.manifest_path = (fs::path(dir_) / (subcommand + "_manifest.json")).string();
    write_text_atomically(summary.manifest_path, manifest.dump(2) + "\n");
    summary.manifest = std::move(manifest);
    return summary;
  }

private:
  std::string dir_;
  std::vector<std::pair<std::string, std::string>> pending_;
};

std::string kind_name(InitialState::Kind kind) { return to_string(kind); }

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  auto number = [&](const std::string& token) {
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return v;
    } catch (const std::exception&) {
      throw ConfigurationError("bad number '" + token + "' in grid '" + text + "'");
    }
  };
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) parts.push_back(part);
  if (sep == ':') {
    if (parts.size() != 3) throw ConfigurationError("range grid must be start:stop:count, got '" + text + "'");
    const double count = number(parts[2]);
    if (count < 1 || count != std::floor(count)) throw ConfigurationError("grid count must be a positive integer");
    return lin_space(number(parts[0]), number(parts[1]), static_cast<int>(count));
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(number(p));
  if (out.empty()) throw ConfigurationError("grid is empty");
  return out;
}

RunSummary cmd_fmo_sweep(const FmoSweepConfig& config) {
  const auto start = Clock::now();
  FmoOverrides overrides;
  overrides.trap_rate = config.trap_rate;
  overrides.recomb_rate = config.recomb_rate;
  const FmoModel model =
      load_fmo_model(config.data_path.empty() ? default_fmo_data_path() : config.data_path, overrides);

  const OhmicBath bath{config.reorganization_energy, config.cutoff};
  const DephasingRate marker = dephasing_rate(bath, config.annotate_temperature);

  const std::vector<double> gammas = log_space(config.gamma_min, config.gamma_max, config.gamma_points);
  const std::vector<SweepPoint> sweep = dephasing_sweep(model, gammas, config.width);

  std::vector<std::string> rows;
  for (const auto& p : sweep) {
    rows.push_back(format_double(p.dephasing_rate) + "," + format_double(p.result.efficiency) + "," +
                   format_double(p.result.transfer_time) + "," + format_double(p.result.loss_probability) +
                   "," + format_double(marker.angular_ps));
  }
  OutputSet out(config.out_dir);
  out.add("fmo_sweep.csv", render_csv("gamma_phi_ps^-1,eta,tau_ps,loss,gamma_phi_at_T_ps^-1", rows));

  const auto best = std::max_element(sweep.begin(), sweep.end(), [](const auto& a, const auto& b) {
    return a.result.efficiency < b.result.efficiency;
  });
  json extra = {
      {"inputs", {{"fmo_data", {{"path", model.data.path}, {"sha256", model.data.sha256}}}}},
      {"annotations",
       {{"temperature_K", config.annotate_temperature},
        {"gamma_phi_at_T_cm^-1", marker.wavenumber_cm},
        {"gamma_phi_at_T_ps^-1", marker.angular_ps},
        {"eta_max", best->result.efficiency},
        {"gamma_at_eta_max_ps^-1", best->dephasing_rate}}},
  };

  if (config.surface) {
    const auto kappas = log_space(config.kappa_min, config.kappa_max, config.kappa_points);
    const TransferTimeSurface surface = trap_dephasing_surface(model, gammas, kappas, config.width);
    std::vector<std::string> srows;
    for (Eigen::Index k = 0; k < surface.transfer_time.rows(); ++k) {
      for (Eigen::Index g = 0; g < surface.transfer_time.cols(); ++g) {
        srows.push_back(format_double(gammas[static_cast<std::size_t>(g)]) + "," +
                        format_double(kappas[static_cast<std::size_t>(k)]) + "," +
                        format_double(surface.transfer_time(k, g)));
      }
    }
    out.add("fmo_surface.csv", render_csv("gamma_phi,kappa_3,tau_ps", srows));
    const auto cell = surface.argmin();
    extra["annotations"]["surface_min_tau_ps"] = surface.transfer_time(cell.kappa_index, cell.gamma_index);
    extra["annotations"]["surface_min_gamma_ps^-1"] = gammas[static_cast<std::size_t>(cell.gamma_index)];
    extra["annotations"]["surface_min_kappa_ps^-1"] = kappas[static_cast<std::size_t>(cell.kappa_index)];
    extra["annotations"]["surface_min_interior"] = surface.minimum_is_interior();
  }

  json cfg = {
      {"data_path", model.data.path}, {"gamma_min", config.gamma_min},   {"gamma_max", config.gamma_max},
      {"gamma_points", config.gamma_points}, {"surface", config.surface}, {"kappa_min", config.kappa_min},
      {"kappa_max", config.kappa_max}, {"kappa_points", config.kappa_points}, {"trap_rate", config.trap_rate},
      {"recomb_rate", config.recomb_rate}, {"annotate_temperature", config.annotate_temperature},
      {"reorganization_energy", config.reorganization_energy}, {"cutoff", config.cutoff},
      {"width", config.width}, {"initial_state", {{"kind", "mixture"}, {"sites", {1, 6}}}},
      {"trap_site", kFmoTrapSite},
  };
  return out.commit("fmo_sweep", std::move(cfg), std::move(extra), start);
}

RunSummary cmd_tree_ensemble(const TreeEnsembleConfig& config) {
  const auto start = Clock::now();
  std::vector<InitialState::Kind> kinds;
  if (config.kind == "both") {
    kinds = {InitialState::Kind::Superposition, InitialState::Kind::Mixture};
  } else {
    const InitialState::Kind k = parse_initial_kind(config.kind);
    if (k == InitialState::Kind::SingleSite) throw ConfigurationError("tree kind must be coherent, mixture or both");
    kinds = {k};
  }
  if (config.samples < 1) throw ConfigurationError("--samples must be >= 1");

  TreeSpec spec = TreeSpec::with_relative_rates(config.generation, config.coupling, config.gamma_over_v,
                                                config.kappa_over_v);
  spec.allow_large = config.allow_large;
  generate_tree(spec);  // size guard and generation check before any work

  EnsembleConfig ens;
  ens.delta_over_v = config.delta_grid.empty() ? default_delta_grid() : config.delta_grid;
  ens.n_samples = config.samples;
  ens.master_seed = config.seed;
  ens.width = config.width;
  ens.search.grid_points = config.search_points;

  OutputSet out(config.out_dir);
  json summaries = json::object();
  for (InitialState::Kind kind : kinds) {
    ens.kind = kind;
    const DisorderEnsembleReport report = disorder_ensemble(spec, ens);
    out.add("tree_ensemble_" + kind_name(kind) + ".csv",
            render_csv(ensemble_csv_header(), ensemble_csv_rows(report)));
    std::size_t ok = 0;
    for (const auto& r : report.records) ok += r.n_ok;
    summaries[kind_name(kind)] = {{"samples_ok", ok},
                                  {"samples_total", report.records.size() * config.samples}};
  }

  json cfg = {
      {"generation", config.generation}, {"samples", config.samples}, {"seed", config.seed},
      {"delta_grid", ens.delta_over_v}, {"kind", config.kind}, {"coupling_cm^-1", config.coupling},
      {"gamma_over_v", config.gamma_over_v}, {"kappa_over_v", config.kappa_over_v},
      {"recomb_rate_ps^-1", spec.recomb_rate}, {"trap_rate_ps^-1", spec.trap_rate},
      {"search_points", config.search_points}, {"allow_large", config.allow_large}, {"width", config.width},
  };
  return out.commit("tree_ensemble", std::move(cfg), {{"ensembles", summaries}}, start);
}

RunSummary cmd_two_level(const TwoLevelConfig& config) {
  const auto start = Clock::now();
  if (config.epsilon == 0.0 && config.coupling == 0.0) {
    throw ConfigurationError("two-level system has no dynamics: epsilon and coupling are both zero");
  }
  if (config.coupling == 0.0) {
    throw ConfigurationError("two-level system has no transport: coupling is zero");
  }
  if (config.oracle_samples < 2) throw ConfigurationError("--oracle-samples must be >= 2");

  const TwoLevelParams coherent{config.epsilon, config.coupling, 0.0};
  const double omega = larmor_frequency(coherent);
  const double t_final = 10.0 / omega;
  PropagationOptions opts;
  opts.local_tolerance = config.tolerance;
  opts.n_samples = config.oracle_samples;
  opts.max_step_ps = t_final / 20.0;
  opts.initial_step_ps = std::min(opts.initial_step_ps, opts.max_step_ps);
  const Trajectory traj = propagate(two_level_system(coherent),
                                    initial_density_matrix(InitialState::single_site(1), 2), t_final, opts);
  std::vector<std::string> oracle_rows;
  double max_diff = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double exact = coherent_population_2(coherent, traj.times[i]);
    const double numeric = traj.states[i].data(1, 1).real();
    max_diff = std::max(max_diff, std::abs(exact - numeric));
    oracle_rows.push_back(format_double(traj.times[i]) + "," + format_double(exact) + "," +
                          format_double(numeric) + "," + format_double(std::abs(exact - numeric)));
  }

  const TransportSystem trapped = two_level_system(coherent, config.trap_rate, config.recomb_rate);
  const DensityMatrix rho0 = initial_density_matrix(InitialState::single_site(1), 2);
  const auto gammas = log_space(config.gamma_min, config.gamma_max, config.gamma_points);
  std::vector<std::string> enaqt_rows;
  std::size_t best = 0;
  std::vector<double> etas;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const TransportResult r = evaluate_transport(trapped.with_dephasing(gammas[i]), rho0);
    etas.push_back(r.efficiency);
    if (r.efficiency > etas[best]) best = i;
    enaqt_rows.push_back(format_double(gammas[i]) + "," + format_double(r.efficiency) + "," +
                         format_double(r.transfer_time) + "," + format_double(r.loss_probability));
  }

  OutputSet out(config.out_dir);
  out.add("two_level_oracle.csv", render_csv("t_ps,p2_oracle,p2_propagated,abs_diff", oracle_rows));
  out.add("two_level_enaqt.csv", render_csv("gamma_phi_ps^-1,eta,tau_ps,loss", enaqt_rows));
  json extra = {{"annotations",
                 {{"larmor_frequency_ps^-1", omega},
                  {"tilt_angle_rad", tilt_angle(coherent)},
                  {"oracle_max_abs_diff", max_diff},
                  {"eta_max", etas[best]},
                  {"gamma_at_eta_max_ps^-1", gammas[best]},
                  {"eta_max_interior", best > 0 && best + 1 < gammas.size()},
                  {"diffusion_time_estimate_at_eta_max_ps",
                   diffusion_time_estimate({config.epsilon, config.coupling, gammas[best]})}}}};
  json cfg = {
      {"epsilon_cm^-1", config.epsilon}, {"coupling_cm^-1", config.coupling}, {"trap_rate", config.trap_rate},
      {"recomb_rate", config.recomb_rate}, {"oracle_samples", config.oracle_samples},
      {"tolerance", config.tolerance}, {"gamma_min", config.gamma_min}, {"gamma_max", config.gamma_max},
      {"gamma_points", config.gamma_points},
  };
  return out.commit("two_level", std::move(cfg), std::move(extra), start);
}

RunSummary cmd_propagate(const PropagateConfig& config) {
  const auto start = Clock::now();
  std::ifstream in(config.system_path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot read system file '" + config.system_path + "'");
  std::stringstream text;
  text << in.rdbuf();
  TransportSystem sys = [&] {
    try {
      return TransportSystem::from_text(text.str());
    } catch (const ConfigurationError& e) {
      throw ConfigurationError(config.system_path + ": " + e.what());
    }
  }();

  InitialState init{parse_initial_kind(config.initial_kind), config.initial_sites};
  const DensityMatrix rho0 = initial_density_matrix(init, sys.n_sites());
  const double t_final = config.t_final > 0.0 ? config.t_final : default_horizon(sys, config.horizon_cap);
  PropagationOptions opts;
  opts.local_tolerance = config.tolerance;
  opts.n_samples = config.samples;
  const Trajectory traj = propagate(sys, rho0, t_final, opts);

  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  OutputSet out(config.out_dir);
  out.add(config.output, csv.str());
  json cfg = {
      {"system_path", config.system_path}, {"system_sha256", sha256_hex(text.str())},
      {"initial_kind", config.initial_kind}, {"initial_sites", config.initial_sites},
      {"t_final_ps", t_final}, {"samples", config.samples}, {"tolerance", config.tolerance},
  };
  json extra = {{"annotations",
                 {{"accepted_steps", traj.accepted_steps}, {"rejected_steps", traj.rejected_steps},
                  {"final_trace", traj.states.back().trace()}}}};
  return out.commit("propagate", std::move(cfg), std::move(extra), start);
}

nlohmann::json cmd_temperature_to_rate(const TemperatureConfig& config) {
  const OhmicBath bath{config.reorganization_energy, config.cutoff};
  const DephasingRate rate = dephasing_rate(bath, config.temperature);
  return {
      {"temperature_K", config.temperature},
      {"reorganization_energy_cm^-1", config.reorganization_energy},
      {"cutoff_cm^-1", config.cutoff},
      {"gamma_phi_cm^-1", rate.wavenumber_cm},
      {"gamma_phi_ps^-1", rate.angular_ps},
  };
}

}  // namespace enaqt::cli
