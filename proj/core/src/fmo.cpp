#include "enaqt/fmo.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "enaqt/checksum.hpp"
#include "enaqt/errors.hpp"
#include "enaqt/spectral_density.hpp"
#include "enaqt/sweep.hpp"

namespace enaqt {
namespace {

constexpr const char* kDataFile = "fmo_hamiltonian.txt";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataIntegrityError("FMO data file '" + path + "' is missing or unreadable");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string default_fmo_data_path() {
  namespace fs = std::filesystem;
  if (const char* env = std::getenv("ENAQT_DATA_DIR"); env != nullptr && *env != '\0') {
    return (fs::path(env) / kDataFile).string();
  }
  const fs::path source = fs::path(ENAQT_SOURCE_DATA_DIR) / kDataFile;
  if (fs::exists(source)) return source.string();
  return (fs::path(ENAQT_INSTALL_DATA_DIR) / kDataFile).string();
}

FmoHamiltonianData read_fmo_hamiltonian(const std::string& path) {
  const std::string bytes = read_all(path);
  const std::string sidecar = path + ".sha256";
  std::ifstream side(sidecar);
  std::string expected;
  if (!side || !(side >> expected)) {
    throw DataIntegrityError("checksum sidecar '" + sidecar + "' is missing");
  }
  const std::string actual = sha256_hex(bytes);
  if (actual != expected) {
    throw DataIntegrityError("FMO data file '" + path + "' failed its checksum: expected sha256 " +
                             expected + ", got " + actual);
  }

  std::istringstream lines(bytes);
  std::string line;
  bool have_units = false;
  std::vector<double> numbers;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    if (!have_units) {
      if (line != "units cm-1") {
        throw DataIntegrityError(path + ":" + std::to_string(line_no) +
                                 ": expected unit header 'units cm-1'");
      }
      have_units = true;
      continue;
    }
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        numbers.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw DataIntegrityError(path + ":" + std::to_string(line_no) + ": bad number '" + token + "'");
      }
    }
  }
  constexpr std::size_t expected_count = kFmoSites + kFmoSites * (kFmoSites - 1) / 2;
  if (!have_units || numbers.size() != expected_count) {
    throw DataIntegrityError(path + ": expected 7 energies and 21 couplings, found " +
                             std::to_string(numbers.size()) + " numbers");
  }

  FmoHamiltonianData data;
  data.path = path;
  data.sha256 = actual;
  data.site_energies_cm = Eigen::Map<const RealVector>(numbers.data(), kFmoSites);
  data.couplings_cm = RealMatrix::Zero(kFmoSites, kFmoSites);
  std::size_t k = kFmoSites;
  for (int m = 0; m < kFmoSites; ++m) {
    for (int n = m + 1; n < kFmoSites; ++n) {
      data.couplings_cm(m, n) = data.couplings_cm(n, m) = numbers[k++];
    }
  }
  return data;
}

FmoModel load_fmo_model(const std::string& data_path, const FmoOverrides& overrides) {
  FmoHamiltonianData data = read_fmo_hamiltonian(data_path);
  RealVector traps = RealVector::Zero(kFmoSites);
  traps[kFmoTrapSite - 1] = overrides.trap_rate.value_or(kFmoDefaultTrapRate);
  const double gamma =
      overrides.dephasing_rate.value_or(dephasing_rate(OhmicBath{}, kFmoRoomTemperature).angular_ps);
  TransportSystem sys(data.site_energies_cm, data.couplings_cm, std::move(traps),
                      overrides.recomb_rate.value_or(kFmoDefaultRecombRate), gamma);
  InitialState init = overrides.initial_state.value_or(InitialState::mixture({1, 6}));
  initial_density_matrix(init, kFmoSites);  // validates site indices
  return FmoModel{std::move(sys), std::move(init), std::move(data)};
}

std::vector<double> default_gamma_grid() { return log_space(1e-3, 1e5, 60); }

std::vector<double> default_kappa_grid() { return log_space(1e-2, 1e3, 31); }

std::vector<SweepPoint> dephasing_sweep(const FmoModel& model, const std::vector<double>& gamma_grid,
                                        unsigned width) {
  for (double g : gamma_grid) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigurationError("dephasing grid values must be finite and >= 0");
  }
  const DensityMatrix rho0 = model.initial_density();
  SweepPlan<double> plan{gamma_grid, 0, width, 0.0};
  auto outcomes = run_sweep(plan, [&](double gamma, const TaskContext&) {
    return evaluate_transport(model.system.with_dephasing(gamma), rho0);
  });
  std::vector<SweepPoint> out;
  out.reserve(gamma_grid.size());
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) out.push_back({gamma_grid[i], *outcomes[i].value});
  return out;
}

TransferTimeSurface::Cell TransferTimeSurface::argmin() const {
  Cell best{0, 0};
  transfer_time.minCoeff(&best.kappa_index, &best.gamma_index);
  return best;
}

bool TransferTimeSurface::minimum_is_interior() const {
  const Cell c = argmin();
  return c.kappa_index > 0 && c.kappa_index + 1 < transfer_time.rows() && c.gamma_index > 0 &&
         c.gamma_index + 1 < transfer_time.cols();
}

TransferTimeSurface trap_dephasing_surface(const FmoModel& model, const std::vector<double>& gamma_grid,
                                           const std::vector<double>& kappa_grid, unsigned width) {
  for (double g : gamma_grid) {
    if (!(g > 0.0) || !std::isfinite(g)) throw ConfigurationError("surface dephasing grid must be positive");
  }
  for (double k : kappa_grid) {
    if (!(k > 0.0) || !std::isfinite(k)) throw ConfigurationError("surface trapping grid must be positive");
  }
  struct Cell {
    double gamma;
    double kappa;
  };
  SweepPlan<Cell> plan;
  plan.width = width;
  plan.max_failure_fraction = 0.0;
  for (double k : kappa_grid) {
    for (double g : gamma_grid) plan.tasks.push_back({g, k});
  }
  const DensityMatrix rho0 = model.initial_density();
  auto outcomes = run_sweep(plan, [&](const Cell& cell, const TaskContext&) {
    RealVector traps = model.system.trap_rates();
    traps[kFmoTrapSite - 1] = cell.kappa;
    return evaluate_transport(model.system.with_trap_rates(std::move(traps)).with_dephasing(cell.gamma), rho0)
        .transfer_time;
  });

  TransferTimeSurface s{gamma_grid, kappa_grid,
                        RealMatrix(static_cast<Eigen::Index>(kappa_grid.size()),
                                   static_cast<Eigen::Index>(gamma_grid.size()))};
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    s.transfer_time(static_cast<Eigen::Index>(i / gamma_grid.size()),
                    static_cast<Eigen::Index>(i % gamma_grid.size())) = *outcomes[i].value;
  }
  return s;
}

}  // namespace enaqt
