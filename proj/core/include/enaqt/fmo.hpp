#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enaqt/observables.hpp"

namespace enaqt {

inline constexpr int kFmoSites = 7;
inline constexpr int kFmoTrapSite = 3;
inline constexpr double kFmoDefaultTrapRate = 1.0;  // ps^-1
/// Population lifetime 1/(2 Gamma) = 1 ns.
inline constexpr double kFmoDefaultRecombRate = 0.0005;  // ps^-1
inline constexpr double kFmoRoomTemperature = 300.0;     // K

struct FmoHamiltonianData {
  RealVector site_energies_cm;
  RealMatrix couplings_cm;
  std::string path;
  std::string sha256;
};

/// Bundled data file: $ENAQT_DATA_DIR, then the source tree, then the install prefix.
std::string default_fmo_data_path();

/// Parses the plain-text Hamiltonian after checking it against the `<path>.sha256` sidecar.
FmoHamiltonianData read_fmo_hamiltonian(const std::string& path);

struct FmoOverrides {
  std::optional<double> trap_rate;       // kappa_3
  std::optional<double> recomb_rate;     // Gamma
  std::optional<double> dephasing_rate;  // gamma_phi; default is the 300 K Ohmic estimate
  std::optional<InitialState> initial_state;
};

struct FmoModel {
  TransportSystem system;
  InitialState initial_state;
  FmoHamiltonianData data;

  DensityMatrix initial_density() const { return initial_density_matrix(initial_state, system.n_sites()); }
};

/// Seven-site FMO transport problem: trap on site 3, recombination everywhere, initial
/// mixture of sites 1 and 6.
FmoModel load_fmo_model(const std::string& data_path = default_fmo_data_path(),
                        const FmoOverrides& overrides = {});

/// 60 points, log-spaced over [1e-3, 1e5] ps^-1.
std::vector<double> default_gamma_grid();
/// 31 points, log-spaced over [1e-2, 1e3] ps^-1.
std::vector<double> default_kappa_grid();

struct SweepPoint {
  double dephasing_rate;
  TransportResult result;
};

/// One TransportResult per dephasing rate, in grid order.
std::vector<SweepPoint> dephasing_sweep(const FmoModel& model, const std::vector<double>& gamma_grid,
                                        unsigned width = 0);

struct TransferTimeSurface {
  std::vector<double> gamma_grid;
  std::vector<double> kappa_grid;
  RealMatrix transfer_time;  // rows: kappa, cols: gamma [ps]

  struct Cell {
    Eigen::Index kappa_index;
    Eigen::Index gamma_index;
  };
  Cell argmin() const;
  bool minimum_is_interior() const;
};

/// tau(gamma_phi, kappa_3) over the product grid; kappa replaces the site-3 trap rate.
TransferTimeSurface trap_dephasing_surface(const FmoModel& model, const std::vector<double>& gamma_grid,
                                           const std::vector<double>& kappa_grid, unsigned width = 0);

}  // namespace enaqt
