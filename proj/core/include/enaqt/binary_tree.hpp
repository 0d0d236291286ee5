#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "enaqt/observables.hpp"

namespace enaqt {

inline constexpr int kMaxTreeGeneration = 7;

/// Disordered binary tree of generation g: 2^g - 1 sites, site m coupled to 2m and 2m+1.
struct TreeSpec {
  int generation = 4;
  double coupling_cm = 100.0;     // V
  double mean_energy_cm = 0.0;    // eps_0
  double disorder_cm = 0.0;       // delta, standard deviation of the site energies
  double trap_rate = 0.0;         // kappa at site 1 [ps^-1]
  double recomb_rate = 0.0;       // Gamma at every site [ps^-1]
  std::uint64_t rng_seed = 0;
  bool allow_large = false;       // lift the generation <= 7 guard

  int n_sites() const noexcept { return (1 << generation) - 1; }
  /// V as an angular frequency [ps^-1].
  double coupling_rate(const UnitConvention& units = kDefaultUnits) const {
    return units.to_angular(coupling_cm);
  }

  /// Rates set relative to the coupling: Gamma = gamma_over_v V, kappa = kappa_over_v V.
  static TreeSpec with_relative_rates(int generation, double coupling_cm, double gamma_over_v = 0.005,
                                      double kappa_over_v = 2.0);
};

/// Site energies eps_0 + delta z_m with z_m standard normals from CounterRng(rng_seed).
TransportSystem generate_tree(const TreeSpec& spec);

/// Leaves {2^(g-1), ..., 2^g - 1} as a uniform mixture or uniform coherent superposition.
InitialState leaf_initial_state(const TreeSpec& spec, InitialState::Kind kind);

struct DephasingSearchConfig {
  int grid_points = 40;
  double low_factor = 1e-3;   // grid spans [low_factor, high_factor] x scale
  double high_factor = 1e3;
  /// Angular-frequency scale of the grid; <= 0 uses the largest |coupling| of the system.
  double scale = 0.0;
  double relative_tolerance = 1e-3;
  int max_refinement_iterations = 100;
};

struct OptimalDephasing {
  double dephasing_rate = 0.0;  // gamma_phi* [ps^-1]
  double efficiency = 0.0;      // eta*
  double efficiency_at_zero = 0.0;
  int evaluations = 0;
};

/// Maximises eta over gamma_phi >= 0: log-grid scan plus the gamma = 0 endpoint, then a
/// golden-section refinement in log(gamma) on the bracketing cells. The grid winner is kept
/// if refinement does not improve on it, so eta* >= eta(0) always holds.
OptimalDephasing optimal_dephasing(const TransportSystem& sys, const DensityMatrix& rho0,
                                   const DephasingSearchConfig& config = {});

struct EnsembleRecord {
  double delta_over_v = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_ok = 0;
  double eta_quantum_mean = 0.0;
  double eta_quantum_std = 0.0;
  double eta_opt_mean = 0.0;
  double eta_opt_std = 0.0;
  double gamma_opt_mean = 0.0;  // ps^-1
  double gamma_opt_std = 0.0;
};

struct DisorderEnsembleReport {
  InitialState::Kind kind = InitialState::Kind::Mixture;
  std::uint64_t master_seed = 0;
  std::vector<EnsembleRecord> records;
  /// Per-sample results in (delta index, sample index) order, failed samples omitted.
  struct Sample {
    std::size_t delta_index;
    std::size_t sample_index;
    double eta_quantum;
    OptimalDephasing optimum;
  };
  std::vector<Sample> samples;
};

struct EnsembleConfig {
  std::vector<double> delta_over_v;  // disorder grid in units of V
  std::size_t n_samples = 100;
  InitialState::Kind kind = InitialState::Kind::Mixture;
  std::uint64_t master_seed = 0;
  unsigned width = 0;
  double max_failure_fraction = 0.05;
  DephasingSearchConfig search;
};

/// 20 points, delta / V over [0, 4].
std::vector<double> default_delta_grid();

/// Seed of sample `sample` at disorder index `delta_index`.
std::uint64_t ensemble_sample_seed(std::uint64_t master_seed, std::size_t delta_index, std::size_t sample);

/// For each delta and sample: eta(gamma_phi = 0) and the optimal-dephasing pair, aggregated
/// to means and sample standard deviations. `spec_template` supplies g, V, eps_0 and rates.
DisorderEnsembleReport disorder_ensemble(const TreeSpec& spec_template, const EnsembleConfig& config);

/// `delta_over_V,kind,n_ok,eta_quantum_mean,...,gamma_opt_std_ps`.
std::string ensemble_csv_header();
std::vector<std::string> ensemble_csv_rows(const DisorderEnsembleReport& report);

}  // namespace enaqt
