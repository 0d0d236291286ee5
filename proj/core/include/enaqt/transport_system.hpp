#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "enaqt/units.hpp"

namespace enaqt {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Single-excitation tight-binding network with trapping, recombination and pure dephasing.
///
/// Energies are stored as given (cm^-1); rates in ps^-1. The object is immutable once built;
/// the constructor validates shapes, coupling symmetry and rate signs.
class TransportSystem {
public:
  TransportSystem(RealVector site_energies_cm, RealMatrix couplings_cm, RealVector trap_rates,
                  double recomb_rate, double dephasing_rate);

  int n_sites() const noexcept { return static_cast<int>(site_energies_.size()); }
  const RealVector& site_energies() const noexcept { return site_energies_; }
  const RealMatrix& couplings() const noexcept { return couplings_; }
  const RealVector& trap_rates() const noexcept { return trap_rates_; }
  double recomb_rate() const noexcept { return recomb_rate_; }
  double dephasing_rate() const noexcept { return dephasing_rate_; }

  /// True when some site loses population (a trap or recombination is active).
  bool has_decay_channel() const noexcept;

  TransportSystem with_dephasing(double rate) const;
  TransportSystem with_trap_rates(RealVector rates) const;
  TransportSystem with_recomb_rate(double rate) const;

  /// Hermitian tight-binding part, converted to angular frequency (ps^-1).
  RealMatrix hamiltonian(const UnitConvention& units = kDefaultUnits) const;

  /// Structured-text (JSON) form with unit-tagged energies and rates.
  std::string to_text() const;
  static TransportSystem from_text(const std::string& text);

  friend bool operator==(const TransportSystem&, const TransportSystem&) = default;

private:
  RealVector site_energies_;
  RealMatrix couplings_;
  RealVector trap_rates_;
  double recomb_rate_;
  double dephasing_rate_;
};

/// H_eff = H_S - i Gamma sum|m><m| - i sum kappa_m |m><m| in ps^-1 (hbar = 1).
ComplexMatrix effective_hamiltonian(const TransportSystem& sys,
                                    const UnitConvention& units = kDefaultUnits);

/// Single-excitation density matrix in the site basis.
struct DensityMatrix {
  ComplexMatrix data;

  int size() const noexcept { return static_cast<int>(data.rows()); }
  double trace() const { return data.trace().real(); }
  RealVector populations() const { return data.diagonal().real(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;
  /// Sum of |rho_mn| over m != n.
  double coherence_l1() const;
};

struct InitialState {
  enum class Kind { SingleSite, Mixture, Superposition };

  Kind kind = Kind::SingleSite;
  std::vector<int> sites;  // 1-based

  static InitialState single_site(int site) { return {Kind::SingleSite, {site}}; }
  static InitialState mixture(std::vector<int> sites) { return {Kind::Mixture, std::move(sites)}; }
  static InitialState superposition(std::vector<int> sites) {
    return {Kind::Superposition, std::move(sites)};
  }
};

std::string to_string(InitialState::Kind kind);
InitialState::Kind parse_initial_kind(const std::string& name);

DensityMatrix initial_density_matrix(const InitialState& state, int n_sites);

}  // namespace enaqt
