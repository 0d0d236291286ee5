#pragma once

#include <string>
#include <vector>

#include "enaqt/dynamics.hpp"

namespace enaqt {

/// Transport figures of merit for one (system, initial state) pair.
struct TransportResult {
  double efficiency = 0.0;        // eta, dimensionless
  double transfer_time = 0.0;     // tau [ps]; NaN when eta is below kMinEfficiencyForTime
  double loss_probability = 0.0;  // recombination channel
  RealVector site_integrals;      // int rho_mm dt [ps]
};

inline constexpr double kObservableSlack = 1e-8;
inline constexpr double kMinEfficiencyForTime = 1e-12;

/// eta = 2 sum_m kappa_m S1_mm. Round-off excursions within 1e-8 of [0, 1] are clamped
/// with a warning on stderr; anything larger throws NumericalConsistencyError.
double efficiency(const TransportSystem& sys, const ComplexMatrix& s1);

/// eta from precomputed populations diag(S1).
double efficiency(const TransportSystem& sys, const RealVector& populations);

/// tau = (2 / eta) sum_m kappa_m S2_mm.
double transfer_time(const TransportSystem& sys, const ComplexMatrix& s2, double eta);

/// 2 Gamma sum_m S1_mm.
double loss_probability(const TransportSystem& sys, const ComplexMatrix& s1);

TransportResult transport_result(const TransportSystem& sys, const IntegratedState& integrals);

/// integrated_state + transport_result.
TransportResult evaluate_transport(const TransportSystem& sys, const DensityMatrix& rho0);

/// Flat record `eta,tau_ps,loss,s_1,...,s_N`.
std::string csv_header(const TransportResult& result);
std::string csv_row(const TransportResult& result);

}  // namespace enaqt
