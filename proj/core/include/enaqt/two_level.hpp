#pragma once

#include "enaqt/transport_system.hpp"

namespace enaqt {

/// Two-site system H = (eps/2) sigma_z + (V/2) sigma_x with pure dephasing.
struct TwoLevelParams {
  double energy_mismatch_cm = 0.0;  // eps
  double coupling_cm = 0.0;         // V
  double dephasing_rate = 0.0;      // gamma_phi [ps^-1]
};

/// Omega = sqrt(eps^2 + V^2) in ps^-1.
double larmor_frequency(const TwoLevelParams& p, const UnitConvention& units = kDefaultUnits);

/// Tilt of the rotation axis from z: theta = asin(V / Omega), in [0, pi/2].
double tilt_angle(const TwoLevelParams& p);

/// Coherent Rabi population of site 2 starting from site 1:
/// P2(t) = V^2 / (eps^2 + V^2) sin^2(Omega t / 2). Requires gamma_phi = 0.
///
/// The maximum over t is sin^2(theta), obtained by diagonalising H exactly.
double coherent_population_2(const TwoLevelParams& p, double t_ps,
                             const UnitConvention& units = kDefaultUnits);

/// Order-of-magnitude time to diffuse to the mixed state: (pi / theta)^2 / gamma_phi [ps].
/// Returns +inf for V = 0.
double diffusion_time_estimate(const TwoLevelParams& p);

/// Stationary population of site 2 without traps: 1/2.
double equilibrium_population_2(const TwoLevelParams& p);

/// The equivalent transport system (site energies +-eps/2, coupling V/2), optionally with
/// trapping and recombination.
TransportSystem two_level_system(const TwoLevelParams& p, double trap_rate_site2 = 0.0,
                                 double recomb_rate = 0.0);

}  // namespace enaqt
