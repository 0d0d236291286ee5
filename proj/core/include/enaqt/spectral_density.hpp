#pragma once

#include "enaqt/units.hpp"

namespace enaqt {

/// Ohmic bath with exponential cutoff, J(w) = (E_R / w_c) w exp(-w / w_c).
struct OhmicBath {
  double reorganization_energy_cm = 35.0;
  double cutoff_cm = 150.0;
};

struct DephasingRate {
  double wavenumber_cm;  // cm^-1
  double angular_ps;     // ps^-1
};

/// J(omega) with omega in cm^-1; dimensionless.
double spectral_density(const OhmicBath& bath, double omega_cm);

/// Markovian pure-dephasing rate 2 pi k T J'(0) = 2 pi (k T) E_R / w_c.
DephasingRate dephasing_rate(const OhmicBath& bath, double kelvin,
                             const UnitConvention& units = kDefaultUnits);

}  // namespace enaqt
