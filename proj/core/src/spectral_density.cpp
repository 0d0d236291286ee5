#include "enaqt/spectral_density.hpp"

#include <cmath>
#include <numbers>

#include "enaqt/errors.hpp"

namespace enaqt {
namespace {

void validate(const OhmicBath& bath) {
  if (!(bath.reorganization_energy_cm > 0.0) || !(bath.cutoff_cm > 0.0) ||
      !std::isfinite(bath.reorganization_energy_cm) || !std::isfinite(bath.cutoff_cm)) {
    throw DomainError("Ohmic bath needs positive reorganization energy and cutoff");
  }
}

}  // namespace

double spectral_density(const OhmicBath& bath, double omega_cm) {
  validate(bath);
  if (!(omega_cm >= 0.0)) throw DomainError("spectral density is defined for omega >= 0");
  return bath.reorganization_energy_cm / bath.cutoff_cm * omega_cm * std::exp(-omega_cm / bath.cutoff_cm);
}

DephasingRate dephasing_rate(const OhmicBath& bath, double kelvin, const UnitConvention& units) {
  validate(bath);
  if (!(kelvin > 0.0) || !std::isfinite(kelvin)) throw DomainError("temperature must be positive");
  const double rate_cm = 2.0 * std::numbers::pi * units.thermal_energy_cm(kelvin) *
                         bath.reorganization_energy_cm / bath.cutoff_cm;
  return {rate_cm, units.to_angular(rate_cm)};
}

}  // namespace enaqt
