#pragma once

namespace enaqt {

/// Conversion between spectroscopic energies (cm^-1) and angular frequencies (ps^-1, hbar = 1).
///
/// Internally every energy is an angular frequency in ps^-1: E[ps^-1] = 2 pi c E[cm^-1]
/// with c in cm/ps. Temperatures enter through k_B expressed in cm^-1 per kelvin.
struct UnitConvention {
  double speed_of_light_cm_per_ps = 0.0299792458;
  double boltzmann_cm_per_kelvin = 0.695035;

  /// 2 pi c, ps^-1 per cm^-1.
  double cm_to_angular() const noexcept;

  double to_angular(double energy_cm) const noexcept { return energy_cm * cm_to_angular(); }
  double to_wavenumber(double angular_ps) const noexcept { return angular_ps / cm_to_angular(); }

  /// k_B T in cm^-1.
  double thermal_energy_cm(double kelvin) const noexcept { return boltzmann_cm_per_kelvin * kelvin; }
};

inline constexpr UnitConvention kDefaultUnits{};

}  // namespace enaqt
