#include "enaqt/two_level.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "enaqt/errors.hpp"

namespace enaqt {
namespace {

void require_finite(const TwoLevelParams& p) {
  if (!std::isfinite(p.energy_mismatch_cm) || !std::isfinite(p.coupling_cm) ||
      !std::isfinite(p.dephasing_rate) || p.dephasing_rate < 0.0) {
    throw DomainError("two-level parameters must be finite with non-negative dephasing");
  }
}

}  // namespace

double larmor_frequency(const TwoLevelParams& p, const UnitConvention& units) {
  require_finite(p);
  return units.to_angular(std::hypot(p.energy_mismatch_cm, p.coupling_cm));
}

double tilt_angle(const TwoLevelParams& p) {
  require_finite(p);
  const double norm = std::hypot(p.energy_mismatch_cm, p.coupling_cm);
  if (norm == 0.0) return 0.0;
  return std::asin(std::min(1.0, std::abs(p.coupling_cm) / norm));
}

double coherent_population_2(const TwoLevelParams& p, double t_ps, const UnitConvention& units) {
  require_finite(p);
  if (p.dephasing_rate != 0.0) {
    throw DomainError("coherent population formula requires zero dephasing");
  }
  const double norm2 = p.energy_mismatch_cm * p.energy_mismatch_cm + p.coupling_cm * p.coupling_cm;
  if (norm2 == 0.0) return 0.0;
  const double s = std::sin(0.5 * larmor_frequency(p, units) * t_ps);
  return p.coupling_cm * p.coupling_cm / norm2 * s * s;
}

double diffusion_time_estimate(const TwoLevelParams& p) {
  require_finite(p);
  if (p.dephasing_rate <= 0.0) {
    throw DomainError("diffusion time estimate undefined without dephasing");
  }
  const double theta = tilt_angle(p);
  if (theta == 0.0) return std::numeric_limits<double>::infinity();
  const double steps = std::numbers::pi / theta;
  return steps * steps / p.dephasing_rate;
}

double equilibrium_population_2(const TwoLevelParams& p) {
  require_finite(p);
  if (p.coupling_cm == 0.0) {
    throw DomainError("no mixing: with V = 0 the site populations are conserved");
  }
  if (p.dephasing_rate <= 0.0) {
    throw DomainError("coherent evolution has no stationary state; dephasing must be positive");
  }
  return 0.5;
}

TransportSystem two_level_system(const TwoLevelParams& p, double trap_rate_site2, double recomb_rate) {
  require_finite(p);
  RealVector energies(2);
  energies << 0.5 * p.energy_mismatch_cm, -0.5 * p.energy_mismatch_cm;
  RealMatrix couplings = RealMatrix::Zero(2, 2);
  couplings(0, 1) = couplings(1, 0) = 0.5 * p.coupling_cm;
  RealVector traps(2);
  traps << 0.0, trap_rate_site2;
  return TransportSystem(energies, couplings, traps, recomb_rate, p.dephasing_rate);
}

}  // namespace enaqt
