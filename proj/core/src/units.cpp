#include "enaqt/units.hpp"

#include <numbers>

namespace enaqt {

double UnitConvention::cm_to_angular() const noexcept {
  return 2.0 * std::numbers::pi * speed_of_light_cm_per_ps;
}

}  // namespace enaqt
