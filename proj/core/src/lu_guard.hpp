#pragma once

#include <Eigen/Dense>

#include "enaqt/dynamics.hpp"

namespace enaqt::detail {

/// Eigen's reciprocal-condition estimate breaks down on exactly zero pivots (it can report 1),
/// so the pivot spread is checked as well.
inline bool lu_is_singular(const Eigen::PartialPivLU<ComplexMatrix>& lu) {
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (pivots.size() == 0) return false;
  const double spread = pivots.minCoeff() / pivots.maxCoeff();
  return !(spread * kMaxLiouvillianCondition > 1.0) || !(lu.rcond() * kMaxLiouvillianCondition > 1.0);
}

}  // namespace enaqt::detail
