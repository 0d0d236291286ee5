#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "enaqt/random.hpp"
#include "enaqt/transport_system.hpp"

namespace enaqt::test_support {

inline double uniform(CounterRng& rng, double lo, double hi) { return lo + (hi - lo) * rng.next_open_unit(); }

/// Random Hermitian matrix with unit trace (not necessarily positive).
inline ComplexMatrix random_hermitian(CounterRng& rng, int n) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = {rng.next_normal(), rng.next_normal()};
  }
  ComplexMatrix h = a + a.adjoint();
  return h / h.trace();
}

/// Random density matrix: normalised A A^dagger.
inline DensityMatrix random_density(CounterRng& rng, int n) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = {rng.next_normal(), rng.next_normal()};
  }
  ComplexMatrix rho = a * a.adjoint();
  return {rho / rho.trace().real()};
}

struct RandomSystemBounds {
  double energy_cm = 200.0;
  double coupling_cm = 100.0;
  double recomb_lo = 0.0;
  double recomb_hi = 0.01;
  double trap_lo = 0.5;
  double trap_hi = 2.0;
  double dephasing_lo = 0.0;
  double dephasing_hi = 100.0;
};

/// Connected random network (a random spanning chain plus extra couplings) with one trap.
inline TransportSystem random_system(CounterRng& rng, int n, const RandomSystemBounds& b = {}) {
  RealVector energies(n);
  for (int i = 0; i < n; ++i) energies[i] = uniform(rng, -b.energy_cm, b.energy_cm);
  RealMatrix couplings = RealMatrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double v = uniform(rng, 0.2, 1.0) * b.coupling_cm * (rng.next_u64() & 1 ? 1.0 : -1.0);
    couplings(i, i + 1) = couplings(i + 1, i) = v;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (rng.next_open_unit() < 0.3) couplings(i, j) = couplings(j, i) = uniform(rng, -1.0, 1.0) * b.coupling_cm;
    }
  }
  RealVector traps = RealVector::Zero(n);
  traps[static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(n))] = uniform(rng, b.trap_lo, b.trap_hi);
  return TransportSystem(energies, couplings, traps, uniform(rng, b.recomb_lo, b.recomb_hi),
                         uniform(rng, b.dephasing_lo, b.dephasing_hi));
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace enaqt::test_support
