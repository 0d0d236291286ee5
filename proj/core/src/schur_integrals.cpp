#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "enaqt/dynamics.hpp"
#include "enaqt/errors.hpp"
#include "lu_guard.hpp"

namespace enaqt {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};

}  // namespace

SchurIntegrals::SchurIntegrals(const TransportSystem& sys, const DensityMatrix& rho0)
    : sys_(sys), rho0_(rho0.data) {
  if (rho0_.rows() != sys.n_sites() || rho0_.cols() != sys.n_sites()) {
    throw ConfigurationError("density matrix size does not match the system");
  }
  if (!sys.has_decay_channel()) {
    throw NonConvergentIntegralError(
        "integrals diverge: no trap or recombination channel (Liouvillian has a zero eigenvalue)");
  }
  Eigen::ComplexSchur<ComplexMatrix> schur(effective_hamiltonian(sys));
  if (schur.info() != Eigen::Success) throw NonConvergentIntegralError("Schur factorisation failed");
  schur_q_ = schur.matrixU();
  schur_t_ = schur.matrixT();
}

// Solves -i (H X - X H^dagger) - gamma X = rhs, i.e. A X - X A^dagger = i rhs with
// A = H - i gamma/2. In the Schur basis A is upper triangular and the equation is solved
// entry by entry from the bottom-right corner.
ComplexMatrix SchurIntegrals::sylvester_inverse(const ComplexMatrix& rhs, double dephasing_rate) const {
  const Eigen::Index n = schur_t_.rows();
  const ComplexMatrix c = kI * (schur_q_.adjoint() * rhs * schur_q_);
  const std::complex<double> shift(0.0, -0.5 * dephasing_rate);
  const double scale = schur_t_.cwiseAbs().maxCoeff() + dephasing_rate;

  ComplexMatrix x(n, n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    for (Eigen::Index j = n - 1; j >= 0; --j) {
      std::complex<double> acc = c(i, j);
      for (Eigen::Index k = i + 1; k < n; ++k) acc -= schur_t_(i, k) * x(k, j);
      for (Eigen::Index k = j + 1; k < n; ++k) acc += x(i, k) * std::conj(schur_t_(j, k));
      const std::complex<double> denom =
          (schur_t_(i, i) + shift) - std::conj(schur_t_(j, j) + shift);
      if (std::abs(denom) <= 1e-14 * scale) {
        throw NonConvergentIntegralError(
            "integrals diverge: a coherence between eigenmodes does not decay (no reachable "
            "trap or recombination channel)");
      }
      x(i, j) = acc / denom;
    }
  }
  return schur_q_ * x * schur_q_.adjoint();
}

// M(m, k) = [K^{-1}(|k><k|)]_mm.
ComplexMatrix SchurIntegrals::population_coupling(double dephasing_rate) const {
  const Eigen::Index n = schur_t_.rows();
  ComplexMatrix m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexMatrix unit = ComplexMatrix::Zero(n, n);
    unit(k, k) = 1.0;
    m.col(k) = sylvester_inverse(unit, dephasing_rate).diagonal();
  }
  return m;
}

RealVector SchurIntegrals::solve_populations(const ComplexMatrix& coupling,
                                             const ComplexMatrix& k_inv_rhs,
                                             double dephasing_rate) const {
  const Eigen::Index n = schur_t_.rows();
  const Eigen::VectorXcd b = k_inv_rhs.diagonal();
  if (dephasing_rate == 0.0) return b.real();
  const ComplexMatrix system = ComplexMatrix::Identity(n, n) + dephasing_rate * coupling;
  const Eigen::PartialPivLU<ComplexMatrix> lu(system);
  if (detail::lu_is_singular(lu)) {
    throw NonConvergentIntegralError(
        "integrals diverge: population balance is singular (no reachable decay channel)");
  }
  return lu.solve(b).real();
}

RealVector SchurIntegrals::populations(double dephasing_rate) const {
  if (!(dephasing_rate >= 0.0)) throw DomainError("dephasing rate must be non-negative");
  const ComplexMatrix coupling =
      dephasing_rate == 0.0 ? ComplexMatrix() : population_coupling(dephasing_rate);
  return solve_populations(coupling, sylvester_inverse(-rho0_, dephasing_rate), dephasing_rate);
}

IntegratedState SchurIntegrals::integrals(double dephasing_rate) const {
  if (!(dephasing_rate >= 0.0)) throw DomainError("dephasing rate must be non-negative");
  const ComplexMatrix coupling =
      dephasing_rate == 0.0 ? ComplexMatrix() : population_coupling(dephasing_rate);

  // S = K^{-1}(-source - gamma diag(S)), with diag(S) from the population balance.
  auto solve = [&](const ComplexMatrix& source) {
    const RealVector p = solve_populations(coupling, sylvester_inverse(-source, dephasing_rate),
                                           dephasing_rate);
    ComplexMatrix shifted = source;
    shifted.diagonal() += dephasing_rate * p.cast<std::complex<double>>();
    return sylvester_inverse(-shifted, dephasing_rate);
  };
  IntegratedState out;
  out.first = solve(rho0_);
  out.second = solve(out.first);
  return out;
}

}  // namespace enaqt
