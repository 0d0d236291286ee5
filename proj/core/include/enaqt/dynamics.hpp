#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "enaqt/transport_system.hpp"

namespace enaqt {

/// Time derivative of rho under the Haken-Strobl master equation with absorbing terms:
///   d rho/dt = -i (H_eff rho - rho H_eff^dagger) + gamma_phi sum_m (A_m rho A_m - {A_m, rho}/2),
/// A_m = |m><m|. The dephasing part damps each off-diagonal element at gamma_phi.
ComplexMatrix master_equation_rhs(const TransportSystem& sys, const ComplexMatrix& rho);

/// Same as above with a precomputed effective Hamiltonian (hot loop of the integrator).
ComplexMatrix master_equation_rhs(const ComplexMatrix& h_eff, double dephasing_rate,
                                  const ComplexMatrix& rho);

/// Superoperator acting on vec(rho), columns stacked: index = col * N + row.
struct Liouvillian {
  int n_sites = 0;
  ComplexMatrix matrix;

  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

Liouvillian build_liouvillian(const TransportSystem& sys);

Eigen::VectorXcd vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const Eigen::VectorXcd& v, int n_sites);

struct PropagationOptions {
  /// Local error bound per accepted step, relative to the state norm.
  double local_tolerance = 1e-9;
  double initial_step_ps = 1e-3;
  double min_step_ps = 1e-9;
  double max_step_ps = 1.0;
  /// Output times; when empty, `n_samples` equally spaced points over [0, t_final].
  std::vector<double> sample_times;
  int n_samples = 101;
  /// Carry int rho dt and int t rho dt alongside the state.
  bool track_integrals = false;
  /// Stop early (after recording the current state) once Tr rho drops below this value.
  std::optional<double> stop_trace_below;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  /// Running integrals at the last sample, present when track_integrals was set.
  std::optional<ComplexMatrix> first_moment;   // int_0^t rho
  std::optional<ComplexMatrix> second_moment;  // int_0^t s rho(s) ds
  long accepted_steps = 0;
  long rejected_steps = 0;
};

/// Classic RK4 with step-doubling error control and local extrapolation.
Trajectory propagate(const TransportSystem& sys, const DensityMatrix& rho0, double t_final,
                     const PropagationOptions& options = {});

/// min(10 / (2 Gamma + min active kappa), cap); cap when nothing decays.
double default_horizon(const TransportSystem& sys, double cap_ps);

/// Header `t_ps,p_1,...,p_N,trace,coherence_l1`.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

struct IntegratedState {
  ComplexMatrix first;   // S1 = int_0^inf rho dt  [ps]
  ComplexMatrix second;  // S2 = int_0^inf t rho dt  [ps^2]
};

/// Closed-form infinite-horizon integrals from L vec(S1) = -vec(rho0), L vec(S2) = -vec(S1),
/// solved with a dense partial-pivoting LU.
IntegratedState integrated_state(const TransportSystem& sys, const DensityMatrix& rho0);

/// Reciprocal condition threshold above which the Liouvillian is treated as singular.
inline constexpr double kMaxLiouvillianCondition = 1e12;

/// Alternative closed-form route for the same integrals.
///
/// With the dephasing term split off, L(S) = K(S) + gamma diag(S) where
/// K(X) = -i (H X - X H^dagger) - gamma X is a Sylvester operator. A complex Schur
/// factorisation of H_eff (independent of gamma) makes K^{-1} an O(N^3) triangular solve,
/// and the diagonal of S follows from an N x N linear system. Cost per gamma is O(N^4)
/// instead of the O(N^6) of the dense Liouvillian LU, which is what makes dephasing
/// optimisation over disorder ensembles affordable.
class SchurIntegrals {
public:
  SchurIntegrals(const TransportSystem& sys, const DensityMatrix& rho0);

  /// diag(S1) at the given dephasing rate.
  RealVector populations(double dephasing_rate) const;
  /// Full S1 and S2 at the given dephasing rate.
  IntegratedState integrals(double dephasing_rate) const;

  const TransportSystem& system() const noexcept { return sys_; }

private:
  ComplexMatrix sylvester_inverse(const ComplexMatrix& rhs, double dephasing_rate) const;
  ComplexMatrix population_coupling(double dephasing_rate) const;
  RealVector solve_populations(const ComplexMatrix& coupling, const ComplexMatrix& k_inv_rhs,
                               double dephasing_rate) const;

  TransportSystem sys_;
  ComplexMatrix rho0_;
  ComplexMatrix schur_q_;
  ComplexMatrix schur_t_;
};

}  // namespace enaqt
