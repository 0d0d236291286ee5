#include "enaqt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "enaqt/errors.hpp"
#include "lu_guard.hpp"

namespace enaqt {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void require_shape(const ComplexMatrix& rho, int n) {
  if (rho.rows() != n || rho.cols() != n) {
    throw ConfigurationError("density matrix is " + std::to_string(rho.rows()) + "x" +
                             std::to_string(rho.cols()) + ", system has " + std::to_string(n) +
                             " sites");
  }
}

/// Augmented state: [rho | int rho | int t rho], blocks of N columns.
class Stepper {
public:
  Stepper(ComplexMatrix h_eff, double gamma, bool augmented)
      : h_eff_(std::move(h_eff)), gamma_(gamma), augmented_(augmented), n_(h_eff_.rows()) {}

  ComplexMatrix derivative(double t, const ComplexMatrix& y) const {
    ComplexMatrix dy(n_, y.cols());
    dy.leftCols(n_) = master_equation_rhs(h_eff_, gamma_, y.leftCols(n_));
    if (augmented_) {
      dy.middleCols(n_, n_) = y.leftCols(n_);
      dy.rightCols(n_) = t * y.leftCols(n_);
    }
    return dy;
  }

  ComplexMatrix rk4(double t, const ComplexMatrix& y, const ComplexMatrix& k1, double h) const {
    const ComplexMatrix k2 = derivative(t + 0.5 * h, y + (0.5 * h) * k1);
    const ComplexMatrix k3 = derivative(t + 0.5 * h, y + (0.5 * h) * k2);
    const ComplexMatrix k4 = derivative(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  Eigen::Index n() const { return n_; }

private:
  ComplexMatrix h_eff_;
  double gamma_;
  bool augmented_;
  Eigen::Index n_;
};

std::vector<double> sample_grid(double t_final, const PropagationOptions& options) {
  std::vector<double> times;
  if (options.sample_times.empty()) {
    const int count = std::max(options.n_samples, 2);
    for (int i = 0; i < count; ++i) {
      times.push_back(i + 1 == count ? t_final : t_final * i / (count - 1));
    }
    return times;
  }
  times = options.sample_times;
  if (!std::is_sorted(times.begin(), times.end()) ||
      std::adjacent_find(times.begin(), times.end()) != times.end()) {
    throw ConfigurationError("sample times must be strictly increasing");
  }
  if (times.front() < 0.0 || times.back() > t_final) {
    throw ConfigurationError("sample times must lie within [0, t_final]");
  }
  if (times.front() != 0.0) times.insert(times.begin(), 0.0);
  return times;
}

}  // namespace

ComplexMatrix master_equation_rhs(const ComplexMatrix& h_eff, double dephasing_rate,
                                  const ComplexMatrix& rho) {
  ComplexMatrix out = -kI * (h_eff * rho - rho * h_eff.adjoint());
  if (dephasing_rate != 0.0) {
    ComplexMatrix off = rho;
    off.diagonal().setZero();
    out -= dephasing_rate * off;
  }
  return out;
}

ComplexMatrix master_equation_rhs(const TransportSystem& sys, const ComplexMatrix& rho) {
  require_shape(rho, sys.n_sites());
  return master_equation_rhs(effective_hamiltonian(sys), sys.dephasing_rate(), rho);
}

Eigen::VectorXcd vectorize(const ComplexMatrix& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

ComplexMatrix unvectorize(const Eigen::VectorXcd& v, int n_sites) {
  if (v.size() != static_cast<Eigen::Index>(n_sites) * n_sites) {
    throw ConfigurationError("vector length does not match N^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), n_sites, n_sites);
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
  require_shape(rho, n_sites);
  return unvectorize(matrix * vectorize(rho), n_sites);
}

Liouvillian build_liouvillian(const TransportSystem& sys) {
  const int n = sys.n_sites();
  const ComplexMatrix h = effective_hamiltonian(sys);
  const ComplexMatrix conj_h = h.conjugate();
  const Eigen::Index dim = static_cast<Eigen::Index>(n) * n;

  // vec(H rho) = (I (x) H) vec(rho); vec(rho H^dagger) = (conj(H) (x) I) vec(rho).
  Liouvillian l{n, ComplexMatrix::Zero(dim, dim)};
  for (int col = 0; col < n; ++col) {
    l.matrix.block(col * n, col * n, n, n) += -kI * h;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const std::complex<double> c = kI * conj_h(a, b);
      if (c == 0.0) continue;
      for (int row = 0; row < n; ++row) l.matrix(a * n + row, b * n + row) += c;
    }
  }
  const double gamma = sys.dephasing_rate();
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) {
      if (row != col) l.matrix(col * n + row, col * n + row) -= gamma;
    }
  }
  return l;
}

Trajectory propagate(const TransportSystem& sys, const DensityMatrix& rho0, double t_final,
                     const PropagationOptions& options) {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw ConfigurationError("t_final must be a positive finite time");
  }
  if (!(options.local_tolerance > 0.0)) throw ConfigurationError("local tolerance must be positive");
  require_shape(rho0.data, sys.n_sites());

  const std::vector<double> samples = sample_grid(t_final, options);
  const Eigen::Index n = sys.n_sites();
  Stepper stepper(effective_hamiltonian(sys), sys.dephasing_rate(), options.track_integrals);

  ComplexMatrix y = ComplexMatrix::Zero(n, options.track_integrals ? 3 * n : n);
  y.leftCols(n) = rho0.data;

  Trajectory traj;
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.states.push_back(DensityMatrix{y.leftCols(n)});
  };

  double t = 0.0;
  double h = std::min(options.initial_step_ps, options.max_step_ps);
  std::size_t next = 0;
  if (samples.front() == 0.0) {
    record(0.0);
    ++next;
  }

  bool stopped = false;
  while (next < samples.size() && !stopped) {
    const double target = samples[next];
    while (t < target) {
      const double remaining = target - t;
      const bool lands = h >= remaining;
      const double step = lands ? remaining : h;

      const ComplexMatrix k1 = stepper.derivative(t, y);
      const ComplexMatrix full = stepper.rk4(t, y, k1, step);
      const ComplexMatrix half = stepper.rk4(t, y, k1, 0.5 * step);
      const ComplexMatrix two_half =
          stepper.rk4(t + 0.5 * step, half, stepper.derivative(t + 0.5 * step, half), 0.5 * step);

      const double scale = std::max(two_half.leftCols(n).norm(), std::numeric_limits<double>::min());
      const double err = (two_half.leftCols(n) - full.leftCols(n)).norm() / 15.0;
      const double allowed = options.local_tolerance * scale;

      if (err <= allowed) {
        y = two_half + (two_half - full) / 15.0;
        t = lands ? target : t + step;
        ++traj.accepted_steps;
        const double grow = err == 0.0 ? 4.0 : std::min(4.0, 0.9 * std::pow(allowed / err, 0.2));
        if (!lands || grow < 1.0) h = std::min(step * grow, options.max_step_ps);
        if (options.stop_trace_below && y.leftCols(n).trace().real() < *options.stop_trace_below) {
          if (!lands) record(t);
          stopped = true;
          break;
        }
      } else {
        ++traj.rejected_steps;
        h = step * std::max(0.2, 0.9 * std::pow(allowed / err, 0.2));
        if (h < options.min_step_ps) {
          char msg[160];
          std::snprintf(msg, sizeof msg,
                        "step size underflow (%.3g ps < %.3g ps) at t = %.9g ps; system too stiff",
                        h, options.min_step_ps, t);
          throw StiffnessError(msg, t);
        }
      }
    }
    if (t == target) {
      record(t);
      ++next;
    }
  }

  if (options.track_integrals) {
    traj.first_moment = y.middleCols(n, n);
    traj.second_moment = y.rightCols(n);
  }
  return traj;
}

double default_horizon(const TransportSystem& sys, double cap_ps) {
  double min_kappa = std::numeric_limits<double>::infinity();
  for (Eigen::Index m = 0; m < sys.trap_rates().size(); ++m) {
    if (sys.trap_rates()[m] > 0.0) min_kappa = std::min(min_kappa, sys.trap_rates()[m]);
  }
  if (!std::isfinite(min_kappa)) min_kappa = 0.0;
  const double rate = 2.0 * sys.recomb_rate() + min_kappa;
  if (rate <= 0.0) return cap_ps;
  return std::min(10.0 / rate, cap_ps);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const int n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
  out << "t_ps";
  for (int m = 1; m <= n; ++m) out << ",p_" << m;
  out << ",trace,coherence_l1\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    const DensityMatrix& rho = trajectory.states[i];
    put(trajectory.times[i]);
    for (int m = 0; m < n; ++m) {
      out << ',';
      put(rho.data(m, m).real());
    }
    out << ',';
    put(rho.trace());
    out << ',';
    put(rho.coherence_l1());
    out << '\n';
  }
}

IntegratedState integrated_state(const TransportSystem& sys, const DensityMatrix& rho0) {
  const int n = sys.n_sites();
  require_shape(rho0.data, n);
  if (!sys.has_decay_channel()) {
    throw NonConvergentIntegralError(
        "integrals diverge: no trap or recombination channel (Liouvillian has a zero eigenvalue)");
  }
  const Liouvillian l = build_liouvillian(sys);
  const Eigen::PartialPivLU<ComplexMatrix> lu(l.matrix);
  if (detail::lu_is_singular(lu)) {
    throw NonConvergentIntegralError(
        "integrals diverge: Liouvillian numerically singular; likely some initially populated sites "
        "cannot reach a trap or recombination channel");
  }
  const Eigen::VectorXcd s1 = lu.solve(-vectorize(rho0.data));
  const Eigen::VectorXcd s2 = lu.solve(-s1);
  return {unvectorize(s1, n), unvectorize(s2, n)};
}

}  // namespace enaqt
