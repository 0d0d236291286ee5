#include "enaqt/binary_tree.hpp"

#include <cmath>
#include <numbers>

#include "enaqt/csv.hpp"
#include "enaqt/errors.hpp"
#include "enaqt/random.hpp"
#include "enaqt/sweep.hpp"

namespace enaqt {

TreeSpec TreeSpec::with_relative_rates(int generation, double coupling_cm, double gamma_over_v,
                                       double kappa_over_v) {
  TreeSpec spec;
  spec.generation = generation;
  spec.coupling_cm = coupling_cm;
  const double v = spec.coupling_rate();
  spec.recomb_rate = gamma_over_v * std::abs(v);
  spec.trap_rate = kappa_over_v * std::abs(v);
  return spec;
}

TransportSystem generate_tree(const TreeSpec& spec) {
  if (spec.generation < 2) throw ConfigurationError("tree generation must be >= 2");
  if (spec.generation > kMaxTreeGeneration && !spec.allow_large) {
    throw SizeGuardError("tree generation " + std::to_string(spec.generation) +
                         " exceeds the dense Liouvillian budget (g <= 7); set allow_large to override");
  }
  if (spec.generation > 20) throw SizeGuardError("tree generation above 20 is not representable");
  if (!(spec.disorder_cm >= 0.0)) throw ConfigurationError("disorder must be non-negative");

  const int n = spec.n_sites();
  RealVector energies(n);
  CounterRng rng(spec.rng_seed);
  for (int m = 0; m < n; ++m) {
    energies[m] = spec.disorder_cm == 0.0 ? spec.mean_energy_cm
                                          : spec.mean_energy_cm + spec.disorder_cm * rng.next_normal();
  }
  RealMatrix couplings = RealMatrix::Zero(n, n);
  for (int m = 1; m <= (1 << (spec.generation - 1)) - 1; ++m) {
    for (int child : {2 * m, 2 * m + 1}) {
      couplings(m - 1, child - 1) = couplings(child - 1, m - 1) = spec.coupling_cm;
    }
  }
  RealVector traps = RealVector::Zero(n);
  traps[0] = spec.trap_rate;
  return TransportSystem(std::move(energies), std::move(couplings), std::move(traps), spec.recomb_rate, 0.0);
}

InitialState leaf_initial_state(const TreeSpec& spec, InitialState::Kind kind) {
  if (kind == InitialState::Kind::SingleSite) {
    throw ConfigurationError("leaf initial state must be a mixture or a coherent superposition");
  }
  std::vector<int> leaves;
  for (int m = 1 << (spec.generation - 1); m <= spec.n_sites(); ++m) leaves.push_back(m);
  return {kind, std::move(leaves)};
}

OptimalDephasing optimal_dephasing(const TransportSystem& sys, const DensityMatrix& rho0,
                                   const DephasingSearchConfig& config) {
  if (config.grid_points < 2) throw ConfigurationError("dephasing search needs at least 2 grid points");
  double scale = config.scale;
  if (scale <= 0.0) {
    RealMatrix hopping = sys.hamiltonian();
    hopping.diagonal().setZero();
    scale = hopping.cwiseAbs().maxCoeff();
  }
  if (!(scale > 0.0)) throw ConfigurationError("dephasing search scale must be positive (system has no couplings)");

  const SchurIntegrals integrals(sys.with_dephasing(0.0), rho0);
  OptimalDephasing best;
  auto eta = [&](double gamma) {
    ++best.evaluations;
    return efficiency(sys, integrals.populations(gamma));
  };

  const std::vector<double> grid =
      log_space(config.low_factor * scale, config.high_factor * scale, config.grid_points);
  std::vector<double> values(grid.size(), -1.0);
  std::size_t failures = 0;

  best.efficiency_at_zero = eta(0.0);
  best.efficiency = best.efficiency_at_zero;
  best.dephasing_rate = 0.0;
  std::ptrdiff_t best_index = -1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      values[i] = eta(grid[i]);
    } catch (const Error&) {
      ++failures;
      continue;
    }
    if (values[i] > best.efficiency) {
      best.efficiency = values[i];
      best.dephasing_rate = grid[i];
      best_index = static_cast<std::ptrdiff_t>(i);
    }
  }
  if (failures == grid.size()) throw OptimizationError("every dephasing grid evaluation failed");

  // Golden section on log(gamma) over the cells adjacent to the grid winner.
  const std::size_t centre = best_index < 0 ? 0 : static_cast<std::size_t>(best_index);
  double lo = std::log(grid[centre == 0 ? 0 : centre - 1]);
  double hi = std::log(grid[std::min(centre + 1, grid.size() - 1)]);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double tol = std::log1p(config.relative_tolerance);

  auto safe_eta = [&](double log_gamma) {
    try {
      return eta(std::exp(log_gamma));
    } catch (const Error&) {
      return -1.0;
    }
  };
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = safe_eta(c);
  double fd = safe_eta(d);
  for (int it = 0; it < config.max_refinement_iterations && hi - lo > tol; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = safe_eta(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = safe_eta(d);
    }
  }
  const double candidate = fc >= fd ? c : d;
  const double candidate_eta = std::max(fc, fd);
  if (candidate_eta > best.efficiency) {
    best.efficiency = candidate_eta;
    best.dephasing_rate = std::exp(candidate);
  }
  return best;
}

std::vector<double> default_delta_grid() { return lin_space(0.0, 4.0, 20); }

std::uint64_t ensemble_sample_seed(std::uint64_t master_seed, std::size_t delta_index, std::size_t sample) {
  return stable_hash(stable_hash(master_seed, delta_index), sample);
}

DisorderEnsembleReport disorder_ensemble(const TreeSpec& spec_template, const EnsembleConfig& config) {
  if (config.n_samples < 1) throw ConfigurationError("ensemble needs at least one sample");
  if (config.delta_over_v.empty()) throw ConfigurationError("disorder grid is empty");
  for (double d : config.delta_over_v) {
    if (!(d >= 0.0) || !std::isfinite(d)) throw ConfigurationError("disorder values must be finite and >= 0");
  }
  const double v = std::abs(spec_template.coupling_cm);

  struct Task {
    std::size_t delta_index;
    std::size_t sample;
  };
  SweepPlan<Task> plan;
  plan.master_seed = config.master_seed;
  plan.width = config.width;
  plan.max_failure_fraction = config.max_failure_fraction;
  for (std::size_t di = 0; di < config.delta_over_v.size(); ++di) {
    for (std::size_t s = 0; s < config.n_samples; ++s) plan.tasks.push_back({di, s});
  }

  struct Outcome {
    double eta_quantum;
    OptimalDephasing optimum;
  };
  const auto outcomes = run_sweep(plan, [&](const Task& task, const TaskContext&) {
    TreeSpec spec = spec_template;
    spec.disorder_cm = config.delta_over_v[task.delta_index] * v;
    spec.rng_seed = ensemble_sample_seed(config.master_seed, task.delta_index, task.sample);
    const TransportSystem sys = generate_tree(spec);
    const DensityMatrix rho0 = initial_density_matrix(leaf_initial_state(spec, config.kind), sys.n_sites());
    DephasingSearchConfig search = config.search;
    if (search.scale <= 0.0) search.scale = spec.coupling_rate();
    OptimalDephasing opt = optimal_dephasing(sys, rho0, search);
    return Outcome{opt.efficiency_at_zero, opt};
  });

  DisorderEnsembleReport report;
  report.kind = config.kind;
  report.master_seed = config.master_seed;
  for (std::size_t di = 0; di < config.delta_over_v.size(); ++di) {
    std::vector<double> eq, eo, go;
    for (std::size_t s = 0; s < config.n_samples; ++s) {
      const auto& o = outcomes[di * config.n_samples + s];
      if (!o.ok()) continue;
      eq.push_back(o.value->eta_quantum);
      eo.push_back(o.value->optimum.efficiency);
      go.push_back(o.value->optimum.dephasing_rate);
      report.samples.push_back({di, s, o.value->eta_quantum, o.value->optimum});
    }
    const SampleStats q = sample_stats(eq), opt = sample_stats(eo), g = sample_stats(go);
    report.records.push_back({config.delta_over_v[di], config.n_samples, eq.size(), q.mean, q.stddev,
                              opt.mean, opt.stddev, g.mean, g.stddev});
  }
  return report;
}

std::string ensemble_csv_header() {
  return "delta_over_V,kind,n_ok,eta_quantum_mean,eta_quantum_std,eta_opt_mean,eta_opt_std,"
         "gamma_opt_mean_ps,gamma_opt_std_ps";
}

std::vector<std::string> ensemble_csv_rows(const DisorderEnsembleReport& report) {
  std::vector<std::string> rows;
  for (const auto& r : report.records) {
    rows.push_back(format_double(r.delta_over_v) + "," + to_string(report.kind) + "," +
                   std::to_string(r.n_ok) + "," + format_double(r.eta_quantum_mean) + "," +
                   format_double(r.eta_quantum_std) + "," + format_double(r.eta_opt_mean) + "," +
                   format_double(r.eta_opt_std) + "," + format_double(r.gamma_opt_mean) + "," +
                   format_double(r.gamma_opt_std));
  }
  return rows;
}

}  // namespace enaqt
