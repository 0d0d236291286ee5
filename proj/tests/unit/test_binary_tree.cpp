#include <gtest/gtest.h>

#include "enaqt/binary_tree.hpp"
#include "enaqt/errors.hpp"
#include "enaqt/sweep.hpp"
#include "enaqt/two_level.hpp"

using namespace enaqt;

namespace {

DisorderEnsembleReport run_ensemble(InitialState::Kind kind, std::vector<double> deltas, std::size_t samples,
                                    unsigned width = 0, std::uint64_t seed = 7) {
  EnsembleConfig cfg;
  cfg.delta_over_v = std::move(deltas);
  cfg.n_samples = samples;
  cfg.kind = kind;
  cfg.master_seed = seed;
  cfg.width = width;
  return disorder_ensemble(TreeSpec::with_relative_rates(4, 100.0), cfg);
}

// 100-sample ensembles shared by the statistical tests below.
const DisorderEnsembleReport& mixture100() {
  static const auto r = run_ensemble(InitialState::Kind::Mixture, {0.0, 1.0, 4.0}, 100);
  return r;
}

const DisorderEnsembleReport& coherent100() {
  static const auto r = run_ensemble(InitialState::Kind::Superposition, {0.0, 2.0, 4.0}, 100);
  return r;
}

double standard_error(const EnsembleRecord& r, double std) { return std / std::sqrt(static_cast<double>(r.n_ok)); }

}  // namespace

TEST(GenerateTree, FourGenerations) {
  TreeSpec spec;
  spec.coupling_cm = 100.0;
  const TransportSystem sys = generate_tree(spec);
  ASSERT_EQ(sys.n_sites(), 15);
  int bonds = 0;
  for (int i = 0; i < 15; ++i) {
    for (int j = i + 1; j < 15; ++j) {
      if (sys.couplings()(i, j) != 0.0) {
        ++bonds;
        EXPECT_EQ(sys.couplings()(i, j), 100.0);
        EXPECT_TRUE(j + 1 == 2 * (i + 1) || j + 1 == 2 * (i + 1) + 1);
      }
    }
  }
  EXPECT_EQ(bonds, 14);
}

TEST(GenerateTree, NoDisorderGivesExactMeanEnergy) {
  TreeSpec spec;
  spec.mean_energy_cm = 12.5;
  spec.rng_seed = 99;
  const TransportSystem sys = generate_tree(spec);
  for (int m = 0; m < sys.n_sites(); ++m) EXPECT_EQ(sys.site_energies()[m], 12.5);
}

TEST(GenerateTree, SeedDeterminesEnergies) {
  TreeSpec spec;
  spec.disorder_cm = 100.0;
  spec.rng_seed = 5;
  const RealVector a = generate_tree(spec).site_energies();
  EXPECT_EQ(a, generate_tree(spec).site_energies());
  spec.rng_seed = 6;
  EXPECT_NE(a, generate_tree(spec).site_energies());
}

TEST(GenerateTree, SizeGuard) {
  TreeSpec spec;
  spec.generation = 8;
  EXPECT_THROW(generate_tree(spec), SizeGuardError);
  spec.allow_large = true;
  EXPECT_EQ(generate_tree(spec).n_sites(), 255);
  spec.generation = 1;
  EXPECT_THROW(generate_tree(spec), ConfigurationError);
}

TEST(GenerateTree, RelativeRates) {
  const TreeSpec spec = TreeSpec::with_relative_rates(4, 100.0);
  const double v = kDefaultUnits.to_angular(100.0);
  EXPECT_DOUBLE_EQ(spec.recomb_rate, 0.005 * v);
  EXPECT_DOUBLE_EQ(spec.trap_rate, 2.0 * v);
  const TransportSystem sys = generate_tree(spec);
  EXPECT_EQ(sys.trap_rates()[0], spec.trap_rate);
  EXPECT_EQ(sys.trap_rates().tail(14).cwiseAbs().sum(), 0.0);
}

TEST(LeafInitialState, Leaves) {
  TreeSpec spec;
  const InitialState mix = leaf_initial_state(spec, InitialState::Kind::Mixture);
  EXPECT_EQ(mix.sites, (std::vector<int>{8, 9, 10, 11, 12, 13, 14, 15}));
  const DensityMatrix rho = initial_density_matrix(mix, 15);
  for (int i = 0; i < 15; ++i) {
    for (int j = 0; j < 15; ++j) {
      EXPECT_EQ(rho.data(i, j).real(), (i == j && i >= 7) ? 0.125 : 0.0);
    }
  }
  const DensityMatrix pure =
      initial_density_matrix(leaf_initial_state(spec, InitialState::Kind::Superposition), 15);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(15);
  psi.tail(8).setConstant(1.0 / std::sqrt(8.0));
  EXPECT_LE((pure.data - psi * psi.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(leaf_initial_state(spec, InitialState::Kind::SingleSite), ConfigurationError);
}

TEST(OptimalDephasing, ResonantDimerNeverBelowZeroDephasing) {
  const TransportSystem sys = two_level_system({0.0, 50.0, 0.0}, 1.0, 0.0005);
  const DensityMatrix rho0 = initial_density_matrix(InitialState::single_site(1), 2);
  const OptimalDephasing opt = optimal_dephasing(sys, rho0);
  EXPECT_GE(opt.efficiency, opt.efficiency_at_zero);
  EXPECT_NEAR(opt.efficiency_at_zero, evaluate_transport(sys, rho0).efficiency, 1e-10);
}

TEST(OptimalDephasing, BiasedDimerMatchesDenseScan) {
  const TransportSystem sys = two_level_system({100.0, 10.0, 0.0}, 1.0, 0.0005);
  const DensityMatrix rho0 = initial_density_matrix(InitialState::single_site(1), 2);
  const OptimalDephasing opt = optimal_dephasing(sys, rho0);
  double scan = 0.0;
  for (double g : log_space(1e-3, 1e5, 4001)) scan = std::max(scan, evaluate_transport(sys.with_dephasing(g), rho0).efficiency);
  const double eta_large = evaluate_transport(sys.with_dephasing(1e4), rho0).efficiency;
  EXPECT_GT(opt.dephasing_rate, 0.0);
  EXPECT_GT(opt.efficiency, std::max(opt.efficiency_at_zero, eta_large));
  EXPECT_NEAR(opt.efficiency, scan, 1e-5);
  EXPECT_NEAR(evaluate_transport(sys.with_dephasing(opt.dephasing_rate), rho0).efficiency, opt.efficiency, 1e-9);
}

TEST(OptimalDephasing, RejectsUncoupledSystem) {
  const TransportSystem sys(RealVector::Zero(2), RealMatrix::Zero(2, 2), RealVector{{1.0, 0.0}}, 0.1, 0.0);
  EXPECT_THROW(optimal_dephasing(sys, initial_density_matrix(InitialState::single_site(1), 2)), ConfigurationError);
}

TEST(DisorderEnsemble, OptimumNeverBelowQuantumPerSample) {
  for (const auto* r : {&mixture100(), &coherent100()}) {
    for (const auto& s : r->samples) EXPECT_GE(s.optimum.efficiency, s.eta_quantum - 1e-10);
  }
}

TEST(DisorderEnsemble, CoherentDisorderSuppressesQuantumTransport) {
  const auto& recs = coherent100().records;
  const double se = std::hypot(standard_error(recs.front(), recs.front().eta_quantum_std),
                               standard_error(recs.back(), recs.back().eta_quantum_std));
  EXPECT_GE(recs.front().eta_quantum_mean - recs.back().eta_quantum_mean, 3.0 * se);
}

TEST(DisorderEnsemble, CoherentDephasingHelpsAtModerateDisorder) {
  const EnsembleRecord& r = coherent100().records[1];
  ASSERT_EQ(r.delta_over_v, 2.0);
  EXPECT_GT(r.eta_opt_mean, r.eta_quantum_mean);
}

TEST(DisorderEnsemble, MixtureImprovementMagnitudes) {
  const auto& recs = mixture100().records;
  const double targets[] = {0.60, 0.20, 0.40};
  for (std::size_t i = 0; i < 3; ++i) {
    const double gain = recs[i].eta_opt_mean - recs[i].eta_quantum_mean;
    EXPECT_GT(gain, 0.0) << "delta/V=" << recs[i].delta_over_v;
    EXPECT_NEAR(gain, targets[i], 0.15) << "delta/V=" << recs[i].delta_over_v;
  }
}

TEST(DisorderEnsemble, ReportIndependentOfWidth) {
  const auto a = run_ensemble(InitialState::Kind::Mixture, {0.5, 3.0}, 4, 1, 42);
  const auto b = run_ensemble(InitialState::Kind::Mixture, {0.5, 3.0}, 4, 3, 42);
  EXPECT_EQ(ensemble_csv_rows(a), ensemble_csv_rows(b));
  const auto c = run_ensemble(InitialState::Kind::Mixture, {0.5, 3.0}, 4, 1, 43);
  EXPECT_NE(ensemble_csv_rows(a), ensemble_csv_rows(c));
}

TEST(DisorderEnsemble, CsvLayout) {
  const auto r = run_ensemble(InitialState::Kind::Superposition, default_delta_grid(), 1, 0, 1);
  EXPECT_EQ(r.records.size(), 20u);
  EXPECT_EQ(ensemble_csv_rows(r).size(), 20u);
  EXPECT_EQ(ensemble_csv_header().substr(0, 18), "delta_over_V,kind,");
  EXPECT_EQ(ensemble_csv_rows(r).front().substr(0, 11), "0,coherent,");
}

TEST(DisorderEnsemble, SeedsAreStable) {
  EXPECT_EQ(ensemble_sample_seed(1, 2, 3), ensemble_sample_seed(1, 2, 3));
  EXPECT_NE(ensemble_sample_seed(1, 2, 3), ensemble_sample_seed(1, 3, 2));
}
