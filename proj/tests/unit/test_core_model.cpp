#include <gtest/gtest.h>

#include <numbers>

#include "enaqt/errors.hpp"
#include "enaqt/transport_system.hpp"
#include "support.hpp"

using namespace enaqt;
using enaqt::test_support::max_abs;

namespace {

TransportSystem diagonal_system(RealVector energies, RealVector traps, double recomb, double dephasing = 0.0) {
  const auto n = energies.size();
  return TransportSystem(std::move(energies), RealMatrix::Zero(n, n), std::move(traps), recomb, dephasing);
}

}  // namespace

TEST(Units, CmToAngularConstant) {
  EXPECT_NEAR(kDefaultUnits.cm_to_angular(), 0.188365, 1e-6);
  EXPECT_DOUBLE_EQ(kDefaultUnits.cm_to_angular(), 2.0 * std::numbers::pi * 0.0299792458);
}

TEST(Units, RoundTripIsIdentity) {
  for (double e : {-450.0, -1e-3, 0.0, 1.0, 104.1, 3e4}) {
    const double back = kDefaultUnits.to_wavenumber(kDefaultUnits.to_angular(e));
    EXPECT_NEAR(back, e, 1e-12 * std::max(1.0, std::abs(e)));
  }
  EXPECT_DOUBLE_EQ(kDefaultUnits.thermal_energy_cm(300.0), 0.695035 * 300.0);
}

TEST(EffectiveHamiltonian, SingleSiteWithoutRatesIsZero) {
  const TransportSystem sys = diagonal_system(RealVector::Zero(1), RealVector::Zero(1), 0.0);
  const ComplexMatrix h = effective_hamiltonian(sys);
  ASSERT_EQ(h.rows(), 1);
  EXPECT_EQ(h(0, 0), std::complex<double>(0.0, 0.0));
}

TEST(EffectiveHamiltonian, TwoSiteHermitianPart) {
  const double eps = 100.0, v = 10.0;
  RealMatrix c(2, 2);
  c << 0.0, v / 2, v / 2, 0.0;
  const TransportSystem sys(RealVector{{eps / 2, -eps / 2}}, c, RealVector::Zero(2), 0.0, 0.0);
  const ComplexMatrix h = effective_hamiltonian(sys);
  const double k = kDefaultUnits.cm_to_angular();
  EXPECT_NEAR(h(0, 0).real(), eps / 2 * k, 1e-12);
  EXPECT_NEAR(h(1, 1).real(), -eps / 2 * k, 1e-12);
  EXPECT_NEAR(h(0, 1).real(), v / 2 * k, 1e-12);
  EXPECT_NEAR(h(1, 0).real(), v / 2 * k, 1e-12);
  EXPECT_EQ(h, h.adjoint());
}

TEST(EffectiveHamiltonian, AntiHermitianDiagonalIsSumOfRates) {
  const TransportSystem sys = diagonal_system(RealVector::Zero(2), RealVector{{0.0, 1.0}}, 0.5);
  const ComplexMatrix h = effective_hamiltonian(sys);
  EXPECT_DOUBLE_EQ(h(0, 0).imag(), -0.5);
  EXPECT_DOUBLE_EQ(h(1, 1).imag(), -1.5);
}

TEST(EffectiveHamiltonian, AntiHermitianPartProperty) {
  CounterRng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 10);
    const TransportSystem sys = test_support::random_system(rng, n);
    const ComplexMatrix h = effective_hamiltonian(sys);
    ComplexMatrix expected = ComplexMatrix::Zero(n, n);
    for (int m = 0; m < n; ++m) {
      expected(m, m) = std::complex<double>(0.0, -2.0 * (sys.recomb_rate() + sys.trap_rates()[m]));
    }
    EXPECT_LE(max_abs(h - h.adjoint() - expected), 1e-12);

    const TransportSystem closed(sys.site_energies(), sys.couplings(), RealVector::Zero(n), 0.0, 3.0);
    const ComplexMatrix hc = effective_hamiltonian(closed);
    EXPECT_EQ(hc, hc.adjoint());
  }
}

TEST(TransportSystem, RejectsInvalidInput) {
  RealMatrix asym(2, 2);
  asym << 0.0, 1.0, 2.0, 0.0;
  EXPECT_THROW(TransportSystem(RealVector::Zero(2), asym, RealVector::Zero(2), 0.0, 0.0), ConfigurationError);
  RealMatrix diag = RealMatrix::Identity(2, 2);
  EXPECT_THROW(TransportSystem(RealVector::Zero(2), diag, RealVector::Zero(2), 0.0, 0.0), ConfigurationError);
  EXPECT_THROW(TransportSystem(RealVector::Zero(2), RealMatrix::Zero(3, 3), RealVector::Zero(2), 0.0, 0.0),
               ConfigurationError);
  EXPECT_THROW(diagonal_system(RealVector::Zero(2), RealVector{{-1.0, 0.0}}, 0.0), ConfigurationError);
  EXPECT_THROW(diagonal_system(RealVector::Zero(2), RealVector::Zero(2), -0.1), ConfigurationError);
  EXPECT_THROW(diagonal_system(RealVector::Zero(2), RealVector::Zero(2), 0.0, -1.0), ConfigurationError);
  EXPECT_THROW(diagonal_system(RealVector{{0.0, NAN}}, RealVector::Zero(2), 0.0), ConfigurationError);
  EXPECT_THROW(diagonal_system(RealVector(0), RealVector(0), 0.0), ConfigurationError);
}

TEST(TransportSystem, TextRoundTripProperty) {
  CounterRng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const TransportSystem sys = test_support::random_system(rng, 1 + static_cast<int>(rng.next_u64() % 8));
    EXPECT_EQ(TransportSystem::from_text(sys.to_text()), sys);
  }
}

TEST(TransportSystem, TextRejectsUnknownKeysAndWrongUnits) {
  const TransportSystem sys = diagonal_system(RealVector::Zero(1), RealVector::Zero(1), 0.5);
  std::string text = sys.to_text();
  std::string extra = text;
  extra.insert(1, "\"colour\": 1,");
  EXPECT_THROW(TransportSystem::from_text(extra), ConfigurationError);
  std::string wrong = text;
  wrong.replace(wrong.find("\"ps-1\""), 6, "\"cm-1\"");
  EXPECT_THROW(TransportSystem::from_text(wrong), ConfigurationError);
  EXPECT_THROW(TransportSystem::from_text("{ \"n_sites\": 1, "), ConfigurationError);
}

TEST(InitialState, SingleSite) {
  const DensityMatrix rho = initial_density_matrix(InitialState::single_site(1), 2);
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  expected(0, 0) = 1.0;
  EXPECT_EQ(rho.data, expected);
}

TEST(InitialState, MixtureOfSitesOneAndSix) {
  const DensityMatrix rho = initial_density_matrix(InitialState::mixture({1, 6}), 7);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      const double want = (i == j && (i == 0 || i == 5)) ? 0.5 : 0.0;
      EXPECT_EQ(rho.data(i, j), std::complex<double>(want, 0.0));
    }
  }
}

TEST(InitialState, SuperpositionIsProjector) {
  const DensityMatrix rho = initial_density_matrix(InitialState::superposition({1, 2}), 2);
  EXPECT_EQ(rho.data, ComplexMatrix::Constant(2, 2, 0.5));
  EXPECT_NEAR(max_abs(rho.data * rho.data - rho.data), 0.0, 1e-15);
}

TEST(InitialState, TraceOneForEverySetSize) {
  for (int n = 1; n <= 64; ++n) {
    std::vector<int> sites;
    for (int s = 1; s <= n; ++s) sites.push_back(s);
    for (auto kind : {InitialState::Kind::Mixture, InitialState::Kind::Superposition}) {
      const DensityMatrix rho = initial_density_matrix({kind, sites}, n);
      EXPECT_NEAR(rho.trace(), 1.0, 1e-14) << "n=" << n;
      EXPECT_EQ(rho.hermiticity_error(), 0.0);
      EXPECT_GE(rho.min_eigenvalue(), -1e-12);
    }
  }
}

TEST(InitialState, Validation) {
  EXPECT_THROW(initial_density_matrix(InitialState::mixture({}), 3), ConfigurationError);
  EXPECT_THROW(initial_density_matrix(InitialState::mixture({1, 1}), 3), ConfigurationError);
  EXPECT_THROW(initial_density_matrix(InitialState::mixture({0}), 3), ConfigurationError);
  EXPECT_THROW(initial_density_matrix(InitialState::single_site(4), 3), ConfigurationError);
  EXPECT_THROW(initial_density_matrix({InitialState::Kind::SingleSite, {1, 2}}, 3), ConfigurationError);
  EXPECT_THROW(parse_initial_kind("entangled"), ConfigurationError);
  EXPECT_EQ(parse_initial_kind("coherent"), InitialState::Kind::Superposition);
}
