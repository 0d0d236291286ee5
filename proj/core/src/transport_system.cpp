#include "enaqt/transport_system.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "enaqt/errors.hpp"

namespace enaqt {
namespace {

using nlohmann::json;

void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigurationError(message);
}

json tagged(const char* unit, json values) { return json{{"unit", unit}, {"values", std::move(values)}}; }

json vector_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  require(it != doc.end(), std::string("missing field '") + name + "'");
  return *it;
}

const json& unit_values(const json& doc, const char* name, const char* unit) {
  const json& f = field(doc, name);
  require(f.is_object(), std::string("field '") + name + "' must be an object with unit and values");
  for (const auto& [key, _] : f.items()) {
    require(key == "unit" || key == "values",
            std::string("unknown key '") + key + "' in field '" + name + "'");
  }
  require(f.value("unit", "") == unit,
          std::string("field '") + name + "' must be tagged with unit \"" + unit + "\"");
  return field(f, "values");
}

RealVector parse_vector(const json& values, const char* name) {
  require(values.is_array(), std::string("'") + name + "' values must be an array");
  RealVector out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    require(values[i].is_number(), std::string("'") + name + "' entries must be numbers");
    out[static_cast<Eigen::Index>(i)] = values[i].get<double>();
  }
  return out;
}

}  // namespace

TransportSystem::TransportSystem(RealVector site_energies_cm, RealMatrix couplings_cm,
                                 RealVector trap_rates, double recomb_rate, double dephasing_rate)
    : site_energies_(std::move(site_energies_cm)),
      couplings_(std::move(couplings_cm)),
      trap_rates_(std::move(trap_rates)),
      recomb_rate_(recomb_rate),
      dephasing_rate_(dephasing_rate) {
  const Eigen::Index n = site_energies_.size();
  require(n >= 1, "transport system needs at least one site");
  require(couplings_.rows() == n && couplings_.cols() == n,
          "couplings must be an N x N matrix matching the number of site energies");
  require(trap_rates_.size() == n, "trap_rates length must equal the number of sites");
  require(site_energies_.allFinite() && couplings_.allFinite() && trap_rates_.allFinite(),
          "energies, couplings and trap rates must be finite");
  for (Eigen::Index m = 0; m < n; ++m) {
    require(couplings_(m, m) == 0.0, "couplings must have a zero diagonal");
    for (Eigen::Index k = m + 1; k < n; ++k) {
      require(couplings_(m, k) == couplings_(k, m), "couplings must be symmetric");
    }
    require(trap_rates_[m] >= 0.0, "trap rates must be non-negative");
  }
  require(std::isfinite(recomb_rate_) && recomb_rate_ >= 0.0,
          "recombination rate must be non-negative");
  require(std::isfinite(dephasing_rate_) && dephasing_rate_ >= 0.0,
          "dephasing rate must be non-negative");
}

bool TransportSystem::has_decay_channel() const noexcept {
  return recomb_rate_ > 0.0 || (trap_rates_.array() > 0.0).any();
}

TransportSystem TransportSystem::with_dephasing(double rate) const {
  return TransportSystem(site_energies_, couplings_, trap_rates_, recomb_rate_, rate);
}

TransportSystem TransportSystem::with_trap_rates(RealVector rates) const {
  return TransportSystem(site_energies_, couplings_, std::move(rates), recomb_rate_, dephasing_rate_);
}

TransportSystem TransportSystem::with_recomb_rate(double rate) const {
  return TransportSystem(site_energies_, couplings_, trap_rates_, rate, dephasing_rate_);
}

RealMatrix TransportSystem::hamiltonian(const UnitConvention& units) const {
  RealMatrix h = couplings_;
  h.diagonal() = site_energies_;
  return h * units.cm_to_angular();
}

std::string TransportSystem::to_text() const {
  json couplings = json::array();
  for (Eigen::Index m = 0; m < couplings_.rows(); ++m) {
    couplings.push_back(vector_json(couplings_.row(m).transpose()));
  }
  json doc = {
      {"n_sites", n_sites()},
      {"site_energies", tagged("cm-1", vector_json(site_energies_))},
      {"couplings", tagged("cm-1", std::move(couplings))},
      {"trap_rates", tagged("ps-1", vector_json(trap_rates_))},
      {"recomb_rate", tagged("ps-1", recomb_rate_)},
      {"dephasing_rate", tagged("ps-1", dephasing_rate_)},
  };
  return doc.dump(2) + "\n";
}

TransportSystem TransportSystem::from_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(std::string("transport system parse error: ") + e.what());
  }
  require(doc.is_object(), "transport system document must be an object");
  static const std::set<std::string> known = {"n_sites",    "site_energies", "couplings",
                                              "trap_rates", "recomb_rate",   "dephasing_rate"};
  for (const auto& [key, _] : doc.items()) {
    require(known.count(key) != 0, "unknown key '" + key + "' in transport system document");
  }
  const json& n_json = field(doc, "n_sites");
  require(n_json.is_number_integer() && n_json.get<long>() >= 1, "'n_sites' must be a positive integer");
  const auto n = static_cast<Eigen::Index>(n_json.get<long>());

  RealVector energies = parse_vector(unit_values(doc, "site_energies", "cm-1"), "site_energies");
  RealVector traps = parse_vector(unit_values(doc, "trap_rates", "ps-1"), "trap_rates");
  require(energies.size() == n, "'site_energies' length does not match n_sites");
  require(traps.size() == n, "'trap_rates' length does not match n_sites");

  const json& rows = unit_values(doc, "couplings", "cm-1");
  require(rows.is_array() && static_cast<Eigen::Index>(rows.size()) == n,
          "'couplings' must have n_sites rows");
  RealMatrix couplings(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    RealVector row = parse_vector(rows[static_cast<std::size_t>(m)], "couplings");
    require(row.size() == n, "'couplings' rows must have n_sites entries");
    couplings.row(m) = row.transpose();
  }

  auto scalar = [&](const char* name) {
    const json& v = unit_values(doc, name, "ps-1");
    require(v.is_number(), std::string("'") + name + "' value must be a number");
    return v.get<double>();
  };
  return TransportSystem(std::move(energies), std::move(couplings), std::move(traps),
                         scalar("recomb_rate"), scalar("dephasing_rate"));
}

ComplexMatrix effective_hamiltonian(const TransportSystem& sys, const UnitConvention& units) {
  ComplexMatrix h = sys.hamiltonian(units).cast<std::complex<double>>();
  for (int m = 0; m < sys.n_sites(); ++m) {
    h(m, m) -= std::complex<double>(0.0, sys.recomb_rate() + sys.trap_rates()[m]);
  }
  return h;
}

double DensityMatrix::hermiticity_error() const { return (data - data.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
  const ComplexMatrix hermitian = 0.5 * (data + data.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityMatrix::coherence_l1() const {
  return data.cwiseAbs().sum() - data.diagonal().cwiseAbs().sum();
}

std::string to_string(InitialState::Kind kind) {
  switch (kind) {
    case InitialState::Kind::SingleSite: return "single";
    case InitialState::Kind::Mixture: return "mixture";
    case InitialState::Kind::Superposition: return "coherent";
  }
  return "unknown";
}

InitialState::Kind parse_initial_kind(const std::string& name) {
  if (name == "single") return InitialState::Kind::SingleSite;
  if (name == "mixture") return InitialState::Kind::Mixture;
  if (name == "coherent" || name == "superposition") return InitialState::Kind::Superposition;
  throw ConfigurationError("unknown initial-state kind '" + name +
                           "' (expected single, mixture or coherent)");
}

DensityMatrix initial_density_matrix(const InitialState& state, int n_sites) {
  require(n_sites >= 1, "initial state needs at least one site");
  require(!state.sites.empty(), "initial state site set is empty");
  require(state.kind != InitialState::Kind::SingleSite || state.sites.size() == 1,
          "single-site initial state takes exactly one site");
  std::set<int> unique(state.sites.begin(), state.sites.end());
  require(unique.size() == state.sites.size(), "initial state sites must be distinct");
  for (int s : state.sites) {
    require(s >= 1 && s <= n_sites, "initial state site " + std::to_string(s) + " outside [1, " +
                                        std::to_string(n_sites) + "]");
  }

  DensityMatrix rho{ComplexMatrix::Zero(n_sites, n_sites)};
  const double count = static_cast<double>(state.sites.size());
  if (state.kind == InitialState::Kind::Superposition) {
    // |psi> = |S|^-1/2 sum |m>, so every entry of the projector restricted to S is 1/|S|.
    for (int a : state.sites) {
      for (int b : state.sites) rho.data(a - 1, b - 1) = 1.0 / count;
    }
  } else {
    for (int a : state.sites) rho.data(a - 1, a - 1) = 1.0 / count;
  }
  return rho;
}

}  // namespace enaqt
