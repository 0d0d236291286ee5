#include "enaqt/observables.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "enaqt/csv.hpp"
#include "enaqt/errors.hpp"

namespace enaqt {
namespace {

double clamp_probability(double value, const char* what) {
  if (value >= 0.0 && value <= 1.0) return value;
  if (value >= -kObservableSlack && value <= 1.0 + kObservableSlack) {
    std::clog << "[enaqt warning] " << what << " = " << value << " clamped to [0, 1]\n";
    return value < 0.0 ? 0.0 : 1.0;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " = " << value << " lies outside [0, 1] beyond round-off";
  throw NumericalConsistencyError(msg.str());
}

}  // namespace

double efficiency(const TransportSystem& sys, const RealVector& populations) {
  if (populations.size() != sys.n_sites()) throw ConfigurationError("population vector size mismatch");
  return clamp_probability(2.0 * sys.trap_rates().dot(populations), "efficiency");
}

double efficiency(const TransportSystem& sys, const ComplexMatrix& s1) {
  return efficiency(sys, RealVector(s1.diagonal().real()));
}

double transfer_time(const TransportSystem& sys, const ComplexMatrix& s2, double eta) {
  if (!(eta > kMinEfficiencyForTime)) {
    throw UndefinedTransferTimeError("transfer time undefined: efficiency is zero");
  }
  return 2.0 * sys.trap_rates().dot(s2.diagonal().real()) / eta;
}

double loss_probability(const TransportSystem& sys, const ComplexMatrix& s1) {
  return 2.0 * sys.recomb_rate() * s1.diagonal().real().sum();
}

TransportResult transport_result(const TransportSystem& sys, const IntegratedState& integrals) {
  TransportResult r;
  r.efficiency = efficiency(sys, integrals.first);
  r.loss_probability = loss_probability(sys, integrals.first);
  r.transfer_time = r.efficiency > kMinEfficiencyForTime
                        ? transfer_time(sys, integrals.second, r.efficiency)
                        : std::numeric_limits<double>::quiet_NaN();
  r.site_integrals = integrals.first.diagonal().real();
  return r;
}

TransportResult evaluate_transport(const TransportSystem& sys, const DensityMatrix& rho0) {
  return transport_result(sys, integrated_state(sys, rho0));
}

std::string csv_header(const TransportResult& result) {
  std::string out = "eta,tau_ps,loss";
  for (Eigen::Index m = 1; m <= result.site_integrals.size(); ++m) out += ",s_" + std::to_string(m);
  return out;
}

std::string csv_row(const TransportResult& result) {
  std::string out = format_double(result.efficiency) + "," + format_double(result.transfer_time) +
                    "," + format_double(result.loss_probability);
  for (Eigen::Index m = 0; m < result.site_integrals.size(); ++m) {
    out += "," + format_double(result.site_integrals[m]);
  }
  return out;
}

}  // namespace enaqt
