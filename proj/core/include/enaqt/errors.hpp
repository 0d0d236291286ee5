#pragma once

#include <stdexcept>
#include <string>

namespace enaqt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent model input (dimension mismatch, asymmetric couplings, bad site index).
class ConfigurationError : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (negative frequency, T <= 0, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Step-size underflow in the time-domain integrator.
class StiffnessError : public Error {
public:
  StiffnessError(const std::string& what, double failing_time_ps)
      : Error(what), failing_time_ps_(failing_time_ps) {}
  double failing_time_ps() const noexcept { return failing_time_ps_; }

private:
  double failing_time_ps_;
};

/// The infinite-horizon integrals do not exist (singular Liouvillian).
class NonConvergentIntegralError : public Error {
public:
  using Error::Error;
};

/// A computed observable violates its physical bounds beyond round-off.
class NumericalConsistencyError : public Error {
public:
  using Error::Error;
};

class UndefinedTransferTimeError : public Error {
public:
  using Error::Error;
};

/// Bundled data file missing or failing its checksum.
class DataIntegrityError : public Error {
public:
  using Error::Error;
};

/// Request would exceed the dense-matrix size budget.
class SizeGuardError : public Error {
public:
  using Error::Error;
};

class OptimizationError : public Error {
public:
  using Error::Error;
};

/// Too many failed tasks in a sweep or ensemble.
class AggregateError : public Error {
public:
  using Error::Error;
};

}  // namespace enaqt
