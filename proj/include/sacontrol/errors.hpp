#pragma once

#include <stdexcept>
#include <string>

namespace sacontrol {

// Invalid argument to a numeric primitive (bad control index, malformed
// probability vector, non-PSD covariance, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bayes update whose normaliser vanished: the observation has zero
// likelihood under every state in the predicted support.
class DegenerateMeasurementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two quantities that must agree (marginals, lengths, headers) do not.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A grid or enumeration would exceed its configured size guard.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed scenario / artifact / command-line configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ill-conditioned linear algebra (e.g. singular innovation covariance).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sacontrol
