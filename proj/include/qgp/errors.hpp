#pragma once

#include <stdexcept>
#include <string>

namespace qgp {

/// Base for every failure that stems from the numerics rather than from
/// caller misuse. The CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidDensityMatrix : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two populations of a density matrix came closer than the degeneracy
/// tolerance, so the eigenvector labeling is ambiguous.
class DegeneratePopulations : public NumericalError {
 public:
  DegeneratePopulations(const std::string& msg, long step) : NumericalError(msg), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

/// The complex number whose argument defines a phase is too close to zero.
class IllConditionedPhase : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonUniqueSteadyState : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Trace drift during time stepping exceeded the abort threshold.
class StepInstability : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Eigenvector tracking lost continuity (best overlap below threshold).
class LabelingFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qgp
