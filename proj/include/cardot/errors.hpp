#pragma once

#include <stdexcept>
#include <string>

namespace cardot {

/// Base class for all cardot domain errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// All weights of a measure are zero.
struct EmptyMeasure : Error {
  explicit EmptyMeasure(const std::string& what) : Error(what) {}
};

/// Total mass deviates from 1 beyond the mass tolerance.
struct UnbalancedMass : Error {
  explicit UnbalancedMass(const std::string& what) : Error(what) {}
};

/// Parallel input arrays have different lengths.
struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& what) : Error(what) {}
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// The two cardinal flows disagree on their shared marginal.
struct GlueMismatch : Error {
  explicit GlueMismatch(const std::string& what) : Error(what) {}
};

/// Candidate measure is not an intermedium measure (marginals off).
struct NotIntermedium : Error {
  explicit NotIntermedium(const std::string& what) : Error(what) {}
};

/// Measure atoms do not lie on the required line.
struct NotOnLine : Error {
  explicit NotOnLine(const std::string& what) : Error(what) {}
};

/// Instance exceeds the brute-force size guard.
struct TooLarge : Error {
  explicit TooLarge(const std::string& what) : Error(what) {}
};

/// Flow network has no feasible flow (cannot occur for balanced inputs).
struct Infeasible : Error {
  explicit Infeasible(const std::string& what) : Error(what) {}
};

/// Floating-point trouble inside a solver invalidated an invariant.
struct NumericalBreakdown : Error {
  explicit NumericalBreakdown(const std::string& what) : Error(what) {}
};

}  // namespace cardot
