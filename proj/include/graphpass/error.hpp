#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphpass {

enum class Errc {
  // input errors
  NonpositiveWeight,
  NonpositiveMeasure,
  UnknownVertex,
  DuplicateEdge,
  SelfLoop,
  InvalidFamilyParams,
  DimensionMismatch,
  NonpositivePotential,
  InvalidExponent,
  InvalidCoefficient,
  InvalidPerturbation,
  PerturbationRequired,
  MissingDistanceBase,
  GraphTooLarge,
  ZeroDirection,
  InvalidDirection,
  InvalidGrid,
  NonpositiveRadius,
  InvalidSampleCount,
  InvalidInput,
  IoError,
  // solver failures
  NoConvergence,
  SingularJacobian,
  NoDivergenceDirection,
  NonpositiveSolution,
  NonnegativeMinimum,
  BoundaryContact,
  NotDistinct,
};

std::string_view to_string(Errc code) noexcept;

// True for errors that signal a numerical outcome rather than bad input.
bool is_solver_failure(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace graphpass
