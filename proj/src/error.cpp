#include "graphpass/error.hpp"

namespace graphpass {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonpositiveWeight: return "NonpositiveWeight";
    case Errc::NonpositiveMeasure: return "NonpositiveMeasure";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::InvalidFamilyParams: return "InvalidFamilyParams";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonpositivePotential: return "NonpositivePotential";
    case Errc::InvalidExponent: return "InvalidExponent";
    case Errc::InvalidCoefficient: return "InvalidCoefficient";
    case Errc::InvalidPerturbation: return "InvalidPerturbation";
    case Errc::PerturbationRequired: return "PerturbationRequired";
    case Errc::MissingDistanceBase: return "MissingDistanceBase";
    case Errc::GraphTooLarge: return "GraphTooLarge";
    case Errc::ZeroDirection: return "ZeroDirection";
    case Errc::InvalidDirection: return "InvalidDirection";
    case Errc::InvalidGrid: return "InvalidGrid";
    case Errc::NonpositiveRadius: return "NonpositiveRadius";
    case Errc::InvalidSampleCount: return "InvalidSampleCount";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::IoError: return "IoError";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::SingularJacobian: return "SingularJacobian";
    case Errc::NoDivergenceDirection: return "NoDivergenceDirection";
    case Errc::NonpositiveSolution: return "NonpositiveSolution";
    case Errc::NonnegativeMinimum: return "NonnegativeMinimum";
    case Errc::BoundaryContact: return "BoundaryContact";
    case Errc::NotDistinct: return "NotDistinct";
  }
  return "Unknown";
}

bool is_solver_failure(Errc code) noexcept {
  switch (code) {
    case Errc::NoConvergence:
    case Errc::SingularJacobian:
    case Errc::NoDivergenceDirection:
    case Errc::NonpositiveSolution:
    case Errc::NonnegativeMinimum:
    case Errc::BoundaryContact:
    case Errc::NotDistinct:
      return true;
    default:
      return false;
  }
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace graphpass
