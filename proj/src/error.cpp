#include "crep/error.hpp"

namespace crep {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BadWord: return "BadWord";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::EmptySampleSet: return "EmptySampleSet";
    case ErrorKind::EmptyGrid: return "EmptyGrid";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::UnknownPoint: return "UnknownPoint";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::DuplicateSubset: return "DuplicateSubset";
    case ErrorKind::UnknownScenario: return "UnknownScenario";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace crep
