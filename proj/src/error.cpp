#include "toricgk/error.hpp"

namespace toricgk {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSimpleVertex: return "NonSimpleVertex";
    case ErrorCode::NotDelzant: return "NotDelzant";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::BoundaryPoint: return "BoundaryPoint";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::DegenerateDifference: return "DegenerateDifference";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::EmptyLevelSet: return "EmptyLevelSet";
    case ErrorCode::LiftMismatch: return "LiftMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Config: return "Config";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace toricgk
